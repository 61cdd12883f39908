#include "nwfs_cli/app.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "nwfs/catalog.hpp"
#include "nwfs/error.hpp"
#include "nwfs_cli/certificate.hpp"

namespace nwfs::io {

namespace {

struct RunFlags {
  std::string category;
  std::string gens;
  std::string map;
  std::size_t successors = 32;
  std::size_t omega_blocks = 1;
};

struct OutputFlags {
  std::string format = "text";
  std::string out;
  bool timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--category", f.category, "base category: catalog key or JSON file (default: that of --gens)");
  cmd->add_option("--gens", f.gens, "generating set: catalog key or JSON file")->required();
  cmd->add_option("--map", f.map, "arrow to factor: catalog key or JSON file")->required();
  cmd->add_option("--budget-successors", f.successors, "successor steps per block")->capture_default_str();
  cmd->add_option("--budget-omega-blocks", f.omega_blocks, "omega steps joining blocks")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, OutputFlags& o, bool timing) {
  cmd->add_option("--format", o.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  if (timing) cmd->add_flag("--timing", o.timing, "record wall-clock time (breaks byte-identical reruns)");
}

RunInputs load_inputs(const RunFlags& f) {
  RunInputs in;
  const json gens_doc = load_ref_or_file(f.gens, "--gens");
  if (!f.category.empty()) {
    in.base = parse_category(load_ref_or_file(f.category, "--category"), "--category");
  } else if (gens_doc.is_string()) {
    try {
      const CatalogEntry e = catalog_get(gens_doc.get<std::string>());
      if (auto* g = std::get_if<GeneratingSet>(&e.payload)) in.base = g->base;
    } catch (const NotFound& e) {
      throw InputError("--gens", e.what());
    }
  } else if (gens_doc.is_object() && gens_doc.contains("category")) {
    in.base = parse_category(gens_doc["category"], "--gens/category");
  }
  in.gens = parse_gens(gens_doc, in.base, "--gens");
  const ValidationReport gr = validate(in.gens);
  if (!gr.ok()) throw InputError("--gens", gr.violations.front());
  in.map = parse_arrow(load_ref_or_file(f.map, "--map"), in.base, "--map");
  in.budget = {f.successors, f.omega_blocks};
  if (in.budget.successors_per_block == 0) throw InputError("--budget-successors", "must be at least 1");
  return in;
}

void emit(const std::string& body, const OutputFlags& o, std::ostream& out) {
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("--out", "cannot write " + o.out);
  file << body;
}

void emit_certificate(json cert, const OutputFlags& o, std::ostream& out, double millis) {
  if (o.timing) cert["timing"] = {{"milliseconds", millis}};
  emit(o.format == "json" ? cert.dump(2) + "\n" : text_report(cert), o, out);
}

template <class F>
int timed_certificate(F make, const OutputFlags& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  json cert = make();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const int code = cert["exit_code"].get<int>();
  emit_certificate(std::move(cert), o, out, ms);
  return code;
}

struct FillFlags {
  std::string structure;
  std::string problem;
};

/// Target arrow, algebra and (optionally) table read from a structure file:
/// a factorize certificate, or {target: map, p: components}.
struct StoredStructure {
  GeneratingSet gens;
  AlgebraStructure algebra;
  std::optional<LiftingTable> table;
};

StoredStructure load_structure(const json& doc, const FinCategory* base_hint) {
  StoredStructure s;
  if (doc.contains("schema")) {
    const ValidationReport r = validate_certificate(doc);
    if (!r.ok()) throw InputError("--structure", "certificate fails validation: " + r.violations.front());
    if (!doc.contains("algebra")) throw InputError("--structure/algebra", "certificate carries no algebra");
    const RunInputs in = parse_run_inputs(doc);
    ValidationReport ignored;
    const SequenceState st = parse_run(doc["run"], in, ignored, "--structure/run");
    s.gens = in.gens;
    s.algebra = extract_algebra(st);
    s.table = fillers_from_algebra(s.algebra, in.gens);
    return s;
  }
  FinCategory base = base_hint ? *base_hint : FinCategory::terminal();
  if (doc.contains("category")) base = parse_category(doc["category"], "--structure/category");
  if (!doc.contains("gens")) throw InputError("--structure/gens", "missing field");
  s.gens = parse_gens(doc["gens"], base, "--structure/gens");
  if (!doc.contains("target")) throw InputError("--structure/target", "missing field");
  const ArrowObj target = parse_arrow(doc["target"], base, "--structure/target");
  auto step = std::make_shared<const OneStepFactorization>(build_onestep(s.gens, target));
  if (!doc.contains("p")) throw InputError("--structure/p", "missing field");
  const PresheafMap p = parse_components(doc["p"], {step->K, dense_labels(step->K)},
                                         {target.dom(), dense_labels(target.dom())}, "--structure/p");
  s.algebra = AlgebraStructure{target, step, p};
  const ValidationReport r = verify_algebra(s.algebra);
  if (!r.ok()) throw InputError("--structure/p", "not an algebra: " + r.violations.front());
  return s;
}

int run_fill(const FillFlags& f, const OutputFlags& o, std::ostream& out) {
  const StoredStructure s = load_structure(load_json_file(f.structure), nullptr);
  const json problem = load_json_file(f.problem);
  if (!problem.is_object() || !problem.contains("generator")) {
    throw InputError("--problem/generator", "missing field");
  }
  if (!problem["generator"].is_number_unsigned() || problem["generator"].get<std::size_t>() >= s.gens.members.size()) {
    throw InputError("--problem/generator", "no such generator");
  }
  const std::size_t gi = problem["generator"].get<std::size_t>();
  const ArrowObj& j = s.gens.members[gi];
  const ArrowObj& g = s.algebra.target;
  if (!problem.contains("top")) throw InputError("--problem/top", "missing field");
  if (!problem.contains("bottom")) throw InputError("--problem/bottom", "missing field");
  const PresheafMap top = parse_components(problem["top"], {j.dom(), dense_labels(j.dom())},
                                           {g.dom(), dense_labels(g.dom())}, "--problem/top");
  const PresheafMap bottom = parse_components(problem["bottom"], {j.cod(), dense_labels(j.cod())},
                                              {g.cod(), dense_labels(g.cod())}, "--problem/bottom");
  const Square sq{j, g, top, bottom};
  if (!commutes(sq)) throw InputError("--problem", "the square does not commute");

  const OneStepFactorization& step = *s.algebra.onestep;
  const auto cell = step.find_cell(gi, top, bottom);
  if (!cell) throw InputError("--problem", "square missing from the one-step factorisation");
  const PresheafMap filler =
      compose_maps(s.algebra.p, compose_maps(step.xi, step.codomain_sum.legs[*cell]));
  int code = kOk;
  if (s.table) {
    const PresheafMap* stored = s.table->find(gi, top, bottom);
    if (!stored || !(*stored == filler)) code = kRefuted;
  }
  json result{{"generator", gi}, {"filler", components_json(filler)}, {"exit_code", code}};
  if (o.format == "json") {
    emit(result.dump(2) + "\n", o, out);
  } else {
    std::ostringstream text;
    for (ObjectIndex a = 0; a < filler.base().object_count(); ++a) {
      text << "filler " << filler.base().object_id(a) << ": " << json(filler.component(a)).dump() << "\n";
    }
    if (code != kOk) text << "stored lifting table disagrees with the algebra\n";
    emit(text.str(), o, out);
  }
  return code;
}

int run_validate(const std::vector<std::string>& paths, const OutputFlags& o, std::ostream& out) {
  int code = kOk;
  std::ostringstream text;
  json results = json::array();
  for (const auto& path : paths) {
    const ValidationReport r = validate_certificate(load_json_file(path));
    if (!r.ok()) code = kRefuted;
    text << path << ": " << (r.ok() ? "valid" : "INVALID") << "\n";
    for (const auto& v : r.violations) text << "  " << v << "\n";
    results.push_back({{"path", path}, {"valid", r.ok()}, {"violations", r.violations}});
  }
  emit(o.format == "json" ? json{{"results", results}, {"exit_code", code}}.dump(2) + "\n" : text.str(), o, out);
  return code;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic small object argument on finite presheaf categories", "nwfs"};
  app.require_subcommand(1);

  RunFlags run_flags;
  OutputFlags output;
  auto* factorize = app.add_subcommand("factorize", "Garner run; certificate with algebra and lifting table");
  auto* quillen = app.add_subcommand("quillen", "classical small object argument run");
  auto* compare = app.add_subcommand("compare", "both runs, comparison maps and surjectivity");
  auto* enumerate = app.add_subcommand("enumerate", "algebras and lifting tables on --map, bijection verdict");
  for (auto* cmd : {factorize, quillen, compare, enumerate}) {
    add_run_flags(cmd, run_flags);
    add_output_flags(cmd, output, true);
  }

  LawInputs laws_in;
  std::string rules = "graph,cograph";
  std::string mutation;
  auto* laws = app.add_subcommand("laws", "law checks for named factorisation rules");
  laws->add_option("--rules", rules, "comma-separated rule names")->capture_default_str();
  laws->add_option("--seed", laws_in.seed, "seed for the extra sampled arrows")->capture_default_str();
  laws->add_option("--max-size", laws_in.max_size, "exhaustive sample bound on |X| and |Y|")->capture_default_str();
  laws->add_option("--mutate", mutation, "corrupt one component, sigma:N or pi:N");
  add_output_flags(laws, output, true);

  FillFlags fill_flags;
  auto* fill = app.add_subcommand("fill", "solve a lifting problem with a stored structure");
  fill->add_option("--structure", fill_flags.structure, "factorize certificate or {gens, target, p}")
      ->required()
      ->check(CLI::ExistingFile);
  fill->add_option("--problem", fill_flags.problem, "{generator, top, bottom}")->required()->check(CLI::ExistingFile);
  add_output_flags(fill, output, false);

  std::vector<std::string> paths;
  auto* validate_cmd = app.add_subcommand("validate", "re-check certificates");
  validate_cmd->add_option("certificates", paths, "certificate files")->required()->check(CLI::ExistingFile);
  add_output_flags(validate_cmd, output, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (factorize->parsed()) {
      const RunInputs in = load_inputs(run_flags);
      return timed_certificate([&] { return factorize_certificate(in, SequenceMode::Garner); }, output, out);
    }
    if (quillen->parsed()) {
      const RunInputs in = load_inputs(run_flags);
      return timed_certificate([&] { return factorize_certificate(in, SequenceMode::Quillen); }, output, out);
    }
    if (compare->parsed()) {
      const RunInputs in = load_inputs(run_flags);
      return timed_certificate([&] { return compare_certificate(in); }, output, out);
    }
    if (enumerate->parsed()) {
      const RunInputs in = load_inputs(run_flags);
      return timed_certificate([&] { return enumerate_certificate(in); }, output, out);
    }
    if (laws->parsed()) {
      laws_in.rules = split_commas(rules);
      if (laws_in.rules.empty()) throw InputError("--rules", "no rule named");
      if (!mutation.empty()) laws_in.mutation = mutation;
      return timed_certificate([&] { return laws_certificate(laws_in); }, output, out);
    }
    if (fill->parsed()) return run_fill(fill_flags, output, out);
    return run_validate(paths, output, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nwfs::io
