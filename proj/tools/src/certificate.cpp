#include "nwfs_cli/certificate.hpp"

#include <future>
#include <sstream>

#include "nwfs/error.hpp"

namespace nwfs::io {

namespace {

constexpr std::size_t kListedStructures = 16;

json cardinality_row(const Presheaf& p) {
  json row = json::object();
  for (ObjectIndex a = 0; a < p.base().object_count(); ++a) row[p.base().object_id(a)] = p.size(a);
  return row;
}

json onestep_json(const OneStepFactorization& s) {
  json cells = json::array();
  for (std::size_t c = 0; c < s.cell_count(); ++c) {
    cells.push_back({{"generator", s.generator[c]},
                     {"top", components_json(s.squares[c].top)},
                     {"bottom", components_json(s.squares[c].bottom)}});
  }
  return {{"cells", std::move(cells)},
          {"K", to_json(s.K)},
          {"lambda", components_json(s.lambda)},
          {"rho", components_json(s.rho)},
          {"xi", components_json(s.xi)}};
}

json base_certificate(const std::string& mode) {
  return {{"schema", kSchema}, {"mode", mode}};
}

void attach_inputs(json& cert, const RunInputs& in) {
  json inputs{{"category", to_json(in.base)}, {"gens", to_json(in.gens)}, {"map", to_json(in.map)}};
  json digests = json::object();
  for (auto it = inputs.begin(); it != inputs.end(); ++it) digests[it.key()] = digest(it.value());
  cert["inputs"] = std::move(inputs);
  cert["digests"] = std::move(digests);
  cert["budget"] = {{"successors_per_block", in.budget.successors_per_block},
                    {"omega_blocks", in.budget.omega_blocks}};
}

LabeledPresheaf dense(const Presheaf& p) { return {p, dense_labels(p)}; }

PresheafMap read_map(const json& doc, const Presheaf& s, const Presheaf& t, const std::string& at) {
  return parse_components(doc, dense(s), dense(t), at);
}

const json& at_key(const json& doc, const std::string& key, const std::string& at) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(at + "/" + key, "missing field");
  return doc[key];
}

std::size_t read_index(const json& v, const std::string& at) {
  if (!v.is_number_unsigned()) throw InputError(at, "expected a non-negative integer");
  return v.get<std::size_t>();
}

bool same(const PresheafMap& a, const PresheafMap& b) {
  return a.source() == b.source() && a.target() == b.target() && a.components() == b.components();
}

void expect(bool ok, ValidationReport& r, const std::string& msg) {
  if (!ok) r.violations.push_back(msg);
}

void merge(ValidationReport& into, const ValidationReport& from, const std::string& prefix) {
  for (const auto& v : from.violations) into.violations.push_back(prefix + v);
}

StructureComponent parse_mutation(const std::string& text, std::uint64_t& seed) {
  const auto colon = text.find(':');
  const std::string which = text.substr(0, colon);
  if (colon == std::string::npos || (which != "sigma" && which != "pi")) {
    throw InputError("--mutate", "expected sigma:N or pi:N");
  }
  try {
    std::size_t used = 0;
    seed = std::stoull(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("--mutate", "seed must be a non-negative integer");
  }
  return which == "sigma" ? StructureComponent::Sigma : StructureComponent::Pi;
}

json counterexample_json(const Counterexample& c) {
  const PresheafMap& f = c.arrow;
  return {{"axiom", c.axiom},
          {"arrow", {{"source", f.source().size(0)}, {"target", f.target().size(0)}, {"values", f.component(0)}}},
          {"witness", c.witness}};
}

std::string sizes_text(const json& row) {
  if (row.size() == 1) return std::to_string(row.begin()->get<std::size_t>());
  std::string out;
  for (auto it = row.begin(); it != row.end(); ++it) {
    if (!out.empty()) out += ' ';
    out += it.key() + "=" + std::to_string(it->get<std::size_t>());
  }
  return out;
}

void run_text(std::ostringstream& out, const json& run, const std::string& name) {
  out << name << " outcome: " << run["outcome"].get<std::string>();
  if (!run["converged_at"].is_null()) out << " at stage " << run["converged_at"].get<std::size_t>();
  out << "\n";
  const json& stages = run["stages"];
  for (std::size_t i = 0; i < stages.size(); ++i) {
    out << name << " stage " << i << " " << stages[i]["kind"].get<std::string>() << " |K| "
        << sizes_text(run["cardinalities"][i]) << "\n";
  }
}

}  // namespace

json run_json(const SequenceState& st) {
  json stages = json::array();
  json cards = json::array();
  for (std::size_t i = 0; i < st.stages.size(); ++i) {
    const Stage& s = st.stages[i];
    json j{{"index", i},
           {"kind", to_string(s.kind)},
           {"K", to_json(s.K)},
           {"lambda", components_json(s.lambda)},
           {"rho", components_json(s.rho)}};
    if (s.connect_in) j["connect_in"] = components_json(*s.connect_in);
    if (s.pred) j["pred"] = *s.pred;
    if (s.sigma_in) j["sigma_in"] = components_json(*s.sigma_in);
    if (s.coequalized) {
      j["coequalized"] = json::array({components_json(s.coequalized->first),
                                      components_json(s.coequalized->second)});
    }
    if (s.kind == StageKind::Limit) j["limit_from"] = s.limit_from;
    if (s.onestep) j["onestep"] = onestep_json(*s.onestep);
    stages.push_back(std::move(j));
    cards.push_back(cardinality_row(s.K));
  }
  return {{"mode", to_string(st.mode)},
          {"outcome", st.converged() ? "converged" : "exhausted"},
          {"converged_at", st.converged_at ? json(*st.converged_at) : json(nullptr)},
          {"successor_steps", st.successor_steps},
          {"omega_steps", st.omega_steps},
          {"run_full_budget", st.options.run_full_budget},
          {"cardinalities", std::move(cards)},
          {"stages", std::move(stages)}};
}

json algebra_json(const AlgebraStructure& a, std::size_t stage) {
  return {{"stage", stage}, {"p", components_json(a.p)}};
}

json table_json(const LiftingTable& t) {
  json entries = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    entries.push_back({{"generator", t.generator[i]},
                       {"top", components_json(t.squares[i].top)},
                       {"bottom", components_json(t.squares[i].bottom)},
                       {"filler", components_json(t.fillers[i])}});
  }
  return {{"entries", std::move(entries)}};
}

json factorize_certificate(const RunInputs& in, SequenceMode mode) {
  json cert = base_certificate(mode == SequenceMode::Garner ? "factorize" : "quillen");
  attach_inputs(cert, in);
  const SequenceState st = mode == SequenceMode::Garner ? run_garner(in.gens, in.map, in.budget)
                                                        : run_quillen(in.gens, in.map, in.budget);
  cert["run"] = run_json(st);
  int code = kOk;
  if (mode == SequenceMode::Garner) {
    if (st.converged()) {
      const AlgebraStructure a = extract_algebra(st);
      cert["algebra"] = algebra_json(a, *st.converged_at);
      cert["lifting_table"] = table_json(fillers_from_algebra(a, in.gens));
    } else {
      code = kExhausted;
    }
  }
  cert["exit_code"] = code;
  return cert;
}

json compare_certificate(const RunInputs& in) {
  json cert = base_certificate("compare");
  attach_inputs(cert, in);
  const RunOptions full{true};
  auto garner = std::async(std::launch::async, [&] { return run_garner(in.gens, in.map, in.budget, full); });
  auto quillen = std::async(std::launch::async, [&] { return run_quillen(in.gens, in.map, in.budget, full); });
  const SequenceState g = garner.get();
  const SequenceState q = quillen.get();
  const std::vector<PresheafMap> maps = build_comparison(g, q);
  json comparison = json::array();
  bool all_surjective = true;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const bool onto = is_surjective(maps[i]);
    all_surjective = all_surjective && onto;
    comparison.push_back({{"stage", i}, {"components", components_json(maps[i])}, {"surjective", onto}});
  }
  cert["garner"] = run_json(g);
  cert["quillen"] = run_json(q);
  cert["comparison"] = std::move(comparison);
  cert["exit_code"] = !all_surjective ? kRefuted : g.converged() ? kOk : kExhausted;
  return cert;
}

json enumerate_certificate(const RunInputs& in) {
  json cert = base_certificate("enumerate");
  attach_inputs(cert, in);
  const BijectionReport b = check_bijection(in.gens, in.map);
  json listed_algebras = json::array();
  for (const auto& a : enumerate_algebra_structures(in.gens, in.map, kListedStructures)) {
    listed_algebras.push_back(components_json(a.p));
  }
  json listed_tables = json::array();
  for (const auto& t : enumerate_lifting_tables(in.gens, in.map, kListedStructures)) {
    listed_tables.push_back(table_json(t));
  }
  cert["enumeration"] = {{"algebras", b.algebras},
                         {"tables", b.tables},
                         {"bijection", b.holds},
                         {"mapping", b.mapping},
                         {"detail", b.detail},
                         {"listed_algebras", std::move(listed_algebras)},
                         {"listed_tables", std::move(listed_tables)}};
  cert["exit_code"] = b.holds ? kOk : kRefuted;
  return cert;
}

json laws_certificate(const LawInputs& in) {
  json cert = base_certificate("laws");
  std::vector<FactorizationRule> rules;
  for (const auto& name : in.rules) {
    try {
      rules.push_back(rule_by_name(name));
    } catch (const NotFound& e) {
      throw InputError("--rules", e.what());
    }
  }
  if (in.mutation) {
    std::uint64_t seed = 0;
    const StructureComponent which = parse_mutation(*in.mutation, seed);
    for (auto& r : rules) {
      if (!(which == StructureComponent::Sigma ? r.sigma : r.pi)) {
        throw InputError("--mutate", "rule " + r.name + " has no such component");
      }
      r = mutate_rule(r, which, seed);
    }
  }
  const LawReport report = check_laws(rules, law_sample(in.max_size, in.seed));
  json per_rule = json::array();
  for (const auto& r : report.rules) {
    json axioms = json::array();
    for (const auto& a : r.axioms) {
      axioms.push_back({{"axiom", a.axiom}, {"checked", a.checked}, {"failed", a.failed}});
    }
    json ces = json::array();
    for (const auto& c : r.counterexamples) ces.push_back(counterexample_json(c));
    per_rule.push_back({{"rule", r.rule}, {"axioms", std::move(axioms)}, {"counterexamples", std::move(ces)}});
  }
  cert["laws"] = {{"rules", in.rules},
                  {"max_size", in.max_size},
                  {"seed", in.seed},
                  {"mutation", in.mutation ? json(*in.mutation) : json(nullptr)},
                  {"sample_size", report.sample_size},
                  {"failures", report.failures()},
                  {"reports", std::move(per_rule)}};
  cert["exit_code"] = report.ok() ? kOk : kRefuted;
  return cert;
}

RunInputs parse_run_inputs(const json& cert) {
  const json& inputs = at_key(cert, "inputs", "");
  RunInputs in;
  in.base = parse_category(at_key(inputs, "category", "/inputs"), "/inputs/category");
  in.gens = parse_gens(at_key(inputs, "gens", "/inputs"), in.base, "/inputs/gens");
  in.map = parse_arrow(at_key(inputs, "map", "/inputs"), in.base, "/inputs/map");
  const json& budget = at_key(cert, "budget", "");
  in.budget.successors_per_block =
      read_index(at_key(budget, "successors_per_block", "/budget"), "/budget/successors_per_block");
  in.budget.omega_blocks = read_index(at_key(budget, "omega_blocks", "/budget"), "/budget/omega_blocks");
  return in;
}

SequenceState parse_run(const json& run, const RunInputs& in, ValidationReport& report, const std::string& at) {
  SequenceState st;
  const std::string mode = at_key(run, "mode", at).get<std::string>();
  if (mode != "garner" && mode != "quillen") throw InputError(at + "/mode", "unknown mode '" + mode + "'");
  st.mode = mode == "garner" ? SequenceMode::Garner : SequenceMode::Quillen;
  st.gens = in.gens;
  st.input = in.map;
  st.budget = in.budget;
  st.options.run_full_budget = at_key(run, "run_full_budget", at).get<bool>();
  st.successor_steps = read_index(at_key(run, "successor_steps", at), at + "/successor_steps");
  st.omega_steps = read_index(at_key(run, "omega_steps", at), at + "/omega_steps");
  const json& conv = at_key(run, "converged_at", at);
  if (!conv.is_null()) st.converged_at = read_index(conv, at + "/converged_at");

  const Presheaf& C = in.map.dom();
  const Presheaf& D = in.map.cod();
  const json& stages = at_key(run, "stages", at);
  const json& cards = at_key(run, "cardinalities", at);
  expect(stages.is_array() && cards.is_array() && cards.size() == stages.size(), report,
         at + ": cardinality table does not match the stages");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string p = at + "/stages/" + std::to_string(i);
    const json& sj = stages[i];
    Stage s;
    const std::string kind = at_key(sj, "kind", p).get<std::string>();
    if (kind == "initial") s.kind = StageKind::Initial;
    else if (kind == "successor") s.kind = StageKind::Successor;
    else if (kind == "limit") s.kind = StageKind::Limit;
    else throw InputError(p + "/kind", "unknown stage kind '" + kind + "'");
    expect((i == 0) == (s.kind == StageKind::Initial), report, p + ": only stage 0 is initial");
    s.K = parse_presheaf(at_key(sj, "K", p), in.base, p + "/K").presheaf;
    if (cards.is_array() && i < cards.size()) {
      expect(cards[i] == cardinality_row(s.K), report, p + ": cardinality row disagrees with K");
    }
    s.lambda = read_map(at_key(sj, "lambda", p), C, s.K, p + "/lambda");
    s.rho = read_map(at_key(sj, "rho", p), s.K, D, p + "/rho");
    if (i > 0) {
      s.connect_in = read_map(at_key(sj, "connect_in", p), st.stages[i - 1].K, s.K, p + "/connect_in");
    }
    if (sj.contains("pred")) s.pred = read_index(sj["pred"], p + "/pred");
    if (sj.contains("sigma_in")) {
      if (!s.pred || *s.pred >= i || !st.stages[*s.pred].onestep) {
        throw InputError(p + "/sigma_in", "sigma without a predecessor carrying one-step data");
      }
      s.sigma_in = read_map(sj["sigma_in"], st.stages[*s.pred].onestep->K, s.K, p + "/sigma_in");
    }
    if (sj.contains("coequalized")) {
      const json& pair = sj["coequalized"];
      const Stage& prev = st.stages[i - 1];
      if (!pair.is_array() || pair.size() != 2 || !prev.pred || !prev.onestep ||
          !st.stages[*prev.pred].onestep) {
        throw InputError(p + "/coequalized", "coequalized pair without the one-step data it joins");
      }
      const Presheaf& from = st.stages[*prev.pred].onestep->K;
      const PresheafMap p1 = read_map(pair[0], from, prev.onestep->K, p + "/coequalized/0");
      const PresheafMap p2 = read_map(pair[1], from, prev.onestep->K, p + "/coequalized/1");
      expect(same(p1, compose_maps(prev.onestep->lambda, *prev.sigma_in)), report,
             p + ": first coequalized map is not lambda' o sigma");
      expect(same(p2, onestep_on_square(*st.stages[*prev.pred].onestep, *prev.onestep,
                                        st.connect(*prev.pred, i - 1), identity_map(D))),
             report, p + ": second coequalized map is not K'(connect, id)");
      const Cocone q = coequalizer(p1, p2);
      expect(q.apex == s.K, report, p + ": K is not the coequalizer of the recorded pair");
      if (s.sigma_in) expect(same(q.legs[0], *s.sigma_in), report, p + ": sigma is not the coequalizer leg");
      s.coequalized = std::make_pair(p1, p2);
    }
    if (s.kind == StageKind::Limit) {
      s.limit_from = read_index(at_key(sj, "limit_from", p), p + "/limit_from");
      if (s.limit_from >= i) throw InputError(p + "/limit_from", "block starts after the limit");
      std::vector<PresheafMap> chain;
      for (std::size_t k = s.limit_from + 1; k < i; ++k) chain.push_back(*st.stages[k].connect_in);
      Cocone c = chain_colimit(st.stages[s.limit_from].K, chain);
      expect(c.apex == s.K, report, p + ": K is not the colimit of its block");
      expect(same(c.legs.back(), *s.connect_in), report, p + ": connect map is not the last colimit leg");
      s.limit = std::move(c);
    }
    if (sj.contains("onestep")) {
      const std::string op = p + "/onestep";
      const json& oj = sj["onestep"];
      auto fresh = std::make_shared<const OneStepFactorization>(build_onestep(in.gens, ArrowObj{s.rho, {}}));
      const Presheaf k = parse_presheaf(at_key(oj, "K", op), in.base, op + "/K").presheaf;
      expect(k == fresh->K, report, op + ": K' differs from the pushout");
      if (k == fresh->K) {
        expect(same(read_map(at_key(oj, "lambda", op), s.K, k, op + "/lambda"), fresh->lambda), report,
               op + ": lambda' differs");
        expect(same(read_map(at_key(oj, "rho", op), k, D, op + "/rho"), fresh->rho), report,
               op + ": rho' differs");
        expect(same(read_map(at_key(oj, "xi", op), fresh->codomain_sum.apex, k, op + "/xi"), fresh->xi), report,
               op + ": xi differs");
      }
      expect(at_key(oj, "cells", op).size() == fresh->cell_count(), report,
             op + ": cell count differs from the squares into rho");
      s.onestep = std::move(fresh);
    }
    st.stages.push_back(std::move(s));
  }
  return st;
}

namespace {

void check_run_structures(const json& cert, const SequenceState& st, const RunInputs& in,
                          ValidationReport& report) {
  if (!cert.contains("algebra")) {
    expect(!(st.mode == SequenceMode::Garner && st.converged()), report, "converged run without an algebra");
    return;
  }
  const std::size_t gamma = read_index(at_key(cert["algebra"], "stage", "/algebra"), "/algebra/stage");
  if (gamma >= st.stages.size() || !st.stages[gamma].onestep) {
    throw InputError("/algebra/stage", "stage has no one-step data");
  }
  const Stage& s = st.stages[gamma];
  AlgebraStructure a{ArrowObj{s.rho, {}}, s.onestep,
                     read_map(at_key(cert["algebra"], "p", "/algebra"), s.onestep->K, s.K, "/algebra/p")};
  merge(report, verify_algebra(a), "algebra: ");
  expect(st.converged_at == gamma, report, "algebra is not on the converged stage");
  if (!cert.contains("lifting_table")) {
    report.violations.push_back("algebra without a lifting table");
    return;
  }
  const json& entries = at_key(cert["lifting_table"], "entries", "/lifting_table");
  std::vector<std::size_t> gens;
  std::vector<Square> squares;
  std::vector<PresheafMap> fillers;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = "/lifting_table/entries/" + std::to_string(i);
    const std::size_t gi = read_index(at_key(entries[i], "generator", p), p + "/generator");
    if (gi >= in.gens.members.size()) throw InputError(p + "/generator", "no such generator");
    const ArrowObj& j = in.gens.members[gi];
    gens.push_back(gi);
    squares.push_back(Square{j, a.target, read_map(at_key(entries[i], "top", p), j.dom(), s.K, p + "/top"),
                             read_map(at_key(entries[i], "bottom", p), j.cod(), in.map.cod(), p + "/bottom")});
    fillers.push_back(read_map(at_key(entries[i], "filler", p), j.cod(), s.K, p + "/filler"));
  }
  const LiftingTable t = make_table(a.target, gens, squares, fillers);
  merge(report, verify_table(t, in.gens), "lifting table: ");
  expect(t.signature() == fillers_from_algebra(a, in.gens).signature(), report,
         "lifting table does not come from the algebra");
}

void check_comparison(const json& cert, const SequenceState& g, const SequenceState& q,
                      ValidationReport& report) {
  const json& maps = at_key(cert, "comparison", "");
  const std::size_t n = std::min(g.stages.size(), q.stages.size());
  expect(maps.size() == n, report, "comparison does not cover every common stage");
  for (std::size_t i = 0; i < std::min(n, maps.size()); ++i) {
    const std::string p = "/comparison/" + std::to_string(i);
    const PresheafMap m = read_map(at_key(maps[i], "components", p), q.stages[i].K, g.stages[i].K, p + "/components");
    expect(same(compose_maps(m, q.stages[i].lambda), g.stages[i].lambda), report,
           p + ": q o lambda^Q != lambda^G");
    expect(same(compose_maps(g.stages[i].rho, m), q.stages[i].rho), report, p + ": rho^G o q != rho^Q");
    if (i > 0) {
      expect(same(compose_maps(*g.stages[i].connect_in, read_map(maps[i - 1]["components"], q.stages[i - 1].K,
                                                                 g.stages[i - 1].K, p)),
                  compose_maps(m, *q.stages[i].connect_in)),
             report, p + ": comparison maps do not commute with connect maps");
    }
    expect(at_key(maps[i], "surjective", p).get<bool>() == is_surjective(m), report,
           p + ": surjectivity verdict is wrong");
  }
}

json recompute(const json& cert, const std::string& mode) {
  if (mode == "laws") {
    const json& l = at_key(cert, "laws", "");
    LawInputs in;
    in.rules = at_key(l, "rules", "/laws").get<std::vector<std::string>>();
    in.max_size = read_index(at_key(l, "max_size", "/laws"), "/laws/max_size");
    in.seed = at_key(l, "seed", "/laws").get<std::uint64_t>();
    if (!at_key(l, "mutation", "/laws").is_null()) in.mutation = l["mutation"].get<std::string>();
    return laws_certificate(in);
  }
  const RunInputs in = parse_run_inputs(cert);
  if (mode == "factorize") return factorize_certificate(in, SequenceMode::Garner);
  if (mode == "quillen") return factorize_certificate(in, SequenceMode::Quillen);
  if (mode == "compare") return compare_certificate(in);
  return enumerate_certificate(in);
}

}  // namespace

ValidationReport validate_certificate(const json& cert) {
  ValidationReport report;
  try {
    if (!cert.is_object() || cert.value("schema", "") != kSchema) {
      report.violations.push_back("/schema: expected " + std::string(kSchema));
      return report;
    }
    const std::string mode = at_key(cert, "mode", "").get<std::string>();
    static const std::vector<std::string> kModes{"factorize", "quillen", "compare", "enumerate", "laws"};
    if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end()) {
      report.violations.push_back("/mode: unknown mode '" + mode + "'");
      return report;
    }
    if (mode != "laws") {
      const json& inputs = at_key(cert, "inputs", "");
      const json& digests = at_key(cert, "digests", "");
      for (const char* key : {"category", "gens", "map"}) {
        expect(digests.value(key, "") == digest(at_key(inputs, key, "/inputs")), report,
               std::string("/digests/") + key + ": does not match the embedded input");
      }
      const RunInputs in = parse_run_inputs(cert);
      if (mode == "factorize" || mode == "quillen") {
        const SequenceState st = parse_run(at_key(cert, "run", ""), in, report, "/run");
        merge(report, verify_sequence(st), "run: ");
        check_run_structures(cert, st, in, report);
      } else if (mode == "compare") {
        const SequenceState g = parse_run(at_key(cert, "garner", ""), in, report, "/garner");
        const SequenceState q = parse_run(at_key(cert, "quillen", ""), in, report, "/quillen");
        merge(report, verify_sequence(g), "garner: ");
        merge(report, verify_sequence(q), "quillen: ");
        check_comparison(cert, g, q, report);
      } else {
        const OneStepFactorization step = build_onestep(in.gens, in.map);
        auto shared = std::make_shared<const OneStepFactorization>(step);
        const json& listed = at_key(at_key(cert, "enumeration", ""), "listed_algebras", "/enumeration");
        for (std::size_t i = 0; i < listed.size(); ++i) {
          const std::string p = "/enumeration/listed_algebras/" + std::to_string(i);
          AlgebraStructure a{in.map, shared, read_map(listed[i], step.K, in.map.dom(), p)};
          merge(report, verify_algebra(a), p + ": ");
        }
      }
    }
    json expected = recompute(cert, mode);
    json actual = cert;
    actual.erase("timing");
    if (expected != actual) {
      const json patch = json::diff(expected, actual);
      report.violations.push_back("recomputed certificate differs at " +
                                  (patch.empty() ? std::string("/") : patch[0].value("path", "/")));
    }
  } catch (const InputError& e) {
    report.violations.push_back(e.what());
  } catch (const json::exception& e) {
    report.violations.push_back(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    report.violations.push_back(std::string("certificate data rejected: ") + e.what());
  }
  return report;
}

std::string text_report(const json& cert) {
  std::ostringstream out;
  const std::string mode = cert["mode"].get<std::string>();
  out << "mode: " << mode << "\n";
  if (cert.contains("budget")) {
    out << "budget: " << cert["budget"]["successors_per_block"].get<std::size_t>() << " successors per block, "
        << cert["budget"]["omega_blocks"].get<std::size_t>() << " omega blocks\n";
  }
  if (cert.contains("run")) run_text(out, cert["run"], cert["run"]["mode"].get<std::string>());
  if (cert.contains("algebra")) {
    out << "algebra: on stage " << cert["algebra"]["stage"].get<std::size_t>() << ", lifting table with "
        << cert["lifting_table"]["entries"].size() << " entries\n";
  }
  if (mode == "compare") {
    run_text(out, cert["garner"], "garner");
    run_text(out, cert["quillen"], "quillen");
    for (const auto& c : cert["comparison"]) {
      out << "comparison stage " << c["stage"].get<std::size_t>() << ": "
          << (c["surjective"].get<bool>() ? "surjective" : "NOT surjective") << "\n";
    }
  }
  if (cert.contains("enumeration")) {
    const json& e = cert["enumeration"];
    out << "algebras: " << e["algebras"].get<std::size_t>() << "\n"
        << "lifting tables: " << e["tables"].get<std::size_t>() << "\n"
        << "bijection: " << (e["bijection"].get<bool>() ? "holds" : "fails") << "\n";
    if (!e["detail"].get<std::string>().empty()) out << "detail: " << e["detail"].get<std::string>() << "\n";
  }
  if (cert.contains("laws")) {
    const json& l = cert["laws"];
    out << "sample: " << l["sample_size"].get<std::size_t>() << " arrows (seed " << l["seed"].get<std::uint64_t>()
        << ")\n";
    if (!l["mutation"].is_null()) out << "mutation: " << l["mutation"].get<std::string>() << "\n";
    for (const auto& r : l["reports"]) {
      const std::string rule = r["rule"].get<std::string>();
      for (const auto& a : r["axioms"]) {
        out << rule << " " << a["axiom"].get<std::string>() << ": " << a["checked"].get<std::size_t>()
            << " checked, " << a["failed"].get<std::size_t>() << " failed\n";
      }
      for (const auto& c : r["counterexamples"]) {
        out << rule << " counterexample " << c["axiom"].get<std::string>() << " on "
            << c["arrow"]["source"].get<std::size_t>() << " -> " << c["arrow"]["target"].get<std::size_t>()
            << " " << c["arrow"]["values"].dump() << ": " << c["witness"].get<std::string>() << "\n";
      }
    }
    out << "failures: " << l["failures"].get<std::size_t>() << "\n";
  }
  out << "exit: " << cert["exit_code"].get<int>() << "\n";
  return out.str();
}

}  // namespace nwfs::io
