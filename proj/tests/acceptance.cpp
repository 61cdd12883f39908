// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nwfs/laws.hpp"
#include "nwfs_cli/json_io.hpp"
#include "support.hpp"

#ifndef NWFS_CLI_PATH
#error "NWFS_CLI_PATH must name the command-line binary"
#endif

namespace {

using namespace nwfs;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void within(Verdict& v, Clock::time_point start, double limit) {
  const double s = seconds_since(start);
  if (s >= limit) v.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
}

// AC1: {empty -> 1} factors every finite map through C + D.
Verdict ac1() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  const GeneratingSet point = testing::gens("point");
  for (int i = 0; i < 50 && v.pass; ++i) {
    const ArrowObj g{testing::random_finite_map(rng, 6), {}};
    const std::size_t c = g.dom().size(0), d = g.cod().size(0);
    const SequenceState st = run_garner(point, g);
    if (!st.converged() || *st.converged_at > 2) {
      v.fail("instance " + std::to_string(i) + " did not converge by stage 2");
      break;
    }
    const Stage& s = st.stages[*st.converged_at];
    // Canonical order: image of lambda first (in C order), then the rest by rho.
    std::vector<Element> order;
    std::vector<bool> in_image(s.K.size(0), false);
    for (Element x = 0; x < c; ++x) {
      order.push_back(s.lambda(0, x));
      in_image[s.lambda(0, x)] = true;
    }
    std::vector<std::pair<Element, Element>> rest;
    for (Element e = 0; e < s.K.size(0); ++e) {
      if (!in_image[e]) rest.emplace_back(s.rho(0, e), e);
    }
    std::sort(rest.begin(), rest.end());
    for (const auto& [y, e] : rest) order.push_back(e);
    std::vector<Element> rho_relabelled;
    for (Element e : order) rho_relabelled.push_back(s.rho(0, e));
    std::vector<Element> expected;
    for (Element x = 0; x < c; ++x) expected.push_back(g.f(0, x));
    for (Element y = 0; y < d; ++y) expected.push_back(y);
    if (s.K.size(0) != c + d || !is_injective(s.lambda) || rho_relabelled != expected) {
      v.fail("instance " + std::to_string(i) + " is not the cograph factorisation");
    }
  }
  within(v, start, 5.0);
  return v;
}

// AC2: {1 + 1 -> 1} gives the image factorisation, and the converged rho
// carries exactly one algebra.
Verdict ac2() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  const GeneratingSet nabla = testing::gens("codiagonal");
  std::size_t injective_seen = 0;
  for (int i = 0; i < 50 && v.pass; ++i) {
    const ArrowObj g{testing::random_finite_map(rng, 6), {}};
    const SequenceState st = run_garner(nabla, g);
    if (!st.converged()) {
      v.fail("instance " + std::to_string(i) + " exhausted");
      break;
    }
    const Stage& s = st.stages[*st.converged_at];
    if (!is_injective(s.rho) || !is_surjective(s.lambda) ||
        s.K.size(0) != testing::distinct(g.f.component(0))) {
      v.fail("instance " + std::to_string(i) + " is not the image factorisation");
    }
    const std::size_t on_rho = enumerate_algebra_structures(nabla, ArrowObj{s.rho, {}}).size();
    if (on_rho != 1) v.fail("instance " + std::to_string(i) + ": " + std::to_string(on_rho) + " algebras on rho");
    const std::size_t on_g = enumerate_algebra_structures(nabla, g).size();
    if (on_g != (is_injective(g.f) ? 1u : 0u)) {
      v.fail("instance " + std::to_string(i) + ": " + std::to_string(on_g) + " algebras on g");
    }
    injective_seen += is_injective(g.f);
  }
  if (v.pass) v.detail = std::to_string(injective_seen) + " of 50 inputs injective";
  within(v, start, 5.0);
  return v;
}

// AC3: the first coequalized pair is (lambda' at rho'_g, K'(lambda'_g, id)).
Verdict ac3(const std::vector<testing::Instance>& corpus) {
  Verdict v;
  for (const auto& inst : corpus) {
    const SequenceState st = run_garner(inst.gens, inst.g, {2, 0}, {true});
    const OneStepFactorization first = build_onestep(inst.gens, inst.g);
    const OneStepFactorization second = build_onestep(inst.gens, ArrowObj{first.rho, {}});
    if (st.stages.size() < 3 || !st.stages[2].coequalized) {
      v.fail(inst.name + ": no coequalized pair at stage 2");
      continue;
    }
    const auto& [p1, p2] = *st.stages[2].coequalized;
    if (!testing::same_map(p1, second.lambda) ||
        !testing::same_map(p2, onestep_on_square(first, second, first.lambda, identity_map(inst.g.cod())))) {
      v.fail(inst.name + ": pair differs");
    }
  }
  if (v.pass) v.detail = std::to_string(corpus.size()) + " instances";
  return v;
}

// AC4: Quillen grows by one per step, Garner stops at stage 1.
Verdict ac4() {
  Verdict v;
  const auto start = Clock::now();
  const GeneratingSet point = testing::gens("point");
  const ArrowObj bang = point.members[0];
  const SequenceState q = run_quillen(point, bang, {6, 0});
  for (std::size_t n = 1; n <= 6; ++n) {
    if (q.stages.size() <= n || q.stages[n].K.size(0) != n) v.fail("Quillen stage " + std::to_string(n));
  }
  if (q.converged()) v.fail("Quillen claimed convergence");
  const SequenceState g = run_garner(point, bang, {6, 0});
  if (g.converged_at != 1u || g.stages[1].K.size(0) != 1) v.fail("Garner did not converge at stage 1 with |K| = 1");
  within(v, start, 1.0);
  return v;
}

// AC5: comparison maps are surjective.
Verdict ac5() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(505);
  for (int i = 0; i < 30 && v.pass; ++i) {
    const GeneratingSet j = testing::gens(rng() % 2 ? "point" : "codiagonal");
    const ArrowObj g{testing::random_finite_map(rng, 4), {}};
    const SequenceState gs = run_garner(j, g, {4, 0}, {true});
    const SequenceState qs = run_quillen(j, g, {4, 0}, {true});
    const auto maps = build_comparison(gs, qs);
    if (maps.size() != 5) v.fail("instance " + std::to_string(i) + ": wrong number of comparison maps");
    for (std::size_t n = 0; n < maps.size(); ++n) {
      if (!is_surjective(maps[n])) v.fail("instance " + std::to_string(i) + ": q_" + std::to_string(n));
    }
  }
  within(v, start, 10.0);
  return v;
}

// AC6: algebras and lifting tables correspond, with the product count.
Verdict ac6(const std::vector<testing::Instance>& corpus) {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& inst : corpus) {
    if (testing::total_carrier(inst) > 12) continue;
    std::size_t expected = 1;
    for (const auto& j : inst.gens.members) {
      for (const auto& s : enumerate_squares(j, inst.g)) expected *= testing::brute_filler_count(s);
    }
    const BijectionReport r = check_bijection(inst.gens, inst.g);
    if (!r.holds) v.fail(inst.name + ": " + r.detail);
    if (r.algebras != expected || r.tables != expected) {
      v.fail(inst.name + ": counts " + std::to_string(r.algebras) + "/" + std::to_string(r.tables) + ", expected " +
             std::to_string(expected));
    }
    ++checked;
  }
  if (v.pass) v.detail = std::to_string(checked) + " instances";
  return v;
}

// AC7: law suite and mutation sensitivity.
Verdict ac7() {
  Verdict v;
  const auto start = Clock::now();
  const auto sample = law_sample(4, 7);
  const LawReport clean = check_laws({graph_rule(), cograph_rule()}, sample);
  if (!clean.ok()) {
    const auto& ce = clean.rules[0].counterexamples.empty() ? clean.rules[1].counterexamples[0]
                                                            : clean.rules[0].counterexamples[0];
    v.fail(ce.rule + " fails " + ce.axiom + ": " + ce.witness);
  }
  const std::array<std::pair<StructureComponent, std::uint64_t>, 6> mutations{{{StructureComponent::Sigma, 1},
                                                                               {StructureComponent::Pi, 2},
                                                                               {StructureComponent::Sigma, 3},
                                                                               {StructureComponent::Pi, 4},
                                                                               {StructureComponent::Sigma, 5},
                                                                               {StructureComponent::Pi, 6}}};
  for (std::size_t i = 0; i < mutations.size(); ++i) {
    const FactorizationRule base = i % 2 == 0 ? graph_rule() : cograph_rule();
    const FactorizationRule m = mutate_rule(base, mutations[i].first, mutations[i].second);
    const LawReport r = check_laws({m}, sample);
    if (r.ok()) v.fail("mutation " + m.name + " went unnoticed");
  }
  if (v.pass) v.detail = std::to_string(sample.size()) + " arrows, 6 mutations caught";
  within(v, start, 30.0);
  return v;
}

// AC8: every filler satisfies both triangles; table composition is a
// category.
Verdict ac8(const std::vector<testing::Instance>& corpus) {
  Verdict v;
  std::size_t fillers = 0;
  for (const auto& inst : corpus) {
    const SequenceState st = run_garner(inst.gens, inst.g, {4, 0});
    if (!st.converged()) continue;
    const LiftingTable t = fillers_from_algebra(extract_algebra(st), inst.gens);
    if (!verify_table(t, inst.gens).ok()) v.fail(inst.name + ": algebra filler fails a triangle");
    fillers += t.size();
  }
  std::mt19937_64 rng(808);
  for (const auto& rule : {graph_rule(), cograph_rule()}) {
    for (int i = 0; i < 40; ++i) {
      // Free coalgebra on lambda_f against the free algebra on rho_g.
      const PresheafMap f = testing::random_finite_map(rng, 3);
      const PresheafMap g = testing::random_finite_map(rng, 3);
      const Factorization ff = rule.factor(f), fg = rule.factor(g);
      const ArrowObj left{ff.lambda, {}}, right{fg.rho, {}};
      const auto squares = enumerate_squares(left, right);
      if (squares.empty()) continue;
      const Square sq = squares[rng() % squares.size()];
      const PresheafMap lift = canonical_lift(rule, rule.sigma(f), rule.pi(g), sq);
      if (!(compose_maps(lift, left.f) == sq.top) || !(compose_maps(right.f, lift) == sq.bottom)) {
        v.fail(rule.name + ": canonical lift fails a triangle");
      }
      ++fillers;
    }
  }
  const GeneratingSet point = testing::gens("point");
  for (int i = 0; i < 20; ++i) {
    const std::size_t a = 1 + rng() % 2, b = a + rng() % 2, c = b + rng() % 2, d = c + rng() % 2;
    const ArrowObj h = testing::random_surjection(rng, d, c), g = testing::random_surjection(rng, c, b),
                   f = testing::random_surjection(rng, b, a);
    const LiftingTable th = testing::random_point_table(rng, h), tg = testing::random_point_table(rng, g),
                       tf = testing::random_point_table(rng, f);
    const LiftingTable l = compose_lifting_tables(compose_lifting_tables(th, tg, point), tf, point);
    const LiftingTable r = compose_lifting_tables(th, compose_lifting_tables(tg, tf, point), point);
    if (l.signature() != r.signature()) v.fail("composition not associative on triple " + std::to_string(i));
    if (!verify_table(l, point).ok()) v.fail("composite table fails a triangle");
    const LiftingTable in_id = testing::random_point_table(rng, ArrowObj{identity_map(g.dom()), {}});
    const LiftingTable out_id = testing::random_point_table(rng, ArrowObj{identity_map(g.cod()), {}});
    if (compose_lifting_tables(in_id, tg, point).signature() != tg.signature() ||
        compose_lifting_tables(tg, out_id, point).signature() != tg.signature()) {
      v.fail("composition not unital on pair " + std::to_string(i));
    }
  }
  if (v.pass) v.detail = std::to_string(fillers) + " fillers, 20 triples";
  return v;
}

// AC9: truncated horns on reflexive graphs stay finite per stage but never
// converge within the budget.
Verdict ac9() {
  Verdict v;
  const auto start = Clock::now();
  const GeneratingSet horns = testing::gens("horns≤1");
  const std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>> graphs{
      {1, {}}, {2, {}}, {2, {{0, 1}}}, {2, {{0, 1}, {1, 0}}}, {3, {{0, 1}, {1, 2}}}, {3, {{0, 1}, {1, 2}, {2, 0}}}};
  const OrdinalBudget budget{5, 1};
  std::size_t largest = 0;
  for (const auto& [n, edges] : graphs) {
    const std::string name = std::to_string(n) + " vertices, " + std::to_string(edges.size()) + " edges";
    const ArrowObj g{terminal_map(reflexive_graph(n, edges)), {}};
    const SequenceState gs = run_garner(horns, g, budget, {true});
    const SequenceState qs = run_quillen(horns, g, budget, {true});
    if (!gs.exhausted()) v.fail(name + ": reported convergence");
    if (!verify_sequence(gs).ok()) v.fail(name + ": Garner invariant: " + verify_sequence(gs).violations.front());
    if (!verify_sequence(qs).ok()) v.fail(name + ": Quillen invariant: " + verify_sequence(qs).violations.front());
    for (std::size_t i = 0; i < std::min(gs.stages.size(), qs.stages.size()); ++i) {
      for (ObjectIndex a = 0; a < horns.base.object_count(); ++a) {
        if (gs.stages[i].K.size(a) > qs.stages[i].K.size(a)) v.fail(name + ": Garner stage larger than Quillen");
      }
    }
    largest = std::max(largest, qs.stages.back().K.total_size());
  }
  if (v.pass) v.detail = "budget 5 successors x 2 blocks; largest Quillen stage " + std::to_string(largest);
  within(v, start, 60.0);
  return v;
}

int shell(const std::string& cmd, std::string* out = nullptr) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string buf;
  char chunk[4096];
  std::size_t n;
  while ((n = fread(chunk, 1, sizeof chunk, pipe)) > 0) buf.append(chunk, n);
  const int status = pclose(pipe);
  if (out) *out = buf;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// AC10: certificates re-validate in a fresh process and reruns are
// byte-identical.
Verdict ac10() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / ("nwfs-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = NWFS_CLI_PATH;
  std::ofstream(dir / "g.json") << R"({"source": {"sets": {"*": [0, 1]}}, "target": {"sets": {"*": [0, 1, 2]}},
    "components": {"*": {"0": 2, "1": 0}}})";
  std::ofstream(dir / "g0.json") << R"({"source": {"sets": {}}, "target": {"sets": {"*": [0]}}, "components": {}})";
  std::ofstream(dir / "x.json")
      << io::to_json(ArrowObj{terminal_map(reflexive_graph(2, {{0, 1}})), {}}).dump();
  const std::string g = (dir / "g.json").string(), g0 = (dir / "g0.json").string(), x = (dir / "x.json").string();
  const std::vector<std::pair<std::string, std::string>> commands{
      {"factorize", "factorize --category terminal --gens point --map " + g},
      {"quillen", "quillen --gens point --map " + g0 + " --budget-successors 4"},
      {"compare", "compare --gens point --map " + g0 + " --budget-successors 4"},
      {"compare-codiagonal", "compare --gens codiagonal --map " + g + " --budget-successors 3"},
      {"enumerate", "enumerate --gens point --map " + g},
      {"horns", "factorize --gens 'horns<=1' --map " + x + " --budget-successors 2"},
      {"laws", "laws --rules graph,cograph --seed 7"},
  };
  std::size_t certificates = 0;
  for (const auto& [name, args] : commands) {
    const fs::path a = dir / (name + ".a.json"), b = dir / (name + ".b.json");
    const int ca = shell(cli + " " + args + " --format json --out " + a.string());
    const int cb = shell(cli + " " + args + " --format json --out " + b.string());
    if (ca != cb || ca < 0 || ca > 3) v.fail(name + ": exit codes " + std::to_string(ca) + "/" + std::to_string(cb));
    if (slurp(a) != slurp(b) || slurp(a).empty()) v.fail(name + ": reruns differ");
    std::string report;
    if (shell(cli + " validate " + a.string(), &report) != 0) v.fail(name + ": " + report);
    ++certificates;
  }
  // The validator must reject a certificate whose stage data was altered.
  auto cert = io::json::parse(slurp(dir / "factorize.a.json"));
  cert["run"]["stages"][1]["lambda"]["*"]["0"] = 1;
  std::ofstream(dir / "tampered.json") << cert.dump(2);
  if (shell(cli + " validate " + (dir / "tampered.json").string()) != 3) v.fail("tampered certificate accepted");
  fs::remove_all(dir);
  if (v.pass) v.detail = std::to_string(certificates) + " certificates, tampering rejected";
  return v;
}

}  // namespace

int main() {
  const auto corpus = testing::corpus();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 cograph freeness", ac1},
      {"AC2 image factorisation", ac2},
      {"AC3 first coequalizer pinned", [&] { return ac3(corpus); }},
      {"AC4 Quillen divergence vs Garner convergence", ac4},
      {"AC5 comparison maps surjective", ac5},
      {"AC6 algebra/table bijection", [&] { return ac6(corpus); }},
      {"AC7 law suite and mutations", ac7},
      {"AC8 canonical lifts and table composition", [&] { return ac8(corpus); }},
      {"AC9 truncated horns", ac9},
      {"AC10 certificate round-trip", ac10},
  };
  bool all = true;
  for (const auto& [name, check] : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::ostringstream line;
    line << (v.pass ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(2) << seconds_since(start)
         << " s)";
    if (!v.detail.empty()) line << ": " << v.detail;
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
