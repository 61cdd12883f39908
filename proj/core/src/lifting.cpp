#include "nwfs/lifting.hpp"

#include <optional>

#include "nwfs/error.hpp"

namespace nwfs {

const PresheafMap* LiftingTable::find(std::size_t gen, const PresheafMap& top,
                                      const PresheafMap& bottom) const {
  auto it = index.find(square_key(gen, top, bottom));
  return it == index.end() ? nullptr : &fillers[it->second];
}

std::vector<std::vector<std::vector<Element>>> LiftingTable::signature() const {
  std::vector<std::vector<std::vector<Element>>> out;
  out.reserve(fillers.size());
  for (const auto& f : fillers) out.push_back(f.components());
  return out;
}

LiftingTable make_table(const ArrowObj& g, std::vector<std::size_t> generator,
                        std::vector<Square> squares, std::vector<PresheafMap> fillers) {
  std::map<SquareKey, std::size_t> index;
  for (std::size_t x = 0; x < squares.size(); ++x) {
    index.emplace(square_key(generator[x], squares[x].top, squares[x].bottom), x);
  }
  return LiftingTable{g, std::move(generator), std::move(squares), std::move(fillers), std::move(index)};
}

ValidationReport verify_algebra(const AlgebraStructure& a) {
  ValidationReport report;
  const auto& step = *a.onestep;
  if (!(compose_maps(a.p, step.lambda).components() == identity_map(a.target.dom()).components())) {
    report.violations.push_back("p o lambda' != id");
  }
  if (!(compose_maps(a.target.f, a.p).components() == step.rho.components())) {
    report.violations.push_back("g o p != rho'");
  }
  return report;
}

ValidationReport verify_table(const LiftingTable& t, const GeneratingSet& gens) {
  ValidationReport report;
  std::size_t expected = 0;
  for (const auto& j : gens.members) expected += enumerate_squares(j, t.target).size();
  if (expected != t.size()) {
    report.violations.push_back("table has " + std::to_string(t.size()) + " entries for " +
                                std::to_string(expected) + " squares");
  }
  for (std::size_t x = 0; x < t.size(); ++x) {
    const Square& s = t.squares[x];
    const PresheafMap& d = t.fillers[x];
    if (!(compose_maps(d, s.source.f).components() == s.top.components())) {
      report.violations.push_back("entry " + std::to_string(x) + ": filler o j != h");
    }
    if (!(compose_maps(t.target.f, d).components() == s.bottom.components())) {
      report.violations.push_back("entry " + std::to_string(x) + ": g o filler != k");
    }
  }
  return report;
}

AlgebraStructure extract_algebra(const SequenceState& st) {
  if (!st.converged_at) throw AbsentAlgebra("extract_algebra: the run did not converge");
  const std::size_t gamma = *st.converged_at;
  const Stage& s = st.stages[gamma];
  AlgebraStructure a{ArrowObj{s.rho, "rho"}, s.onestep,
                     compose_maps(inverse(st.connect(gamma, gamma + 1)), st.sigma(gamma))};
  if (!a.onestep) throw InternalConsistency("extract_algebra: converged stage has no one-step data");
  if (!verify_algebra(a).ok()) throw InternalConsistency("extract_algebra: algebra equations fail");
  return a;
}

LiftingTable fillers_from_algebra(const AlgebraStructure& a, const GeneratingSet& gens) {
  std::shared_ptr<const OneStepFactorization> step = a.onestep;
  if (!step || !(step->input.f == a.target.f)) step = std::make_shared<const OneStepFactorization>(build_onestep(gens, a.target));
  std::vector<PresheafMap> fillers;
  fillers.reserve(step->cell_count());
  for (std::size_t x = 0; x < step->cell_count(); ++x) {
    fillers.push_back(compose_maps(a.p, compose_maps(step->xi, step->codomain_sum.legs[x])));
  }
  return make_table(a.target, step->generator, step->squares, std::move(fillers));
}

std::vector<PresheafMap> filler_set(const Square& s) {
  const FinCategory& c = s.top.base();
  std::vector<std::vector<std::optional<Element>>> pinned(c.object_count());
  for (ObjectIndex o = 0; o < c.object_count(); ++o) {
    pinned[o].resize(s.source.cod().size(o));
    for (Element a = 0; a < s.source.dom().size(o); ++a) {
      auto& slot = pinned[o][s.source.f(o, a)];
      if (slot && *slot != s.top(o, a)) return {};
      slot = s.top(o, a);
    }
  }
  const ValueFilter filter = [&](ObjectIndex o, Element b, Element v) {
    if (pinned[o][b] && *pinned[o][b] != v) return false;
    return s.target.f(o, v) == s.bottom(o, b);
  };
  return enumerate_maps(s.source.cod(), s.target.dom(), filter);
}

std::vector<AlgebraStructure> enumerate_algebra_structures(const GeneratingSet& gens,
                                                           const ArrowObj& g, std::size_t limit) {
  auto step = std::make_shared<const OneStepFactorization>(build_onestep(gens, g));
  const FinCategory& c = g.f.base();
  std::vector<AlgebraStructure> out;
  // Elements of K' in the image of lambda' are pinned; p o lambda' = id has
  // no solution once lambda' identifies two elements.
  std::vector<std::vector<std::optional<Element>>> pinned(c.object_count());
  for (ObjectIndex o = 0; o < c.object_count(); ++o) {
    pinned[o].resize(step->K.size(o));
    for (Element e = 0; e < g.dom().size(o); ++e) {
      auto& slot = pinned[o][step->lambda(o, e)];
      if (slot) return out;
      slot = e;
    }
  }
  const ValueFilter filter = [&](ObjectIndex o, Element e, Element v) {
    if (pinned[o][e] && *pinned[o][e] != v) return false;
    return g.f(o, v) == step->rho(o, e);
  };
  if (limit == 0) return out;
  for_each_map(
      step->K, g.dom(),
      [&](const std::vector<std::vector<Element>>& comps) {
        out.push_back(AlgebraStructure{g, step, PresheafMap(step->K, g.dom(), comps)});
        return out.size() < limit;
      },
      filter);
  return out;
}

std::vector<LiftingTable> enumerate_lifting_tables(const GeneratingSet& gens, const ArrowObj& g,
                                                   std::size_t limit) {
  std::vector<std::size_t> generator;
  std::vector<Square> squares;
  for (std::size_t i = 0; i < gens.members.size(); ++i) {
    for (auto& s : enumerate_squares(gens.members[i], g)) {
      generator.push_back(i);
      squares.push_back(std::move(s));
    }
  }
  std::vector<std::vector<PresheafMap>> choices;
  choices.reserve(squares.size());
  for (const auto& s : squares) {
    choices.push_back(filler_set(s));
    if (choices.back().empty()) return {};
  }
  std::vector<LiftingTable> out;
  if (limit == 0) return out;
  std::vector<std::size_t> pick(squares.size(), 0);
  while (true) {
    std::vector<PresheafMap> fillers;
    fillers.reserve(squares.size());
    for (std::size_t x = 0; x < squares.size(); ++x) fillers.push_back(choices[x][pick[x]]);
    out.push_back(make_table(g, generator, squares, std::move(fillers)));
    if (out.size() >= limit) break;
    // Odometer, last square fastest.
    std::size_t x = squares.size();
    while (x > 0) {
      --x;
      if (++pick[x] < choices[x].size()) break;
      pick[x] = 0;
      if (x == 0) return out;
    }
    if (squares.empty()) break;
  }
  return out;
}

BijectionReport check_bijection(const GeneratingSet& gens, const ArrowObj& g) {
  BijectionReport report;
  const auto algebras = enumerate_algebra_structures(gens, g);
  const auto tables = enumerate_lifting_tables(gens, g);
  report.algebras = algebras.size();
  report.tables = tables.size();
  std::map<std::vector<std::vector<std::vector<Element>>>, std::size_t> table_index;
  for (std::size_t t = 0; t < tables.size(); ++t) table_index.emplace(tables[t].signature(), t);
  if (table_index.size() != tables.size()) {
    report.detail = "enumerated tables are not distinct";
    return report;
  }
  std::vector<char> hit(tables.size(), 0);
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    const LiftingTable t = fillers_from_algebra(algebras[i], gens);
    if (!verify_table(t, gens).ok()) {
      report.detail = "algebra " + std::to_string(i) + " yields fillers violating a triangle";
      return report;
    }
    auto it = table_index.find(t.signature());
    if (it == table_index.end()) {
      report.detail = "algebra " + std::to_string(i) + " yields a table outside the enumeration";
      return report;
    }
    if (hit[it->second]) {
      report.detail = "two algebras yield table " + std::to_string(it->second);
      return report;
    }
    hit[it->second] = 1;
    report.mapping.push_back(it->second);
  }
  if (algebras.size() != tables.size()) {
    report.detail = "some table is not reached by any algebra";
    return report;
  }
  report.holds = true;
  return report;
}

LiftingTable compose_lifting_tables(const LiftingTable& tf, const LiftingTable& tg,
                                    const GeneratingSet& gens) {
  const PresheafMap& f = tf.target.f;
  const PresheafMap& g = tg.target.f;
  if (!(f.target() == g.source())) {
    throw IncompatibleInputs("compose_lifting_tables: codomain of f is not the domain of g");
  }
  const ArrowObj gf{compose_maps(g, f), {}};
  std::vector<std::size_t> generator;
  std::vector<Square> squares;
  std::vector<PresheafMap> fillers;
  for (std::size_t i = 0; i < gens.members.size(); ++i) {
    for (auto& s : enumerate_squares(gens.members[i], gf)) {
      const PresheafMap* j = tg.find(i, compose_maps(f, s.top), s.bottom);
      if (!j) throw IncompatibleInputs("compose_lifting_tables: table on g lacks a square");
      const PresheafMap* filler = tf.find(i, s.top, *j);
      if (!filler) throw IncompatibleInputs("compose_lifting_tables: table on f lacks a square");
      generator.push_back(i);
      fillers.push_back(*filler);
      squares.push_back(std::move(s));
    }
  }
  return make_table(gf, std::move(generator), std::move(squares), std::move(fillers));
}

}  // namespace nwfs
