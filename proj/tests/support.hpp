#pragma once

// Oracles here avoid the library's enumerators and colimit code: they work
// from raw tables so that the tests compare two independent computations.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nwfs/catalog.hpp"
#include "nwfs/lifting.hpp"

namespace nwfs::testing {

inline Presheaf set(std::size_t n) { return Presheaf::finite_set(FinCategory::terminal(), n); }

inline PresheafMap set_map(std::size_t from, std::size_t to, std::vector<Element> values) {
  return PresheafMap(set(from), set(to), {std::move(values)});
}

inline ArrowObj set_arrow(std::size_t from, std::size_t to, std::vector<Element> values) {
  return ArrowObj{set_map(from, to, std::move(values)), {}};
}

inline GeneratingSet gens(const std::string& key) { return std::get<GeneratingSet>(catalog_get(key).payload); }

/// A uniformly random function; `to` must be positive unless `from` is 0.
inline PresheafMap random_set_map(std::mt19937_64& rng, std::size_t from, std::size_t to) {
  std::vector<Element> v(from);
  for (auto& x : v) x = std::uniform_int_distribution<std::size_t>(0, to - 1)(rng);
  return set_map(from, to, std::move(v));
}

/// |C|, |D| <= max with |C| = 0 whenever |D| = 0.
inline PresheafMap random_finite_map(std::mt19937_64& rng, std::size_t max) {
  const std::size_t d = std::uniform_int_distribution<std::size_t>(0, max)(rng);
  const std::size_t c = d == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, max)(rng);
  return random_set_map(rng, c, d);
}

/// Every function X(a) -> Y(a) at every object, filtered by naturality
/// checked equation by equation.
inline std::vector<std::vector<std::vector<Element>>> brute_force_maps(const Presheaf& x, const Presheaf& y) {
  const FinCategory& c = x.base();
  std::vector<std::pair<ObjectIndex, Element>> slots;
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    for (Element e = 0; e < x.size(a); ++e) slots.emplace_back(a, e);
  }
  for (const auto& [a, e] : slots) {
    if (y.size(a) == 0) return {};
  }
  std::vector<std::size_t> digit(slots.size(), 0);
  std::vector<std::vector<std::vector<Element>>> out;
  while (true) {
    std::vector<std::vector<Element>> comps(c.object_count());
    for (ObjectIndex a = 0; a < c.object_count(); ++a) comps[a].resize(x.size(a));
    for (std::size_t i = 0; i < slots.size(); ++i) comps[slots[i].first][slots[i].second] = digit[i];
    bool natural = true;
    for (MorphismIndex m = 0; m < c.morphism_count() && natural; ++m) {
      const auto& info = c.morphism(m);
      for (Element e = 0; e < x.size(info.cod) && natural; ++e) {
        natural = comps[info.dom][x.act(m, e)] == y.act(m, comps[info.cod][e]);
      }
    }
    if (natural) out.push_back(comps);
    // Odometer with the last slot fastest, so output is lexicographic.
    std::size_t i = slots.size();
    while (i > 0 && ++digit[i - 1] == y.size(slots[i - 1].first)) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

/// Equivalence classes on {0..n-1} generated by the pairs, by repeated
/// relabelling to the least member until nothing changes.
inline std::vector<std::size_t> closure_classes(std::size_t n, const std::vector<std::pair<Element, Element>>& pairs) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : pairs) {
      const std::size_t lo = std::min(label[a], label[b]);
      for (auto& l : label) {
        if ((l == label[a] || l == label[b]) && l != lo) {
          l = lo;
          changed = true;
        }
      }
    }
  }
  return label;
}

inline std::size_t distinct(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

inline bool same_map(const PresheafMap& a, const PresheafMap& b) {
  return a.source() == b.source() && a.target() == b.target() && a.components() == b.components();
}

/// Number of diagonals of a square, by brute force over every natural map.
inline std::size_t brute_filler_count(const Square& s) {
  std::size_t n = 0;
  for (const auto& d : brute_force_maps(s.source.cod(), s.target.dom())) {
    const PresheafMap m(s.source.cod(), s.target.dom(), d);
    if (same_map(compose_maps(m, s.source.f), s.top) && same_map(compose_maps(s.target.f, m), s.bottom)) ++n;
  }
  return n;
}

/// All squares j -> g by brute force over pairs of natural maps.
inline std::size_t brute_square_count(const ArrowObj& j, const ArrowObj& g) {
  std::size_t n = 0;
  const auto hs = brute_force_maps(j.dom(), g.dom());
  const auto ks = brute_force_maps(j.cod(), g.cod());
  for (const auto& h : hs) {
    for (const auto& k : ks) {
      const PresheafMap hm(j.dom(), g.dom(), h), km(j.cod(), g.cod(), k);
      if (compose_maps(g.f, hm).components() == compose_maps(km, j.f).components()) ++n;
    }
  }
  return n;
}

inline ArrowObj random_surjection(std::mt19937_64& rng, std::size_t from, std::size_t to) {
  std::vector<Element> v(from);
  for (Element x = 0; x < from; ++x) v[x] = x < to ? x : rng() % to;
  std::shuffle(v.begin(), v.end(), rng);
  return set_arrow(from, to, v);
}

/// A lifting table against {empty -> 1} with a random filler per square;
/// `g` must be surjective.
inline LiftingTable random_point_table(std::mt19937_64& rng, const ArrowObj& g) {
  const GeneratingSet point = gens("point");
  std::vector<std::size_t> gen;
  std::vector<Square> squares;
  std::vector<PresheafMap> fillers;
  for (auto& s : enumerate_squares(point.members[0], g)) {
    const auto choices = filler_set(s);
    fillers.push_back(choices[rng() % choices.size()]);
    gen.push_back(0);
    squares.push_back(std::move(s));
  }
  return make_table(g, gen, squares, fillers);
}

struct Instance {
  std::string name;
  GeneratingSet gens;
  ArrowObj g;
};

inline std::size_t total_carrier(const Instance& i) { return i.g.dom().total_size() + i.g.cod().total_size(); }

/// Every map between sets of size <= 3 under point and codiagonal, and the
/// small presheaf instances on delta≤1.
inline std::vector<Instance> corpus() {
  std::vector<Instance> out;
  for (const std::string key : {"point", "codiagonal"}) {
    const GeneratingSet j = gens(key);
    for (std::size_t c = 0; c <= 3; ++c) {
      for (std::size_t d = 0; d <= 3; ++d) {
        for (const auto& m : enumerate_maps(set(c), set(d))) {
          std::string name = key + ":" + std::to_string(c) + "->" + std::to_string(d) + "[";
          for (Element v : m.component(0)) name += std::to_string(v);
          out.push_back({name + "]", j, ArrowObj{m, {}}});
        }
      }
    }
  }
  const GeneratingSet horns = gens("horns≤1");
  const FinCategory& delta = horns.base;
  const Presheaf pt = Presheaf::terminal(delta);
  const Presheaf d1 = representable(delta, 1);
  out.push_back({"horns:Delta[1]->1", horns, ArrowObj{terminal_map(d1), {}}});
  out.push_back({"horns:1->1", horns, ArrowObj{identity_map(pt), {}}});
  out.push_back({"horns:empty->1", horns, ArrowObj{initial_map(pt), {}}});
  out.push_back({"horns:Lambda0->Delta[1]", horns, horns.members[0]});
  out.push_back({"horns:Lambda1->Delta[1]", horns, horns.members[1]});
  for (const auto& d : enumerate_maps(d1, d1)) {
    out.push_back({"horns:Delta[1]-endo", horns, ArrowObj{d, {}}});
  }
  const Presheaf two = reflexive_graph(2, {});
  out.push_back({"horns:2pts->1", horns, ArrowObj{terminal_map(two), {}}});
  out.push_back({"horns:2pts->Delta[1]", horns, ArrowObj{enumerate_maps(two, d1).at(1), {}}});
  return out;
}

}  // namespace nwfs::testing
