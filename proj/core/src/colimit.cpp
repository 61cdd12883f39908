#include "nwfs/colimit.hpp"

#include <optional>
#include <tuple>

#include "nwfs/error.hpp"

namespace nwfs {

std::string to_string(ColimitKind kind) {
  switch (kind) {
    case ColimitKind::Coproduct: return "coproduct";
    case ColimitKind::Coequalizer: return "coequalizer";
    case ColimitKind::Pushout: return "pushout";
    case ColimitKind::Chain: return "chain";
  }
  return "unknown";
}

namespace {

// Union-find whose root is always the smallest member.
class MinUnionFind {
 public:
  explicit MinUnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Merge {
  ObjectIndex object;
  Element a;
  Element b;
};

struct Quotient {
  Presheaf apex;
  PresheafMap q;
};

// Smallest action-closed equivalence on X containing the given pairs.
Quotient quotient(const Presheaf& x, const std::vector<Merge>& merges) {
  const FinCategory& c = x.base();
  std::vector<MinUnionFind> uf;
  uf.reserve(c.object_count());
  for (ObjectIndex a = 0; a < c.object_count(); ++a) uf.emplace_back(x.size(a));
  bool dirty = false;
  for (const auto& m : merges) dirty |= uf[m.object].unite(m.a, m.b);

  // If y ~ y' in X(b) then X(m)y ~ X(m)y' in X(a); comparing each element
  // with its root suffices.
  while (dirty) {
    dirty = false;
    for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
      const auto& info = c.morphism(m);
      const auto& act = x.action(m);
      for (Element y = 0; y < act.size(); ++y) {
        const Element r = uf[info.cod].find(y);
        if (r != y) dirty |= uf[info.dom].unite(act[y], act[r]);
      }
    }
  }

  std::vector<std::size_t> sizes(c.object_count(), 0);
  std::vector<std::vector<Element>> comps(c.object_count());
  std::vector<std::vector<Element>> reps(c.object_count());
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    comps[a].resize(x.size(a));
    for (Element e = 0; e < x.size(a); ++e) {
      const Element r = uf[a].find(e);
      if (r == e) {
        comps[a][e] = sizes[a]++;
        reps[a].push_back(e);
      } else {
        comps[a][e] = comps[a][r];
      }
    }
  }
  std::vector<std::vector<Element>> actions(c.morphism_count());
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const auto& info = c.morphism(m);
    actions[m].resize(sizes[info.cod]);
    for (Element k = 0; k < sizes[info.cod]; ++k) {
      actions[m][k] = comps[info.dom][x.act(m, reps[info.cod][k])];
    }
  }
  Presheaf apex(c, std::move(sizes), std::move(actions));
  return Quotient{apex, PresheafMap(x, apex, std::move(comps))};
}

void append_violation(ValidationReport& report, const std::string& prefix,
                      const ValidationReport& inner) {
  for (const auto& v : inner.violations) report.violations.push_back(prefix + v);
}

void check_equal(ValidationReport& report, const PresheafMap& lhs, const PresheafMap& rhs,
                 const std::string& what) {
  if (!(lhs.components() == rhs.components())) report.violations.push_back(what);
}

}  // namespace

PresheafMap Cocone::factor(const std::vector<PresheafMap>& maps) const {
  if (maps.size() != legs.size()) {
    throw IncompatibleInputs("factor: expected one map per leg");
  }
  if (maps.empty()) {
    // Only the empty coproduct has no legs; its apex is initial.
    throw IncompatibleInputs("factor: a cocone with no legs needs an explicit target");
  }
  const Presheaf& target = maps.front().target();
  const FinCategory& c = apex.base();
  std::vector<std::vector<std::optional<Element>>> value(c.object_count());
  for (ObjectIndex a = 0; a < c.object_count(); ++a) value[a].resize(apex.size(a));
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!(maps[i].source() == legs[i].source()) || !(maps[i].target() == target)) {
      throw IncompatibleInputs("factor: map " + std::to_string(i) + " does not match its leg");
    }
    for (ObjectIndex a = 0; a < c.object_count(); ++a) {
      for (Element e = 0; e < legs[i].source().size(a); ++e) {
        auto& slot = value[a][legs[i](a, e)];
        const Element v = maps[i](a, e);
        if (slot && *slot != v) {
          throw PreconditionFailed("factor: maps disagree on element " +
                                   std::to_string(legs[i](a, e)) + " of the apex at " +
                                   c.object_id(a) + ", so they do not form a cocone");
        }
        slot = v;
      }
    }
  }
  std::vector<std::vector<Element>> comps(c.object_count());
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    comps[a].resize(apex.size(a));
    for (Element e = 0; e < apex.size(a); ++e) {
      if (!value[a][e]) throw InternalConsistency("factor: legs are not jointly surjective");
      comps[a][e] = *value[a][e];
    }
  }
  return PresheafMap(apex, target, std::move(comps));
}

ValidationReport verify_cocone(const Cocone& cocone) {
  ValidationReport report;
  append_violation(report, "apex: ", validate(cocone.apex));
  for (std::size_t i = 0; i < cocone.legs.size(); ++i) {
    const std::string tag = "leg " + std::to_string(i) + ": ";
    append_violation(report, tag, validate(cocone.legs[i]));
    if (!(cocone.legs[i].target() == cocone.apex)) {
      report.violations.push_back(tag + "does not target the apex");
    }
  }
  if (!report.ok()) return report;
  const auto& p = cocone.provenance;
  const auto& legs = cocone.legs;
  switch (p.kind) {
    case ColimitKind::Coproduct:
      if (legs.size() != p.objects.size()) report.violations.push_back("coproduct: leg count");
      break;
    case ColimitKind::Coequalizer:
      if (legs.size() != 1 || p.arrows.size() != 2) {
        report.violations.push_back("coequalizer: expected one leg and a parallel pair");
      } else {
        check_equal(report, compose_maps(legs[0], p.arrows[0]), compose_maps(legs[0], p.arrows[1]),
                    "coequalizer: q o f != q o g");
      }
      break;
    case ColimitKind::Pushout:
      if (legs.size() != 2 || p.arrows.size() != 2) {
        report.violations.push_back("pushout: expected two legs and a span");
      } else {
        check_equal(report, compose_maps(legs[0], p.arrows[0]), compose_maps(legs[1], p.arrows[1]),
                    "pushout: leg_B o f != leg_C o g");
      }
      break;
    case ColimitKind::Chain:
      if (legs.size() != p.arrows.size() + 1) {
        report.violations.push_back("chain: expected one leg per stage");
      } else {
        for (std::size_t i = 0; i < p.arrows.size(); ++i) {
          check_equal(report, compose_maps(legs[i + 1], p.arrows[i]), legs[i],
                      "chain: leg " + std::to_string(i + 1) + " o K(" + std::to_string(i) + "," +
                          std::to_string(i + 1) + ") != leg " + std::to_string(i));
        }
      }
      break;
  }
  return report;
}

Cocone coproduct(const FinCategory& base, const std::vector<Presheaf>& parts) {
  for (const auto& part : parts) {
    if (!(part.base() == base)) throw IncompatibleInputs("coproduct: summands over different bases");
  }
  const std::size_t n_obj = base.object_count();
  // offset[i][a]: first id of summand i at object a.
  std::vector<std::vector<std::size_t>> offset(parts.size(), std::vector<std::size_t>(n_obj, 0));
  std::vector<std::size_t> sizes(n_obj, 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (ObjectIndex a = 0; a < n_obj; ++a) {
      offset[i][a] = sizes[a];
      sizes[a] += parts[i].size(a);
    }
  }
  std::vector<std::vector<Element>> actions(base.morphism_count());
  for (MorphismIndex m = 0; m < base.morphism_count(); ++m) {
    const auto& info = base.morphism(m);
    actions[m].reserve(sizes[info.cod]);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Element e = 0; e < parts[i].size(info.cod); ++e) {
        actions[m].push_back(offset[i][info.dom] + parts[i].act(m, e));
      }
    }
  }
  Presheaf apex(base, sizes, std::move(actions));
  std::vector<PresheafMap> legs;
  legs.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<std::vector<Element>> comps(n_obj);
    for (ObjectIndex a = 0; a < n_obj; ++a) {
      comps[a].resize(parts[i].size(a));
      for (Element e = 0; e < comps[a].size(); ++e) comps[a][e] = offset[i][a] + e;
    }
    legs.emplace_back(parts[i], apex, std::move(comps));
  }
  return Cocone{apex, std::move(legs), Provenance{ColimitKind::Coproduct, parts, {}}};
}

Cocone coequalizer(const PresheafMap& f, const PresheafMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) {
    throw IncompatibleInputs("coequalizer: maps are not parallel");
  }
  std::vector<Merge> merges;
  for (ObjectIndex a = 0; a < f.base().object_count(); ++a) {
    for (Element e = 0; e < f.source().size(a); ++e) merges.push_back({a, f(a, e), g(a, e)});
  }
  auto qt = quotient(f.target(), merges);
  return Cocone{qt.apex, {qt.q}, Provenance{ColimitKind::Coequalizer, {f.target()}, {f, g}}};
}

Cocone pushout(const PresheafMap& f, const PresheafMap& g) {
  if (!(f.source() == g.source())) throw IncompatibleInputs("pushout: maps do not share a source");
  const Cocone sum = coproduct(f.base(), {f.target(), g.target()});
  const Cocone coeq = coequalizer(compose_maps(sum.legs[0], f), compose_maps(sum.legs[1], g));
  const PresheafMap& q = coeq.legs[0];
  return Cocone{coeq.apex,
                {compose_maps(q, sum.legs[0]), compose_maps(q, sum.legs[1])},
                Provenance{ColimitKind::Pushout, {f.source(), f.target(), g.target()}, {f, g}}};
}

Cocone chain_colimit(const Presheaf& first, const std::vector<PresheafMap>& maps) {
  std::vector<Presheaf> stages{first};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!(maps[i].source() == stages.back())) {
      throw IncompatibleInputs("chain_colimit: map " + std::to_string(i) +
                               " does not start at the previous stage");
    }
    stages.push_back(maps[i].target());
  }
  const Cocone sum = coproduct(first.base(), stages);
  std::vector<Merge> merges;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (ObjectIndex a = 0; a < first.base().object_count(); ++a) {
      for (Element e = 0; e < stages[i].size(a); ++e) {
        merges.push_back({a, sum.legs[i](a, e), sum.legs[i + 1](a, maps[i](a, e))});
      }
    }
  }
  auto qt = quotient(sum.apex, merges);
  std::vector<PresheafMap> legs;
  legs.reserve(stages.size());
  for (const auto& leg : sum.legs) legs.push_back(compose_maps(qt.q, leg));
  return Cocone{qt.apex, std::move(legs), Provenance{ColimitKind::Chain, stages, maps}};
}

}  // namespace nwfs
