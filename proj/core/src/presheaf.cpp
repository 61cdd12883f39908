#include "nwfs/presheaf.hpp"

#include <numeric>
#include <sstream>

#include "nwfs/error.hpp"

namespace nwfs {

// ---------------------------------------------------------------------------
// Presheaf / PresheafMap

Presheaf::Presheaf() : Presheaf(FinCategory::terminal(), {0}, {{}}) {}

Presheaf::Presheaf(FinCategory base, std::vector<std::size_t> sizes,
                   std::vector<std::vector<Element>> actions)
    : data_(std::make_shared<const Data>(Data{std::move(base), std::move(sizes), std::move(actions)})) {}

Presheaf Presheaf::empty(const FinCategory& base) {
  std::vector<std::vector<Element>> actions(base.morphism_count());
  return Presheaf(base, std::vector<std::size_t>(base.object_count(), 0), std::move(actions));
}

Presheaf Presheaf::terminal(const FinCategory& base) {
  std::vector<std::vector<Element>> actions(base.morphism_count(), std::vector<Element>{0});
  return Presheaf(base, std::vector<std::size_t>(base.object_count(), 1), std::move(actions));
}

Presheaf Presheaf::finite_set(const FinCategory& base, std::size_t n) {
  if (base.object_count() != 1) {
    throw IncompatibleInputs("finite_set: base category must have exactly one object");
  }
  std::vector<Element> ident(n);
  std::iota(ident.begin(), ident.end(), Element{0});
  std::vector<std::vector<Element>> actions(base.morphism_count(), ident);
  return Presheaf(base, {n}, std::move(actions));
}

std::size_t Presheaf::total_size() const {
  return std::accumulate(data_->sizes.begin(), data_->sizes.end(), std::size_t{0});
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->sizes == b.data_->sizes && a.data_->actions == b.data_->actions &&
         a.data_->base == b.data_->base;
}

PresheafMap::PresheafMap() : PresheafMap(Presheaf(), Presheaf(), {{}}) {}

PresheafMap::PresheafMap(Presheaf source, Presheaf target,
                         std::vector<std::vector<Element>> components)
    : data_(std::make_shared<const Data>(
          Data{std::move(source), std::move(target), std::move(components)})) {}

bool operator==(const PresheafMap& a, const PresheafMap& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->components == b.data_->components && a.data_->source == b.data_->source &&
         a.data_->target == b.data_->target;
}

bool same_base(const Presheaf& a, const Presheaf& b) { return a.base() == b.base(); }

// ---------------------------------------------------------------------------
// validate

namespace {

std::string mor_name(const FinCategory& c, MorphismIndex m) {
  return m < c.morphism_count() ? c.morphism(m).id : "#" + std::to_string(m);
}

std::string obj_name(const FinCategory& c, ObjectIndex a) {
  return a < c.object_count() ? c.object_id(a) : "#" + std::to_string(a);
}

}  // namespace

ValidationReport validate(const FinCategory& c) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const std::size_t n_obj = c.object_count();
  const std::size_t n_mor = c.morphism_count();

  bool ranges_ok = true;
  for (MorphismIndex m = 0; m < n_mor; ++m) {
    const auto& info = c.morphism(m);
    if (info.dom >= n_obj || info.cod >= n_obj) {
      fail("morphism " + info.id + ": dom/cod refers to an unknown object");
      ranges_ok = false;
    }
  }
  if (c.identities().size() != n_obj) {
    fail("identities: expected one entry per object");
    ranges_ok = false;
  }
  for (ObjectIndex a = 0; a < std::min(n_obj, c.identities().size()); ++a) {
    const MorphismIndex i = c.identities()[a];
    if (i >= n_mor) {
      fail("identity of " + obj_name(c, a) + " refers to an unknown morphism");
      ranges_ok = false;
    } else if (c.morphism(i).dom != a || c.morphism(i).cod != a) {
      fail("identity of " + obj_name(c, a) + " (" + mor_name(c, i) + ") is not an endomorphism of it");
      ranges_ok = false;
    }
  }
  if (!ranges_ok) return report;

  // Composition table: total on composable pairs with correct dom/cod.
  bool table_ok = true;
  for (MorphismIndex g = 0; g < n_mor; ++g) {
    for (MorphismIndex f = 0; f < n_mor; ++f) {
      if (c.morphism(f).cod != c.morphism(g).dom) continue;
      auto gf = c.compose_entry(g, f);
      if (!gf || *gf >= n_mor) {
        fail("compose(" + mor_name(c, g) + ", " + mor_name(c, f) + ") is missing");
        table_ok = false;
        continue;
      }
      if (c.morphism(*gf).dom != c.morphism(f).dom || c.morphism(*gf).cod != c.morphism(g).cod) {
        fail("compose(" + mor_name(c, g) + ", " + mor_name(c, f) + ") = " + mor_name(c, *gf) +
             " has wrong dom/cod");
        table_ok = false;
      }
    }
  }
  if (!table_ok) return report;

  for (MorphismIndex f = 0; f < n_mor; ++f) {
    const auto& info = c.morphism(f);
    const MorphismIndex id_cod = c.identity(info.cod);
    const MorphismIndex id_dom = c.identity(info.dom);
    if (c.compose(id_cod, f) != f) {
      fail("left unit: compose(" + mor_name(c, id_cod) + ", " + info.id + ") != " + info.id);
    }
    if (c.compose(f, id_dom) != f) {
      fail("right unit: compose(" + info.id + ", " + mor_name(c, id_dom) + ") != " + info.id);
    }
  }
  for (MorphismIndex f = 0; f < n_mor; ++f) {
    for (MorphismIndex g = 0; g < n_mor; ++g) {
      if (c.morphism(f).cod != c.morphism(g).dom) continue;
      const MorphismIndex gf = c.compose(g, f);
      for (MorphismIndex h = 0; h < n_mor; ++h) {
        if (c.morphism(g).cod != c.morphism(h).dom) continue;
        const MorphismIndex lhs = c.compose(c.compose(h, g), f);
        const MorphismIndex rhs = c.compose(h, gf);
        if (lhs != rhs) {
          fail("associativity: (" + mor_name(c, h) + " o " + mor_name(c, g) + ") o " +
               mor_name(c, f) + " = " + mor_name(c, lhs) + " but " + mor_name(c, h) + " o (" +
               mor_name(c, g) + " o " + mor_name(c, f) + ") = " + mor_name(c, rhs));
        }
      }
    }
  }
  return report;
}

ValidationReport validate(const Presheaf& x) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const FinCategory& c = x.base();
  const ValidationReport base_report = validate(c);
  if (!base_report.ok()) {
    for (const auto& v : base_report.violations) fail("base category: " + v);
    return report;
  }
  if (x.sizes().size() != c.object_count()) {
    fail("carrier: expected one set per object");
    return report;
  }
  if (x.actions().size() != c.morphism_count()) {
    fail("action: expected one function per morphism");
    return report;
  }
  bool shape_ok = true;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const auto& info = c.morphism(m);
    const auto& act = x.action(m);
    if (act.size() != x.size(info.cod)) {
      fail("action(" + info.id + ") is not defined on all of X(" + c.object_id(info.cod) + ")");
      shape_ok = false;
      continue;
    }
    for (Element y = 0; y < act.size(); ++y) {
      if (act[y] >= x.size(info.dom)) {
        fail("action(" + info.id + ")(" + std::to_string(y) + ") = " + std::to_string(act[y]) +
             " is not an element of X(" + c.object_id(info.dom) + ")");
        shape_ok = false;
      }
    }
  }
  if (!shape_ok) return report;

  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    const MorphismIndex id = c.identity(a);
    for (Element e = 0; e < x.size(a); ++e) {
      if (x.act(id, e) != e) {
        fail("identity: action(" + c.morphism(id).id + ")(" + std::to_string(e) + ") = " +
             std::to_string(x.act(id, e)));
      }
    }
  }
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    for (MorphismIndex g = 0; g < c.morphism_count(); ++g) {
      if (c.morphism(f).cod != c.morphism(g).dom) continue;
      const MorphismIndex gf = c.compose(g, f);
      const ObjectIndex top = c.morphism(g).cod;
      for (Element z = 0; z < x.size(top); ++z) {
        const Element lhs = x.act(gf, z);
        const Element rhs = x.act(f, x.act(g, z));
        if (lhs != rhs) {
          fail("functoriality: action(" + c.morphism(gf).id + ")(" + std::to_string(z) + ") = " +
               std::to_string(lhs) + " but action(" + c.morphism(f).id + ") o action(" +
               c.morphism(g).id + ") gives " + std::to_string(rhs) + "  [composite " +
               c.morphism(g).id + " o " + c.morphism(f).id + "]");
        }
      }
    }
  }
  return report;
}

ValidationReport validate(const PresheafMap& map) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  for (const auto& v : validate(map.source()).violations) fail("source: " + v);
  for (const auto& v : validate(map.target()).violations) fail("target: " + v);
  if (!report.ok()) return report;
  if (!same_base(map.source(), map.target())) {
    fail("source and target live over different base categories");
    return report;
  }
  const FinCategory& c = map.base();
  if (map.components().size() != c.object_count()) {
    fail("components: expected one function per object");
    return report;
  }
  bool shape_ok = true;
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    const auto& comp = map.component(a);
    if (comp.size() != map.source().size(a)) {
      fail("component at " + c.object_id(a) + " is not defined on the whole source carrier");
      shape_ok = false;
      continue;
    }
    for (Element x = 0; x < comp.size(); ++x) {
      if (comp[x] >= map.target().size(a)) {
        fail("component at " + c.object_id(a) + " sends " + std::to_string(x) +
             " outside the target carrier");
        shape_ok = false;
      }
    }
  }
  if (!shape_ok) return report;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const auto& info = c.morphism(m);
    for (Element y = 0; y < map.source().size(info.cod); ++y) {
      const Element lhs = map(info.dom, map.source().act(m, y));
      const Element rhs = map.target().act(m, map(info.cod, y));
      if (lhs != rhs) {
        fail("naturality at " + info.id + ", element " + std::to_string(y) + " of " +
             c.object_id(info.cod) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

// Backtracking enumerator over all natural transformations X => Y. Variables
// are the elements of X in (object, element) order; each naturality
// equation is checked as soon as its later variable is assigned, and is used
// to force or restrict that variable's candidates.
class MapEnumerator {
 public:
  MapEnumerator(const Presheaf& x, const Presheaf& y, const ValueFilter& allowed)
      : x_(x), y_(y), allowed_(allowed) {
    const FinCategory& c = x.base();
    offset_.resize(c.object_count() + 1, 0);
    for (ObjectIndex a = 0; a < c.object_count(); ++a) offset_[a + 1] = offset_[a] + x.size(a);
    const std::size_t n = offset_.back();
    var_object_.resize(n);
    for (ObjectIndex a = 0; a < c.object_count(); ++a) {
      for (std::size_t v = offset_[a]; v < offset_[a + 1]; ++v) var_object_[v] = a;
    }
    forced_.resize(n);
    filtered_.resize(n);
    self_.resize(n);
    for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
      const auto& info = c.morphism(m);
      for (Element e = 0; e < x.size(info.cod); ++e) {
        const std::size_t b_var = offset_[info.cod] + e;
        const std::size_t a_var = offset_[info.dom] + x.act(m, e);
        // Equation: val[a_var] == Y(m)(val[b_var]).
        if (a_var == b_var) {
          self_[a_var].push_back(m);
        } else if (a_var > b_var) {
          forced_[a_var].push_back({b_var, m});
        } else {
          filtered_[b_var].push_back({a_var, m});
        }
      }
    }
    preimage_.resize(c.morphism_count());
    for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
      const auto& info = c.morphism(m);
      preimage_[m].resize(y.size(info.dom));
      for (Element e = 0; e < y.size(info.cod); ++e) preimage_[m][y.act(m, e)].push_back(e);
    }
    value_.assign(n, 0);
  }

  void run(const std::function<bool(const std::vector<std::vector<Element>>&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    recurse(0);
  }

 private:
  struct Link {
    std::size_t other;
    MorphismIndex m;
  };

  bool consistent(std::size_t v, Element val) const {
    const ObjectIndex a = var_object_[v];
    if (allowed_ && !allowed_(a, v - offset_[a], val)) return false;
    for (const auto& link : forced_[v]) {
      if (val != y_.act(link.m, value_[link.other])) return false;
    }
    for (const auto& link : filtered_[v]) {
      if (y_.act(link.m, val) != value_[link.other]) return false;
    }
    for (MorphismIndex m : self_[v]) {
      if (y_.act(m, val) != val) return false;
    }
    return true;
  }

  void emit() {
    const FinCategory& c = x_.base();
    std::vector<std::vector<Element>> comps(c.object_count());
    for (ObjectIndex a = 0; a < c.object_count(); ++a) {
      comps[a].assign(value_.begin() + static_cast<std::ptrdiff_t>(offset_[a]),
                      value_.begin() + static_cast<std::ptrdiff_t>(offset_[a + 1]));
    }
    if (!(*visit_)(comps)) stop_ = true;
  }

  void recurse(std::size_t v) {
    if (stop_) return;
    if (v == value_.size()) {
      emit();
      return;
    }
    const ObjectIndex a = var_object_[v];
    auto attempt = [&](Element val) {
      if (stop_ || !consistent(v, val)) return;
      value_[v] = val;
      recurse(v + 1);
    };
    if (!forced_[v].empty()) {
      const auto& link = forced_[v].front();
      attempt(y_.act(link.m, value_[link.other]));
    } else if (!filtered_[v].empty()) {
      const auto& link = filtered_[v].front();
      for (Element val : preimage_[link.m][value_[link.other]]) attempt(val);
    } else {
      for (Element val = 0; val < y_.size(a); ++val) attempt(val);
    }
  }

  const Presheaf& x_;
  const Presheaf& y_;
  const ValueFilter& allowed_;
  std::vector<std::size_t> offset_;
  std::vector<ObjectIndex> var_object_;
  std::vector<std::vector<Link>> forced_;
  std::vector<std::vector<Link>> filtered_;
  std::vector<std::vector<MorphismIndex>> self_;
  std::vector<std::vector<std::vector<Element>>> preimage_;
  std::vector<Element> value_;
  const std::function<bool(const std::vector<std::vector<Element>>&)>* visit_ = nullptr;
  bool stop_ = false;
};

void require_same_base(const Presheaf& a, const Presheaf& b, const char* what) {
  if (!same_base(a, b)) throw IncompatibleInputs(std::string(what) + ": presheaves have different base categories");
}

}  // namespace

void for_each_map(const Presheaf& source, const Presheaf& target,
                  const std::function<bool(const std::vector<std::vector<Element>>&)>& visit,
                  const ValueFilter& allowed) {
  require_same_base(source, target, "enumerate_maps");
  MapEnumerator enumerator(source, target, allowed);
  enumerator.run(visit);
}

std::vector<PresheafMap> enumerate_maps(const Presheaf& source, const Presheaf& target,
                                        const ValueFilter& allowed, std::size_t limit) {
  std::vector<PresheafMap> out;
  if (limit == 0) return out;
  for_each_map(
      source, target,
      [&](const std::vector<std::vector<Element>>& comps) {
        out.emplace_back(source, target, comps);
        return out.size() < limit;
      },
      allowed);
  return out;
}

std::size_t count_maps(const Presheaf& source, const Presheaf& target, const ValueFilter& allowed) {
  std::size_t n = 0;
  for_each_map(
      source, target,
      [&](const std::vector<std::vector<Element>>&) {
        ++n;
        return true;
      },
      allowed);
  return n;
}

// ---------------------------------------------------------------------------
// categorical structure

PresheafMap compose_maps(const PresheafMap& g, const PresheafMap& f) {
  if (!(f.target() == g.source())) {
    throw IncompatibleInputs("compose_maps: target of the first map is not the source of the second");
  }
  const std::size_t n_obj = f.base().object_count();
  std::vector<std::vector<Element>> comps(n_obj);
  for (ObjectIndex a = 0; a < n_obj; ++a) {
    const auto& fa = f.component(a);
    const auto& ga = g.component(a);
    comps[a].resize(fa.size());
    for (Element x = 0; x < fa.size(); ++x) comps[a][x] = ga[fa[x]];
  }
  return PresheafMap(f.source(), g.target(), std::move(comps));
}

PresheafMap identity_map(const Presheaf& x) {
  std::vector<std::vector<Element>> comps(x.base().object_count());
  for (ObjectIndex a = 0; a < comps.size(); ++a) {
    comps[a].resize(x.size(a));
    std::iota(comps[a].begin(), comps[a].end(), Element{0});
  }
  return PresheafMap(x, x, std::move(comps));
}

PresheafMap initial_map(const Presheaf& target) {
  return PresheafMap(Presheaf::empty(target.base()), target,
                     std::vector<std::vector<Element>>(target.base().object_count()));
}

PresheafMap terminal_map(const Presheaf& source) {
  std::vector<std::vector<Element>> comps(source.base().object_count());
  for (ObjectIndex a = 0; a < comps.size(); ++a) comps[a].assign(source.size(a), 0);
  return PresheafMap(source, Presheaf::terminal(source.base()), std::move(comps));
}

bool is_injective(const PresheafMap& f) {
  for (ObjectIndex a = 0; a < f.base().object_count(); ++a) {
    std::vector<char> seen(f.target().size(a), 0);
    for (Element v : f.component(a)) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_surjective(const PresheafMap& f) {
  for (ObjectIndex a = 0; a < f.base().object_count(); ++a) {
    std::vector<char> hit(f.target().size(a), 0);
    std::size_t count = 0;
    for (Element v : f.component(a)) {
      if (!hit[v]) {
        hit[v] = 1;
        ++count;
      }
    }
    if (count != f.target().size(a)) return false;
  }
  return true;
}

bool is_iso(const PresheafMap& f) {
  for (ObjectIndex a = 0; a < f.base().object_count(); ++a) {
    if (f.source().size(a) != f.target().size(a)) return false;
  }
  return is_injective(f);
}

PresheafMap inverse(const PresheafMap& f) {
  if (!is_iso(f)) throw PreconditionFailed("inverse: map is not a componentwise bijection");
  std::vector<std::vector<Element>> comps(f.base().object_count());
  for (ObjectIndex a = 0; a < comps.size(); ++a) {
    comps[a].resize(f.target().size(a));
    const auto& fa = f.component(a);
    for (Element x = 0; x < fa.size(); ++x) comps[a][fa[x]] = x;
  }
  return PresheafMap(f.target(), f.source(), std::move(comps));
}

// ---------------------------------------------------------------------------
// products

Element Product::pair_id(ObjectIndex a, Element x, Element y) const {
  return x * second.target().size(a) + y;
}

PresheafMap Product::pair(const PresheafMap& f, const PresheafMap& g) const {
  if (!(f.source() == g.source()) || !(f.target() == first.target()) ||
      !(g.target() == second.target())) {
    throw IncompatibleInputs("pair: maps do not form a cone over the product");
  }
  std::vector<std::vector<Element>> comps(f.base().object_count());
  for (ObjectIndex a = 0; a < comps.size(); ++a) {
    comps[a].resize(f.source().size(a));
    for (Element z = 0; z < comps[a].size(); ++z) comps[a][z] = pair_id(a, f(a, z), g(a, z));
  }
  return PresheafMap(f.source(), apex, std::move(comps));
}

Product binary_product(const Presheaf& x, const Presheaf& y) {
  require_same_base(x, y, "binary_product");
  const FinCategory& c = x.base();
  std::vector<std::size_t> sizes(c.object_count());
  for (ObjectIndex a = 0; a < sizes.size(); ++a) sizes[a] = x.size(a) * y.size(a);
  std::vector<std::vector<Element>> actions(c.morphism_count());
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const auto& info = c.morphism(m);
    const std::size_t ny_cod = y.size(info.cod);
    const std::size_t ny_dom = y.size(info.dom);
    actions[m].resize(sizes[info.cod]);
    for (Element p = 0; p < sizes[info.cod]; ++p) {
      const Element px = p / ny_cod;
      const Element py = p % ny_cod;
      actions[m][p] = x.act(m, px) * ny_dom + y.act(m, py);
    }
  }
  Presheaf apex(c, sizes, std::move(actions));
  std::vector<std::vector<Element>> first(c.object_count()), second(c.object_count());
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    first[a].resize(sizes[a]);
    second[a].resize(sizes[a]);
    for (Element p = 0; p < sizes[a]; ++p) {
      first[a][p] = p / y.size(a);
      second[a][p] = p % y.size(a);
    }
  }
  return Product{apex, PresheafMap(apex, x, std::move(first)), PresheafMap(apex, y, std::move(second))};
}

}  // namespace nwfs
