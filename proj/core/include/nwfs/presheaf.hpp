#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nwfs/category.hpp"

namespace nwfs {

/// A finite presheaf (contravariant finite-set-valued functor) on a
/// FinCategory.
///
/// Elements of X(a) are the dense ids 0 .. size(a)-1. For a morphism m: a -> b
/// the action X(m): X(b) -> X(a) is stored as a lookup table indexed by the
/// element of X(b). Immutable; copies share storage.
class Presheaf {
 public:
  /// The empty set, as a presheaf on the terminal category.
  Presheaf();
  Presheaf(FinCategory base, std::vector<std::size_t> sizes,
           std::vector<std::vector<Element>> actions);

  /// Empty carrier everywhere (the initial presheaf).
  static Presheaf empty(const FinCategory& base);
  /// One element everywhere (the terminal presheaf).
  static Presheaf terminal(const FinCategory& base);
  /// A plain finite set, as a presheaf on a one-object category.
  static Presheaf finite_set(const FinCategory& base, std::size_t n);

  const FinCategory& base() const { return data_->base; }
  std::size_t size(ObjectIndex a) const { return data_->sizes.at(a); }
  const std::vector<std::size_t>& sizes() const { return data_->sizes; }
  std::size_t total_size() const;

  /// X(m)(x) for m: a -> b and x in X(b).
  Element act(MorphismIndex m, Element x) const { return data_->actions[m][x]; }
  const std::vector<Element>& action(MorphismIndex m) const { return data_->actions.at(m); }
  const std::vector<std::vector<Element>>& actions() const { return data_->actions; }

  const void* identity_token() const { return data_.get(); }

  /// Structural equality on ids (not up to isomorphism).
  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  struct Data {
    FinCategory base;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<Element>> actions;
  };
  std::shared_ptr<const Data> data_;
};

/// A natural transformation between presheaves on the same base.
class PresheafMap {
 public:
  /// Identity of the default (empty) presheaf.
  PresheafMap();
  PresheafMap(Presheaf source, Presheaf target, std::vector<std::vector<Element>> components);

  const Presheaf& source() const { return data_->source; }
  const Presheaf& target() const { return data_->target; }
  const FinCategory& base() const { return data_->source.base(); }

  const std::vector<Element>& component(ObjectIndex a) const { return data_->components.at(a); }
  const std::vector<std::vector<Element>>& components() const { return data_->components; }
  Element operator()(ObjectIndex a, Element x) const { return data_->components[a][x]; }

  friend bool operator==(const PresheafMap& a, const PresheafMap& b);

 private:
  struct Data {
    Presheaf source;
    Presheaf target;
    std::vector<std::vector<Element>> components;
  };
  std::shared_ptr<const Data> data_;
};

/// Outcome of validate(): every failed equation, with witnessing ids.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FinCategory& category);
ValidationReport validate(const Presheaf& presheaf);
ValidationReport validate(const PresheafMap& map);

bool same_base(const Presheaf& a, const Presheaf& b);

/// Per-element admissibility test (object, source element, candidate target
/// element) used to prune enumerations.
using ValueFilter = std::function<bool(ObjectIndex, Element, Element)>;

/// Visits every natural transformation X => Y in lexicographic order of the
/// assignment (object index, then source element, then target element).
/// The visitor returns false to stop early. Throws IncompatibleInputs when
/// the bases differ.
void for_each_map(const Presheaf& source, const Presheaf& target,
                  const std::function<bool(const std::vector<std::vector<Element>>&)>& visit,
                  const ValueFilter& allowed = {});

std::vector<PresheafMap> enumerate_maps(const Presheaf& source, const Presheaf& target,
                                        const ValueFilter& allowed = {},
                                        std::size_t limit = std::numeric_limits<std::size_t>::max());

std::size_t count_maps(const Presheaf& source, const Presheaf& target,
                       const ValueFilter& allowed = {});

/// g after f. Throws IncompatibleInputs unless f.target() == g.source().
PresheafMap compose_maps(const PresheafMap& g, const PresheafMap& f);
PresheafMap identity_map(const Presheaf& presheaf);
/// The unique map out of the empty presheaf.
PresheafMap initial_map(const Presheaf& target);
/// The unique map into the terminal presheaf on the same base.
PresheafMap terminal_map(const Presheaf& source);

bool is_iso(const PresheafMap& f);
bool is_injective(const PresheafMap& f);
bool is_surjective(const PresheafMap& f);

/// Inverse of a componentwise bijection; throws PreconditionFailed otherwise.
PresheafMap inverse(const PresheafMap& f);

/// Binary product, computed pointwise. Element (x, y) of X(a) x Y(a) has id
/// x * |Y(a)| + y.
struct Product {
  Presheaf apex;
  PresheafMap first;
  PresheafMap second;

  Element pair_id(ObjectIndex a, Element x, Element y) const;
  /// <f, g>: Z -> X x Y.
  PresheafMap pair(const PresheafMap& f, const PresheafMap& g) const;
};

Product binary_product(const Presheaf& x, const Presheaf& y);

}  // namespace nwfs
