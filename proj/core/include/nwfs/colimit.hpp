#pragma once

#include <string>
#include <vector>

#include "nwfs/presheaf.hpp"

namespace nwfs {

enum class ColimitKind { Coproduct, Coequalizer, Pushout, Chain };

std::string to_string(ColimitKind kind);

/// What a cocone is a colimit of.
///
/// Coproduct: `objects` are the summands, `arrows` empty.
/// Coequalizer: `arrows` = {f, g}.
/// Pushout: `arrows` = {f: A -> B, g: A -> C}; legs are {B -> P, C -> P}.
/// Chain: `objects` = {K_0 .. K_n}, `arrows` = {K_0 -> K_1, ..}.
///
/// Quotients pick the smallest element id of each class as its
/// representative and number classes densely in representative order.
struct Provenance {
  ColimitKind kind = ColimitKind::Coproduct;
  std::vector<Presheaf> objects;
  std::vector<PresheafMap> arrows;
};

struct Cocone {
  Presheaf apex;
  std::vector<PresheafMap> legs;
  Provenance provenance;

  /// The unique map u out of the apex with u o legs[i] = maps[i]. The legs
  /// of every cocone built here are jointly surjective, so u is read off
  /// elementwise; throws PreconditionFailed if the maps disagree on an
  /// identified pair (they do not form a cocone).
  PresheafMap factor(const std::vector<PresheafMap>& maps) const;
};

/// Checks every leg targets the apex, validates, and commutes with the
/// recorded diagram.
ValidationReport verify_cocone(const Cocone& cocone);

/// Tagged disjoint union; summand i occupies a contiguous block of ids at
/// each object, in summand order. `base` is needed for the empty coproduct.
Cocone coproduct(const FinCategory& base, const std::vector<Presheaf>& parts);

/// Quotient of the common target by the smallest action-closed equivalence
/// with f(x) ~ g(x). Single leg.
Cocone coequalizer(const PresheafMap& f, const PresheafMap& g);

/// Legs are {B -> P, C -> P} for f: A -> B, g: A -> C. Elements of B keep
/// the smaller ids.
Cocone pushout(const PresheafMap& f, const PresheafMap& g);

/// Colimit of K_0 -> K_1 -> ... -> K_n. With no maps, the apex is `first`
/// itself. One leg per stage.
Cocone chain_colimit(const Presheaf& first, const std::vector<PresheafMap>& maps);

}  // namespace nwfs
