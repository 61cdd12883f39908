#pragma once

#include <string>
#include <vector>

#include "nwfs/presheaf.hpp"

namespace nwfs {

/// An object of the arrow category: a presheaf map, optionally named.
struct ArrowObj {
  PresheafMap f;
  std::string label;

  const Presheaf& dom() const { return f.source(); }
  const Presheaf& cod() const { return f.target(); }
};

/// A morphism source -> target of the arrow category: g o top = bottom o f.
struct Square {
  ArrowObj source;
  ArrowObj target;
  PresheafMap top;
  PresheafMap bottom;
};

/// A finite discrete family of generating arrows over one base.
struct GeneratingSet {
  FinCategory base;
  std::vector<ArrowObj> members;
};

bool commutes(const Square& s);
ValidationReport validate(const Square& s);
ValidationReport validate(const GeneratingSet& gens);

Square identity_square(const ArrowObj& f);

/// All commuting squares j -> g, ordered by the enumeration order of the top
/// map h, then of the bottom map k.
std::vector<Square> enumerate_squares(const ArrowObj& j, const ArrowObj& g);

/// Paste s1: f -> g and s2: g -> e vertically into f -> e.
Square compose_squares(const Square& s2, const Square& s1);

}  // namespace nwfs
