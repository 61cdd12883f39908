#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "nwfs/sequence.hpp"

namespace nwfs {

/// p: K'g -> C with p o lambda'_g = id_C and g o p = rho'_g.
struct AlgebraStructure {
  ArrowObj target;
  std::shared_ptr<const OneStepFactorization> onestep;  // of target
  PresheafMap p;
};

/// One filler per square from a generator into `target`.
struct LiftingTable {
  ArrowObj target;
  std::vector<std::size_t> generator;  // per entry
  std::vector<Square> squares;         // per entry
  std::vector<PresheafMap> fillers;    // per entry; B -> C
  std::map<SquareKey, std::size_t> index;

  std::size_t size() const { return fillers.size(); }
  /// Filler for the square (top, bottom) out of generator `gen`; nullptr if absent.
  const PresheafMap* find(std::size_t gen, const PresheafMap& top, const PresheafMap& bottom) const;
  /// Filler components in entry order, for comparing tables.
  std::vector<std::vector<std::vector<Element>>> signature() const;
};

ValidationReport verify_algebra(const AlgebraStructure& a);
/// Triangle identities for every entry, and one entry per square.
ValidationReport verify_table(const LiftingTable& t, const GeneratingSet& gens);

/// p = connect(gamma, gamma+1)^-1 o sigma_gamma, an algebra on rho_gamma.
/// Throws AbsentAlgebra unless the run converged.
AlgebraStructure extract_algebra(const SequenceState& state);

/// filler(x) = p o xi o inj_x.
LiftingTable fillers_from_algebra(const AlgebraStructure& a, const GeneratingSet& gens);

/// All diagonals B -> C of a square j -> g making both triangles commute.
std::vector<PresheafMap> filler_set(const Square& s);

std::vector<AlgebraStructure> enumerate_algebra_structures(
    const GeneratingSet& gens, const ArrowObj& g,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Cartesian product of the per-square filler sets, first square varying
/// slowest. Stops after `limit` tables.
std::vector<LiftingTable> enumerate_lifting_tables(
    const GeneratingSet& gens, const ArrowObj& g,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

struct BijectionReport {
  bool holds = false;
  std::size_t algebras = 0;
  std::size_t tables = 0;
  /// algebra index -> table index under fillers_from_algebra.
  std::vector<std::size_t> mapping;
  std::string detail;
};

BijectionReport check_bijection(const GeneratingSet& gens, const ArrowObj& g);

/// Table on g o f: phi(a, h, k) = tf(a, h, tg(a, f h, k)).
LiftingTable compose_lifting_tables(const LiftingTable& tf, const LiftingTable& tg,
                                    const GeneratingSet& gens);

/// A table on g from an arbitrary square-indexed filler choice.
LiftingTable make_table(const ArrowObj& g, std::vector<std::size_t> generator,
                        std::vector<Square> squares, std::vector<PresheafMap> fillers);

}  // namespace nwfs
