#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "nwfs/arrow.hpp"
#include "nwfs/colimit.hpp"

namespace nwfs {

/// (generator, top components, bottom components); identifies a square
/// independently of enumeration order.
using SquareKey = std::tuple<std::size_t, std::vector<std::vector<Element>>,
                             std::vector<std::vector<Element>>>;

SquareKey square_key(std::size_t generator, const PresheafMap& top, const PresheafMap& bottom);

/// One step of the factorisation at g: C -> D.
///
/// Cells are the squares x = (h_x, k_x): j_x -> g for every generator, in
/// generator order then enumeration order. K' is the pushout of
/// C <-[h_x]- sum A_x -(sum j_x)-> sum B_x; its elements are C's first,
/// then the cells' in cell order (up to identification).
struct OneStepFactorization {
  ArrowObj input;
  std::vector<std::size_t> generator;  // per cell
  std::vector<Square> squares;         // per cell
  Cocone domain_sum;                   // sum A_x
  Cocone codomain_sum;                 // sum B_x; legs are the cell injections
  PresheafMap sum_arrow;               // sum j_x
  PresheafMap counit_top;              // [h_x]
  PresheafMap counit_bottom;           // [k_x]
  Cocone glue;                         // legs {lambda, xi}
  Presheaf K;
  PresheafMap lambda;
  PresheafMap rho;
  PresheafMap xi;
  std::map<SquareKey, std::size_t> index;

  std::size_t cell_count() const { return squares.size(); }
  std::optional<std::size_t> find_cell(std::size_t generator, const PresheafMap& top,
                                       const PresheafMap& bottom) const;
};

OneStepFactorization build_onestep(const GeneratingSet& gens, const ArrowObj& g);

/// K'(u, v): K'g -> K'g2 for a square (u, v): g -> g2, given both one-step
/// factorisations. Sends C through u and the cell (h, k) to the cell
/// (u h, v k). Throws InternalConsistency if that cell is missing.
PresheafMap onestep_on_square(const OneStepFactorization& from, const OneStepFactorization& to,
                              const PresheafMap& top, const PresheafMap& bottom);

/// Convenience form that builds both factorisations.
PresheafMap onestep_on_square(const GeneratingSet& gens, const Square& s);

/// Re-checks rho' o lambda' = g, rho' o xi = [k_x], and that (lambda', xi)
/// agrees with a freshly computed pushout.
ValidationReport verify_onestep(const OneStepFactorization& step);

}  // namespace nwfs
