#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nwfs/arrow.hpp"

namespace nwfs {

/// f = rho o lambda through K = lambda.target().
struct Factorization {
  PresheafMap lambda;
  PresheafMap rho;

  const Presheaf& K() const { return lambda.target(); }
};

/// A functorial factorisation given as code, so that it can be evaluated at
/// derived arrows (rho_f, lambda_f, composites). `sigma` and `pi` are the
/// middle components of the comonad comultiplication Kf -> K(lambda_f) and
/// the monad multiplication K(rho_f) -> Kf; either may be empty.
struct FactorizationRule {
  std::string name;
  std::function<Factorization(const PresheafMap&)> factor;
  std::function<PresheafMap(const Square&)> on_square;
  std::function<PresheafMap(const PresheafMap&)> sigma;
  std::function<PresheafMap(const PresheafMap&)> pi;

  /// K(top, bottom): Kf -> Kg for the square (top, bottom): f -> g.
  PresheafMap K(const PresheafMap& f, const PresheafMap& g, const PresheafMap& top,
                const PresheafMap& bottom) const;
};

Factorization evaluate_rule(const FactorizationRule& rule, const PresheafMap& f);

/// X -> X x Y -> Y via <id, f> and the second projection.
FactorizationRule graph_rule();
/// X -> X + Y -> Y via the first injection and [f, id].
FactorizationRule cograph_rule();
/// The unit I of the first product: X -> X -> Y via (id, f).
FactorizationRule trivial_left_rule();
/// The unit of the second product: X -> Y -> Y via (f, id).
FactorizationRule trivial_right_rule();

/// Looks up "graph", "cograph", "trivial-left", "trivial-right"; throws
/// NotFound otherwise.
FactorizationRule rule_by_name(const std::string& name);
std::vector<std::string> rule_names();

/// f |-> (lambda2(rho1 f) o lambda1 f, K2(rho1 f), rho2(rho1 f)).
FactorizationRule tensor_product(const FactorizationRule& f2, const FactorizationRule& f1);
/// f |-> (lambda2(lambda1 f), K2(lambda1 f), rho1 f o rho2(lambda1 f)).
FactorizationRule odot_product(const FactorizationRule& f2, const FactorizationRule& f1);

/// Middle components of a morphism of functorial factorisations.
using MiddleMap = std::function<PresheafMap(const PresheafMap&)>;

/// (a2 (x) a1)_f = K^{G2}(a1_f, id) o a2_{rho^{F1}_f}, for a1: F1 -> G1, a2: F2 -> G2.
MiddleMap tensor_morphism(const MiddleMap& a2, const MiddleMap& a1, const FactorizationRule& g2,
                          const FactorizationRule& f1, const FactorizationRule& g1);
/// (a2 (.) a1)_f = a2_{lambda^{G1}_f} o K^{F2}(id, a1_f).
MiddleMap odot_morphism(const MiddleMap& a2, const MiddleMap& a1, const FactorizationRule& f2,
                        const FactorizationRule& f1, const FactorizationRule& g1);

/// z_{A,B,C,D} at f: K^A(lambda^B(rho^{C.D}_f)) -> K^A(rho^C(lambda^{B(x)D}_f)).
PresheafMap interchange(const FactorizationRule& a, const FactorizationRule& b,
                        const FactorizationRule& c, const FactorizationRule& d, const PresheafMap& f);

/// Diagonal p o K(h, k) o s for a square (h, k): f -> g, a coalgebra
/// component s: Y -> Kf on f and an algebra component p: Kg -> C on g.
/// Throws PreconditionFailed naming the first failed structure equation.
PresheafMap canonical_lift(const FactorizationRule& rule, const PresheafMap& s, const PresheafMap& p,
                           const Square& sq);

/// Coalgebra component on g o f from s on f: X -> Y and t on g: Y -> Z:
/// pi_{gf} o K(K(1, g), 1) o K(s, 1) o t.
PresheafMap compose_coalgebras(const FactorizationRule& rule, const PresheafMap& f,
                               const PresheafMap& s, const PresheafMap& g, const PresheafMap& t);

/// s o f = lambda_f and rho_f o s = id; empty report when s is a coalgebra
/// component on f.
ValidationReport check_coalgebra(const FactorizationRule& rule, const PresheafMap& f,
                                 const PresheafMap& s);
/// p o lambda_g = id and g o p = rho_g.
ValidationReport check_algebra(const FactorizationRule& rule, const PresheafMap& g,
                               const PresheafMap& p);

}  // namespace nwfs
