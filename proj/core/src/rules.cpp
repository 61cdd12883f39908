#include "nwfs/rules.hpp"

#include "nwfs/colimit.hpp"
#include "nwfs/error.hpp"

namespace nwfs {

namespace {

ArrowObj arrow(const PresheafMap& f) { return ArrowObj{f, {}}; }

bool equal_maps(const PresheafMap& a, const PresheafMap& b) {
  return a.components() == b.components();
}

Cocone sum2(const Presheaf& x, const Presheaf& y) { return coproduct(x.base(), {x, y}); }

}  // namespace

PresheafMap FactorizationRule::K(const PresheafMap& f, const PresheafMap& g, const PresheafMap& top,
                                 const PresheafMap& bottom) const {
  return on_square(Square{arrow(f), arrow(g), top, bottom});
}

Factorization evaluate_rule(const FactorizationRule& rule, const PresheafMap& f) {
  Factorization out = rule.factor(f);
  if (!(out.lambda.source() == f.source()) || !(out.rho.target() == f.target()) ||
      !equal_maps(compose_maps(out.rho, out.lambda), f)) {
    throw InternalConsistency("rule " + rule.name + ": rho o lambda != f");
  }
  return out;
}

FactorizationRule graph_rule() {
  FactorizationRule r;
  r.name = "graph";
  r.factor = [](const PresheafMap& f) {
    const Product p = binary_product(f.source(), f.target());
    return Factorization{p.pair(identity_map(f.source()), f), p.second};
  };
  r.on_square = [](const Square& s) {
    const Product pf = binary_product(s.source.dom(), s.source.cod());
    const Product pg = binary_product(s.target.dom(), s.target.cod());
    return pg.pair(compose_maps(s.top, pf.first), compose_maps(s.bottom, pf.second));
  };
  // (x, y) |-> (x, (x, y))
  r.sigma = [](const PresheafMap& f) {
    const Product pf = binary_product(f.source(), f.target());
    const Product pl = binary_product(f.source(), pf.apex);
    return pl.pair(pf.first, identity_map(pf.apex));
  };
  // ((x, y'), y) |-> (x, y)
  r.pi = [](const PresheafMap& f) {
    const Product pf = binary_product(f.source(), f.target());
    const Product pr = binary_product(pf.apex, f.target());
    return pf.pair(compose_maps(pf.first, pr.first), pr.second);
  };
  return r;
}

FactorizationRule cograph_rule() {
  FactorizationRule r;
  r.name = "cograph";
  r.factor = [](const PresheafMap& f) {
    const Cocone s = sum2(f.source(), f.target());
    return Factorization{s.legs[0], s.factor({f, identity_map(f.target())})};
  };
  r.on_square = [](const Square& sq) {
    const Cocone sf = sum2(sq.source.dom(), sq.source.cod());
    const Cocone sg = sum2(sq.target.dom(), sq.target.cod());
    return sf.factor({compose_maps(sg.legs[0], sq.top), compose_maps(sg.legs[1], sq.bottom)});
  };
  // inl x |-> inl x, inr y |-> inr (inr y)
  r.sigma = [](const PresheafMap& f) {
    const Cocone sf = sum2(f.source(), f.target());
    const Cocone sl = sum2(f.source(), sf.apex);
    return sf.factor({sl.legs[0], compose_maps(sl.legs[1], sf.legs[1])});
  };
  // inl e |-> e, inr y |-> inr y
  r.pi = [](const PresheafMap& f) {
    const Cocone sf = sum2(f.source(), f.target());
    const Cocone sr = sum2(sf.apex, f.target());
    return sr.factor({identity_map(sf.apex), sf.legs[1]});
  };
  return r;
}

FactorizationRule trivial_left_rule() {
  FactorizationRule r;
  r.name = "trivial-left";
  r.factor = [](const PresheafMap& f) { return Factorization{identity_map(f.source()), f}; };
  r.on_square = [](const Square& s) { return s.top; };
  r.sigma = [](const PresheafMap& f) { return identity_map(f.source()); };
  r.pi = [](const PresheafMap& f) { return identity_map(f.source()); };
  return r;
}

FactorizationRule trivial_right_rule() {
  FactorizationRule r;
  r.name = "trivial-right";
  r.factor = [](const PresheafMap& f) { return Factorization{f, identity_map(f.target())}; };
  r.on_square = [](const Square& s) { return s.bottom; };
  r.sigma = [](const PresheafMap& f) { return identity_map(f.target()); };
  r.pi = [](const PresheafMap& f) { return identity_map(f.target()); };
  return r;
}

std::vector<std::string> rule_names() { return {"graph", "cograph", "trivial-left", "trivial-right"}; }

FactorizationRule rule_by_name(const std::string& name) {
  if (name == "graph") return graph_rule();
  if (name == "cograph") return cograph_rule();
  if (name == "trivial-left") return trivial_left_rule();
  if (name == "trivial-right") return trivial_right_rule();
  std::string known;
  for (const auto& n : rule_names()) known += (known.empty() ? "" : ", ") + n;
  throw NotFound("unknown rule '" + name + "'; known rules: " + known);
}

FactorizationRule tensor_product(const FactorizationRule& f2, const FactorizationRule& f1) {
  FactorizationRule r;
  r.name = "tensor(" + f2.name + "," + f1.name + ")";
  r.factor = [f2, f1](const PresheafMap& f) {
    const Factorization a = f1.factor(f);
    const Factorization b = f2.factor(a.rho);
    return Factorization{compose_maps(b.lambda, a.lambda), b.rho};
  };
  r.on_square = [f2, f1](const Square& s) {
    const PresheafMap rho_f = f1.factor(s.source.f).rho;
    const PresheafMap rho_g = f1.factor(s.target.f).rho;
    return f2.K(rho_f, rho_g, f1.on_square(s), s.bottom);
  };
  return r;
}

FactorizationRule odot_product(const FactorizationRule& f2, const FactorizationRule& f1) {
  FactorizationRule r;
  r.name = "odot(" + f2.name + "," + f1.name + ")";
  r.factor = [f2, f1](const PresheafMap& f) {
    const Factorization a = f1.factor(f);
    const Factorization b = f2.factor(a.lambda);
    return Factorization{b.lambda, compose_maps(a.rho, b.rho)};
  };
  r.on_square = [f2, f1](const Square& s) {
    const PresheafMap lambda_f = f1.factor(s.source.f).lambda;
    const PresheafMap lambda_g = f1.factor(s.target.f).lambda;
    return f2.K(lambda_f, lambda_g, s.top, f1.on_square(s));
  };
  return r;
}

MiddleMap tensor_morphism(const MiddleMap& a2, const MiddleMap& a1, const FactorizationRule& g2,
                          const FactorizationRule& f1, const FactorizationRule& g1) {
  return [=](const PresheafMap& f) {
    const PresheafMap rho_f = f1.factor(f).rho;
    const PresheafMap rho_g = g1.factor(f).rho;
    const PresheafMap reindex = g2.K(rho_f, rho_g, a1(f), identity_map(f.target()));
    return compose_maps(reindex, a2(rho_f));
  };
}

MiddleMap odot_morphism(const MiddleMap& a2, const MiddleMap& a1, const FactorizationRule& f2,
                        const FactorizationRule& f1, const FactorizationRule& g1) {
  return [=](const PresheafMap& f) {
    const PresheafMap lambda_f = f1.factor(f).lambda;
    const PresheafMap lambda_g = g1.factor(f).lambda;
    const PresheafMap reindex = f2.K(lambda_f, lambda_g, identity_map(f.source()), a1(f));
    return compose_maps(a2(lambda_g), reindex);
  };
}

PresheafMap interchange(const FactorizationRule& a, const FactorizationRule& b,
                        const FactorizationRule& c, const FactorizationRule& d, const PresheafMap& f) {
  const Factorization fd = d.factor(f);
  const Factorization fc = c.factor(fd.lambda);
  const PresheafMap rho_cd = compose_maps(fd.rho, fc.rho);
  const Factorization fb_cd = b.factor(rho_cd);
  const Factorization fb_d = b.factor(fd.rho);
  const PresheafMap lambda_bd = compose_maps(fb_d.lambda, fd.lambda);
  const Factorization fc_bd = c.factor(lambda_bd);
  // Both sides of this square equal lambda^B(rho^D f) o rho^C(lambda^D f).
  const PresheafMap top = c.K(fd.lambda, lambda_bd, identity_map(f.source()), fb_d.lambda);
  const PresheafMap bottom = b.K(rho_cd, fd.rho, fc.rho, identity_map(f.target()));
  return a.K(fb_cd.lambda, fc_bd.rho, top, bottom);
}

ValidationReport check_coalgebra(const FactorizationRule& rule, const PresheafMap& f,
                                 const PresheafMap& s) {
  ValidationReport report;
  const Factorization ff = rule.factor(f);
  if (!(s.source() == f.target()) || !(s.target() == ff.K())) {
    report.violations.push_back("coalgebra component is not a map Y -> Kf");
    return report;
  }
  if (!equal_maps(compose_maps(s, f), ff.lambda)) report.violations.push_back("s o f != lambda_f");
  if (!equal_maps(compose_maps(ff.rho, s), identity_map(f.target()))) {
    report.violations.push_back("rho_f o s != id");
  }
  return report;
}

ValidationReport check_algebra(const FactorizationRule& rule, const PresheafMap& g,
                               const PresheafMap& p) {
  ValidationReport report;
  const Factorization fg = rule.factor(g);
  if (!(p.source() == fg.K()) || !(p.target() == g.source())) {
    report.violations.push_back("algebra component is not a map Kg -> C");
    return report;
  }
  if (!equal_maps(compose_maps(p, fg.lambda), identity_map(g.source()))) {
    report.violations.push_back("p o lambda_g != id");
  }
  if (!equal_maps(compose_maps(g, p), fg.rho)) report.violations.push_back("g o p != rho_g");
  return report;
}

PresheafMap canonical_lift(const FactorizationRule& rule, const PresheafMap& s, const PresheafMap& p,
                           const Square& sq) {
  const ValidationReport square_report = validate(sq);
  if (!square_report.ok()) throw PreconditionFailed("canonical_lift: " + square_report.violations.front());
  const ValidationReport co = check_coalgebra(rule, sq.source.f, s);
  if (!co.ok()) throw PreconditionFailed("canonical_lift: " + co.violations.front());
  const ValidationReport al = check_algebra(rule, sq.target.f, p);
  if (!al.ok()) throw PreconditionFailed("canonical_lift: " + al.violations.front());
  const PresheafMap lift = compose_maps(p, compose_maps(rule.on_square(sq), s));
  if (!equal_maps(compose_maps(lift, sq.source.f), sq.top) ||
      !equal_maps(compose_maps(sq.target.f, lift), sq.bottom)) {
    throw InternalConsistency("canonical_lift: diagonal fails a triangle");
  }
  return lift;
}

PresheafMap compose_coalgebras(const FactorizationRule& rule, const PresheafMap& f,
                               const PresheafMap& s, const PresheafMap& g, const PresheafMap& t) {
  if (!(f.target() == g.source())) {
    throw PreconditionFailed("compose_coalgebras: codomain of f is not the domain of g");
  }
  if (!rule.pi) throw PreconditionFailed("compose_coalgebras: rule " + rule.name + " has no monad");
  const ValidationReport sr = check_coalgebra(rule, f, s);
  if (!sr.ok()) throw PreconditionFailed("compose_coalgebras: on f: " + sr.violations.front());
  const ValidationReport tr = check_coalgebra(rule, g, t);
  if (!tr.ok()) throw PreconditionFailed("compose_coalgebras: on g: " + tr.violations.front());

  const PresheafMap gf = compose_maps(g, f);
  const Factorization ff = rule.factor(f);
  const Factorization fgf = rule.factor(gf);
  const PresheafMap g_rho = compose_maps(g, ff.rho);
  const PresheafMap id_z = identity_map(g.target());
  const PresheafMap k_s = rule.K(g, g_rho, s, id_z);                                 // Kg -> K(g rho_f)
  const PresheafMap k_1g = rule.K(f, gf, identity_map(f.source()), g);               // Kf -> K(gf)
  const PresheafMap k_k = rule.K(g_rho, fgf.rho, k_1g, id_z);                        // -> K(rho_gf)
  const PresheafMap out = compose_maps(rule.pi(gf), compose_maps(k_k, compose_maps(k_s, t)));
  const ValidationReport check = check_coalgebra(rule, gf, out);
  if (!check.ok()) throw InternalConsistency("compose_coalgebras: " + check.violations.front());
  return out;
}

}  // namespace nwfs
