#include "nwfs/onestep.hpp"

#include "nwfs/error.hpp"

namespace nwfs {

SquareKey square_key(std::size_t generator, const PresheafMap& top, const PresheafMap& bottom) {
  return SquareKey{generator, top.components(), bottom.components()};
}

std::optional<std::size_t> OneStepFactorization::find_cell(std::size_t gen, const PresheafMap& top,
                                                           const PresheafMap& bottom) const {
  auto it = index.find(square_key(gen, top, bottom));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

OneStepFactorization build_onestep(const GeneratingSet& gens, const ArrowObj& g) {
  const FinCategory& base = g.f.base();
  if (!(gens.base == base)) throw IncompatibleInputs("build_onestep: generators over a different base");

  std::vector<std::size_t> generator;
  std::vector<Square> squares;
  for (std::size_t i = 0; i < gens.members.size(); ++i) {
    for (auto& s : enumerate_squares(gens.members[i], g)) {
      generator.push_back(i);
      squares.push_back(std::move(s));
    }
  }

  std::vector<Presheaf> doms, cods;
  doms.reserve(squares.size());
  cods.reserve(squares.size());
  for (const auto& s : squares) {
    doms.push_back(s.source.dom());
    cods.push_back(s.source.cod());
  }
  Cocone domain_sum = coproduct(base, doms);
  Cocone codomain_sum = coproduct(base, cods);

  // Assemble [h_x], [k_x] and sum j_x componentwise from the blocks.
  const std::size_t n_obj = base.object_count();
  std::vector<std::vector<Element>> top(n_obj), bottom(n_obj), arrow(n_obj);
  for (ObjectIndex a = 0; a < n_obj; ++a) {
    top[a].resize(domain_sum.apex.size(a));
    arrow[a].resize(domain_sum.apex.size(a));
    bottom[a].resize(codomain_sum.apex.size(a));
  }
  for (std::size_t x = 0; x < squares.size(); ++x) {
    const Square& s = squares[x];
    for (ObjectIndex a = 0; a < n_obj; ++a) {
      for (Element e = 0; e < s.source.dom().size(a); ++e) {
        const Element at = domain_sum.legs[x](a, e);
        top[a][at] = s.top(a, e);
        arrow[a][at] = codomain_sum.legs[x](a, s.source.f(a, e));
      }
      for (Element e = 0; e < s.source.cod().size(a); ++e) {
        bottom[a][codomain_sum.legs[x](a, e)] = s.bottom(a, e);
      }
    }
  }
  PresheafMap counit_top(domain_sum.apex, g.dom(), std::move(top));
  PresheafMap counit_bottom(codomain_sum.apex, g.cod(), std::move(bottom));
  PresheafMap sum_arrow(domain_sum.apex, codomain_sum.apex, std::move(arrow));

  Cocone glue = pushout(counit_top, sum_arrow);
  PresheafMap rho = glue.factor({g.f, counit_bottom});

  std::map<SquareKey, std::size_t> index;
  for (std::size_t x = 0; x < squares.size(); ++x) {
    index.emplace(square_key(generator[x], squares[x].top, squares[x].bottom), x);
  }

  Presheaf K = glue.apex;
  PresheafMap lambda = glue.legs[0];
  PresheafMap xi = glue.legs[1];
  return OneStepFactorization{g,
                              std::move(generator),
                              std::move(squares),
                              std::move(domain_sum),
                              std::move(codomain_sum),
                              std::move(sum_arrow),
                              std::move(counit_top),
                              std::move(counit_bottom),
                              std::move(glue),
                              std::move(K),
                              std::move(lambda),
                              std::move(rho),
                              std::move(xi),
                              std::move(index)};
}

PresheafMap onestep_on_square(const OneStepFactorization& from, const OneStepFactorization& to,
                              const PresheafMap& top, const PresheafMap& bottom) {
  if (!(top.source() == from.input.dom()) || !(top.target() == to.input.dom()) ||
      !(bottom.source() == from.input.cod()) || !(bottom.target() == to.input.cod())) {
    throw IncompatibleInputs("onestep_on_square: square does not run between the two inputs");
  }
  const FinCategory& base = top.base();
  const std::size_t n_obj = base.object_count();
  // Cell x of `from` lands in cell y of `to`; build sum B_x -> K'g2.
  std::vector<std::vector<Element>> cells(n_obj);
  for (ObjectIndex a = 0; a < n_obj; ++a) cells[a].resize(from.codomain_sum.apex.size(a));
  for (std::size_t x = 0; x < from.cell_count(); ++x) {
    const Square& s = from.squares[x];
    const PresheafMap h = compose_maps(top, s.top);
    const PresheafMap k = compose_maps(bottom, s.bottom);
    const auto y = to.find_cell(from.generator[x], h, k);
    if (!y) {
      throw InternalConsistency("onestep_on_square: image of cell " + std::to_string(x) +
                                " is not a square of the target");
    }
    const PresheafMap& inj = to.codomain_sum.legs[*y];
    for (ObjectIndex a = 0; a < n_obj; ++a) {
      for (Element e = 0; e < s.source.cod().size(a); ++e) {
        cells[a][from.codomain_sum.legs[x](a, e)] = to.xi(a, inj(a, e));
      }
    }
  }
  PresheafMap on_cells(from.codomain_sum.apex, to.K, std::move(cells));
  return from.glue.factor({compose_maps(to.lambda, top), on_cells});
}

PresheafMap onestep_on_square(const GeneratingSet& gens, const Square& s) {
  const auto from = build_onestep(gens, s.source);
  const auto to = build_onestep(gens, s.target);
  return onestep_on_square(from, to, s.top, s.bottom);
}

ValidationReport verify_onestep(const OneStepFactorization& step) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  if (!(compose_maps(step.rho, step.lambda).components() == step.input.f.components())) {
    fail("rho' o lambda' != g");
  }
  if (!(compose_maps(step.rho, step.xi).components() == step.counit_bottom.components())) {
    fail("rho' o xi != [k_x]");
  }
  const Cocone again = pushout(step.counit_top, step.sum_arrow);
  if (!(again.apex == step.K) || !(again.legs[0] == step.lambda) || !(again.legs[1] == step.xi)) {
    fail("(lambda', xi) differs from the recomputed pushout");
  }
  for (const auto& v : verify_cocone(step.glue).violations) fail("pushout: " + v);
  for (std::size_t x = 0; x < step.cell_count(); ++x) {
    if (!commutes(step.squares[x])) fail("cell " + std::to_string(x) + " does not commute");
  }
  return report;
}

}  // namespace nwfs
