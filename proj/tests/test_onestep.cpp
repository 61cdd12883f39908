#include <gtest/gtest.h>

#include "nwfs/error.hpp"
#include "nwfs/onestep.hpp"
#include "support.hpp"

namespace nwfs {
namespace {

using testing::set;
using testing::set_arrow;
using testing::set_map;

const ArrowObj& bang() {
  static const ArrowObj a = testing::gens("point").members[0];
  return a;
}

const ArrowObj& nabla() {
  static const ArrowObj a = testing::gens("codiagonal").members[0];
  return a;
}

TEST(Squares, PointSquaresAreCodomainPoints) {
  for (std::size_t c = 0; c <= 3; ++c) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (const auto& g : enumerate_maps(set(c), set(d))) {
        EXPECT_EQ(enumerate_squares(bang(), ArrowObj{g, {}}).size(), d);
      }
    }
  }
}

TEST(Squares, CodiagonalSquaresAreKernelPairs) {
  EXPECT_EQ(enumerate_squares(nabla(), set_arrow(2, 1, {0, 0})).size(), 4u);
  for (std::size_t c = 0; c <= 3; ++c) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (const auto& g : enumerate_maps(set(c), set(d))) {
        std::size_t pairs = 0;
        for (Element x = 0; x < c; ++x) {
          for (Element y = 0; y < c; ++y) pairs += g(0, x) == g(0, y);
        }
        EXPECT_EQ(enumerate_squares(nabla(), ArrowObj{g, {}}).size(), pairs);
      }
    }
  }
}

TEST(Squares, EmptyTargetHasNone) {
  EXPECT_TRUE(enumerate_squares(bang(), ArrowObj{identity_map(set(0)), {}}).empty());
  EXPECT_TRUE(enumerate_squares(nabla(), ArrowObj{identity_map(set(0)), {}}).empty());
}

TEST(Squares, MatchBruteForceOnPresheaves) {
  const GeneratingSet horns = testing::gens("horns≤1");
  for (const auto& inst : testing::corpus()) {
    if (!(inst.gens.base == horns.base)) continue;
    for (const auto& j : inst.gens.members) {
      const auto squares = enumerate_squares(j, inst.g);
      EXPECT_EQ(squares.size(), testing::brute_square_count(j, inst.g)) << inst.name;
      for (const auto& s : squares) EXPECT_TRUE(commutes(s));
    }
  }
}

TEST(Squares, PasteAndIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ArrowObj f{testing::random_set_map(rng, rng() % 3, 1 + rng() % 3), {}};
    const ArrowObj g{testing::random_set_map(rng, rng() % 3, 1 + rng() % 3), {}};
    const ArrowObj e{testing::random_set_map(rng, 1 + rng() % 3, 1 + rng() % 3), {}};
    const auto s1 = enumerate_squares(f, g);
    const auto s2 = enumerate_squares(g, e);
    if (s1.empty() || s2.empty()) continue;
    const Square a = s1[rng() % s1.size()], b = s2[rng() % s2.size()];
    const Square ba = compose_squares(b, a);
    EXPECT_TRUE(commutes(ba));
    const Square same = compose_squares(identity_square(g), a);
    EXPECT_EQ(same.top, a.top);
    EXPECT_EQ(same.bottom, a.bottom);
  }
}

TEST(OneStep, PointGivesDisjointUnion) {
  const OneStepFactorization s = build_onestep(testing::gens("point"), set_arrow(2, 2, {0, 1}));
  EXPECT_EQ(s.K.size(0), 4u);
  EXPECT_EQ(s.lambda.component(0), (std::vector<Element>{0, 1}));
  EXPECT_EQ(s.rho.component(0), (std::vector<Element>{0, 1, 0, 1}));
  EXPECT_EQ(s.codomain_sum.apex.size(0), 2u);
  EXPECT_TRUE(verify_onestep(s).ok());
}

TEST(OneStep, CodomainSumMatchesSquareCount) {
  const OneStepFactorization s = build_onestep(testing::gens("point"), set_arrow(1, 3, {2}));
  EXPECT_EQ(s.codomain_sum.apex.size(0), 3u);
  EXPECT_EQ(s.cell_count(), enumerate_squares(bang(), s.input).size());
}

TEST(OneStep, CodiagonalOnInjectionIsIso) {
  for (std::size_t c = 0; c <= 3; ++c) {
    for (std::size_t d = c; d <= 4; ++d) {
      for (const auto& g : enumerate_maps(set(c), set(d))) {
        if (!is_injective(g)) continue;
        EXPECT_TRUE(is_iso(build_onestep(testing::gens("codiagonal"), ArrowObj{g, {}}).lambda));
      }
    }
  }
}

TEST(OneStep, CodiagonalQuotientsByKernel) {
  for (std::size_t c = 0; c <= 3; ++c) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (const auto& g : enumerate_maps(set(c), set(d))) {
        const OneStepFactorization s = build_onestep(testing::gens("codiagonal"), ArrowObj{g, {}});
        EXPECT_EQ(s.K.size(0), testing::distinct(g.component(0)));
        EXPECT_TRUE(is_injective(s.rho));
      }
    }
  }
}

TEST(OneStep, EmptyGeneratorsAreTrivial) {
  const GeneratingSet none{FinCategory::terminal(), {}};
  const ArrowObj g = set_arrow(3, 2, {0, 1, 1});
  const OneStepFactorization s = build_onestep(none, g);
  EXPECT_EQ(s.K, g.dom());
  EXPECT_EQ(s.lambda, identity_map(g.dom()));
  EXPECT_EQ(s.rho, g.f);
}

TEST(OneStep, InvariantsOnCorpus) {
  for (const auto& inst : testing::corpus()) {
    const OneStepFactorization s = build_onestep(inst.gens, inst.g);
    EXPECT_TRUE(verify_onestep(s).ok()) << inst.name;
    EXPECT_EQ(compose_maps(s.rho, s.lambda), inst.g.f) << inst.name;
    bool monos = true;
    for (const auto& j : inst.gens.members) monos = monos && is_injective(j.f);
    if (monos) {
      EXPECT_TRUE(is_injective(s.lambda)) << inst.name;
    }
  }
}

TEST(OneStep, UnitSquareOnEmptyToPoint) {
  const GeneratingSet point = testing::gens("point");
  const OneStepFactorization first = build_onestep(point, bang());
  const OneStepFactorization second = build_onestep(point, ArrowObj{first.rho, {}});
  ASSERT_EQ(first.K.size(0), 1u);
  ASSERT_EQ(second.K.size(0), 2u);
  const PresheafMap m = onestep_on_square(first, second, first.lambda, identity_map(bang().cod()));
  EXPECT_EQ(m.component(0), (std::vector<Element>{1}));
}

TEST(OneStep, IdentitySquareGivesIdentity) {
  for (const auto& inst : testing::corpus()) {
    const OneStepFactorization s = build_onestep(inst.gens, inst.g);
    EXPECT_EQ(onestep_on_square(s, s, identity_map(inst.g.dom()), identity_map(inst.g.cod())), identity_map(s.K))
        << inst.name;
  }
}

TEST(OneStep, FunctorialOnComposites) {
  std::mt19937_64 rng(23);
  for (const std::string key : {"point", "codiagonal"}) {
    const GeneratingSet j = testing::gens(key);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
      const ArrowObj f{testing::random_finite_map(rng, 3), {}};
      const ArrowObj g{testing::random_finite_map(rng, 3), {}};
      const ArrowObj e{testing::random_finite_map(rng, 3), {}};
      const auto s1 = enumerate_squares(f, g);
      const auto s2 = enumerate_squares(g, e);
      if (s1.empty() || s2.empty()) continue;
      const Square a = s1[rng() % s1.size()], b = s2[rng() % s2.size()];
      const PresheafMap lhs = onestep_on_square(j, compose_squares(b, a));
      const PresheafMap rhs = compose_maps(onestep_on_square(j, b), onestep_on_square(j, a));
      EXPECT_EQ(lhs, rhs);
      ++checked;
    }
    EXPECT_GT(checked, 20);
  }
}

TEST(OneStep, UnitIsNatural) {
  // K'(h, k) o lambda'_f = lambda'_g o h and rho'_g o K'(h, k) = k o rho'_f.
  std::mt19937_64 rng(29);
  for (const std::string key : {"point", "codiagonal"}) {
    const GeneratingSet j = testing::gens(key);
    for (int trial = 0; trial < 80; ++trial) {
      const ArrowObj f{testing::random_finite_map(rng, 3), {}};
      const ArrowObj g{testing::random_finite_map(rng, 3), {}};
      const auto squares = enumerate_squares(f, g);
      if (squares.empty()) continue;
      const Square s = squares[rng() % squares.size()];
      const OneStepFactorization sf = build_onestep(j, f), sg = build_onestep(j, g);
      const PresheafMap m = onestep_on_square(sf, sg, s.top, s.bottom);
      EXPECT_EQ(compose_maps(m, sf.lambda), compose_maps(sg.lambda, s.top));
      EXPECT_EQ(compose_maps(sg.rho, m), compose_maps(s.bottom, sf.rho));
    }
  }
}

}  // namespace
}  // namespace nwfs
