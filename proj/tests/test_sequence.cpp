#include <gtest/gtest.h>

#include "nwfs/error.hpp"
#include "nwfs/sequence.hpp"
#include "support.hpp"

namespace nwfs {
namespace {

using testing::set;
using testing::set_arrow;

const ArrowObj& bang() {
  static const ArrowObj a = testing::gens("point").members[0];
  return a;
}

std::vector<std::size_t> sizes(const SequenceState& st) {
  std::vector<std::size_t> out;
  for (const auto& row : st.cardinalities()) out.push_back(row[0]);
  return out;
}

TEST(Garner, EmptyGeneratorsConvergeAtZero) {
  const GeneratingSet none{FinCategory::terminal(), {}};
  const ArrowObj g = set_arrow(2, 3, {1, 1});
  const SequenceState st = run_garner(none, g);
  ASSERT_EQ(st.converged_at, 0u);
  EXPECT_EQ(st.stages[0].lambda, identity_map(g.dom()));
  EXPECT_EQ(st.stages[0].rho, g.f);
}

TEST(Garner, PointOnEmptyToOne) {
  const SequenceState st = run_garner(testing::gens("point"), bang());
  ASSERT_EQ(st.converged_at, 1u);
  ASSERT_EQ(st.stages.size(), 3u);
  EXPECT_EQ(st.stages[1].K.size(0), 1u);
  const auto& [p1, p2] = *st.stages[2].coequalized;
  EXPECT_EQ(p1.component(0), (std::vector<Element>{0}));
  EXPECT_EQ(p2.component(0), (std::vector<Element>{1}));
  EXPECT_EQ(st.stages[2].K.size(0), 1u);
  EXPECT_TRUE(is_iso(st.connect(1, 2)));
  EXPECT_TRUE(verify_sequence(st).ok());
}

TEST(Garner, CographOracleTwoToThree) {
  const ArrowObj g = set_arrow(2, 3, {2, 0});
  const SequenceState st = run_garner(testing::gens("point"), g);
  ASSERT_TRUE(st.converged());
  const Stage& s = st.stages[*st.converged_at];
  EXPECT_EQ(s.K.size(0), 5u);
  EXPECT_EQ(s.lambda.component(0), (std::vector<Element>{0, 1}));
  EXPECT_EQ(s.rho.component(0), (std::vector<Element>{2, 0, 0, 1, 2}));
}

TEST(Garner, CographOracleRandom) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const ArrowObj g{testing::random_finite_map(rng, 5), {}};
    const std::size_t c = g.dom().size(0), d = g.cod().size(0);
    const SequenceState st = run_garner(testing::gens("point"), g);
    ASSERT_TRUE(st.converged());
    EXPECT_LE(*st.converged_at, 2u);
    const Stage& s = st.stages[*st.converged_at];
    std::vector<Element> lambda(c), rho(c + d);
    std::iota(lambda.begin(), lambda.end(), 0);
    for (Element x = 0; x < c; ++x) rho[x] = g.f(0, x);
    for (Element y = 0; y < d; ++y) rho[c + y] = y;
    EXPECT_EQ(s.K.size(0), c + d);
    EXPECT_EQ(s.lambda.component(0), lambda);
    EXPECT_EQ(s.rho.component(0), rho);
    EXPECT_TRUE(verify_sequence(st).ok());
  }
}

TEST(Garner, CodiagonalGivesImageFactorisation) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const ArrowObj g{testing::random_finite_map(rng, 5), {}};
    const SequenceState st = run_garner(testing::gens("codiagonal"), g);
    ASSERT_TRUE(st.converged());
    const Stage& s = st.stages[*st.converged_at];
    EXPECT_EQ(s.K.size(0), testing::distinct(g.f.component(0)));
    EXPECT_TRUE(is_injective(s.rho));
    EXPECT_TRUE(is_surjective(s.lambda));
    for (Element x = 0; x < g.dom().size(0); ++x) {
      for (Element y = 0; y < g.dom().size(0); ++y) {
        EXPECT_EQ(s.lambda(0, x) == s.lambda(0, y), g.f(0, x) == g.f(0, y));
      }
    }
  }
}

TEST(Garner, ConvergenceIsAFixpoint) {
  for (const auto& inst : testing::corpus()) {
    if (testing::total_carrier(inst) > 8) continue;
    const SequenceState st = run_garner(inst.gens, inst.g, {4, 0}, {true});
    EXPECT_TRUE(verify_sequence(st).ok()) << inst.name;
    if (!st.converged()) continue;
    for (std::size_t i = *st.converged_at + 1; i < st.stages.size(); ++i) {
      EXPECT_TRUE(is_iso(*st.stages[i].connect_in)) << inst.name << " stage " << i;
    }
  }
}

TEST(Garner, FirstCoequalizerIsPinned) {
  for (const auto& inst : testing::corpus()) {
    const SequenceState st = run_garner(inst.gens, inst.g, {2, 0}, {true});
    ASSERT_GE(st.stages.size(), 3u);
    const OneStepFactorization first = build_onestep(inst.gens, inst.g);
    const OneStepFactorization second = build_onestep(inst.gens, ArrowObj{first.rho, {}});
    ASSERT_TRUE(st.stages[2].coequalized.has_value());
    const auto& [p1, p2] = *st.stages[2].coequalized;
    EXPECT_TRUE(testing::same_map(p1, second.lambda)) << inst.name;
    EXPECT_TRUE(testing::same_map(p2, onestep_on_square(first, second, first.lambda, identity_map(inst.g.cod()))))
        << inst.name;
  }
}

TEST(Quillen, CardinalitiesGrowLinearly) {
  const SequenceState st = run_quillen(testing::gens("point"), bang(), {6, 0});
  EXPECT_EQ(sizes(st), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_TRUE(st.exhausted());
  EXPECT_TRUE(verify_sequence(st).ok());
  const SequenceState two = run_quillen(testing::gens("point"), set_arrow(1, 2, {0}), {5, 0});
  for (std::size_t n = 0; n < two.stages.size(); ++n) EXPECT_EQ(sizes(two)[n], 1 + 2 * n);
}

TEST(Quillen, EmptyGeneratorsConverge) {
  const GeneratingSet none{FinCategory::terminal(), {}};
  EXPECT_EQ(run_quillen(none, set_arrow(1, 1, {0})).converged_at, 0u);
}

TEST(Quillen, NeverCoequalizes) {
  const SequenceState st = run_quillen(testing::gens("point"), set_arrow(2, 2, {0, 0}), {3, 1});
  for (const auto& s : st.stages) {
    EXPECT_FALSE(s.coequalized.has_value());
    EXPECT_FALSE(s.sigma_in.has_value());
  }
  EXPECT_EQ(st.stages.size(), 1u + 3 + 1 + 3);
}

TEST(Budget, LimitStagesJoinBlocks) {
  const SequenceState st = run_quillen(testing::gens("point"), bang(), {3, 2});
  ASSERT_EQ(st.stages.size(), 1u + 3 + 1 + 3 + 1 + 3);
  EXPECT_EQ(st.stages[4].kind, StageKind::Limit);
  EXPECT_EQ(st.stages[4].limit_from, 0u);
  EXPECT_EQ(st.stages[8].kind, StageKind::Limit);
  EXPECT_EQ(st.stages[8].limit_from, 4u);
  EXPECT_EQ(st.omega_steps, 2u);
  EXPECT_EQ(st.successor_steps, 9u);
  EXPECT_TRUE(verify_sequence(st).ok());
  EXPECT_THROW(run_garner(testing::gens("point"), bang(), {0, 1}), IncompatibleInputs);
}

TEST(Budget, WrongBaseRejected) {
  const GeneratingSet horns = testing::gens("horns≤1");
  EXPECT_THROW(run_garner(horns, bang()), IncompatibleInputs);
}

TEST(Comparison, EmptyToOneSecondStage) {
  const SequenceState g = run_garner(testing::gens("point"), bang(), {4, 0}, {true});
  const SequenceState q = run_quillen(testing::gens("point"), bang(), {4, 0}, {true});
  const auto maps = build_comparison(g, q);
  ASSERT_EQ(maps.size(), 5u);
  EXPECT_EQ(maps[1], identity_map(set(1)));
  EXPECT_EQ(maps[2].component(0), (std::vector<Element>{0, 0}));
  EXPECT_EQ(sizes(g), (std::vector<std::size_t>{0, 1, 1, 1, 1}));
}

TEST(Comparison, SurjectiveAndCompatible) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const GeneratingSet j = testing::gens(trial % 2 ? "point" : "codiagonal");
    const ArrowObj g{testing::random_finite_map(rng, 3), {}};
    const SequenceState gs = run_garner(j, g, {3, 1}, {true});
    const SequenceState qs = run_quillen(j, g, {3, 1}, {true});
    const auto maps = build_comparison(gs, qs);
    ASSERT_EQ(maps.size(), gs.stages.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
      EXPECT_TRUE(is_surjective(maps[i]));
      EXPECT_EQ(compose_maps(maps[i], qs.stages[i].lambda), gs.stages[i].lambda);
      EXPECT_EQ(compose_maps(gs.stages[i].rho, maps[i]), qs.stages[i].rho);
      if (i > 0) {
        EXPECT_EQ(compose_maps(maps[i], *qs.stages[i].connect_in), compose_maps(*gs.stages[i].connect_in, maps[i - 1]));
      }
    }
  }
}

TEST(Comparison, RejectsMismatchedRuns) {
  const SequenceState g = run_garner(testing::gens("point"), bang(), {2, 0}, {true});
  const SequenceState q = run_quillen(testing::gens("point"), set_arrow(0, 2, {}), {2, 0});
  EXPECT_THROW(build_comparison(g, q), IncompatibleInputs);
  EXPECT_THROW(build_comparison(q, g), IncompatibleInputs);
}

TEST(Horns, InvariantsOnSmallGraph) {
  const GeneratingSet horns = testing::gens("horns≤1");
  const ArrowObj g{terminal_map(reflexive_graph(2, {{0, 1}})), {}};
  const SequenceState gs = run_garner(horns, g, {3, 1}, {true});
  const SequenceState qs = run_quillen(horns, g, {3, 1}, {true});
  EXPECT_TRUE(gs.exhausted());
  EXPECT_TRUE(verify_sequence(gs).ok());
  EXPECT_TRUE(verify_sequence(qs).ok());
  const auto maps = build_comparison(gs, qs);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    EXPECT_TRUE(is_surjective(maps[i]));
    for (std::size_t a = 0; a < 2; ++a) EXPECT_LE(gs.stages[i].K.size(a), qs.stages[i].K.size(a));
  }
}

TEST(State, SigmaLookup) {
  const SequenceState st = run_garner(testing::gens("point"), bang(), {3, 0}, {true});
  EXPECT_EQ(st.sigma(0), identity_map(st.stages[0].onestep->K));
  EXPECT_NO_THROW(st.sigma(1));
  EXPECT_THROW(st.sigma(3), NotFound);
  EXPECT_THROW(st.connect(2, 1), IncompatibleInputs);
}

TEST(State, Deterministic) {
  const GeneratingSet horns = testing::gens("horns≤1");
  const ArrowObj g{terminal_map(reflexive_graph(2, {{0, 1}})), {}};
  const SequenceState a = run_garner(horns, g, {3, 0});
  const SequenceState b = run_garner(horns, g, {3, 0});
  ASSERT_EQ(a.stages.size(), b.stages.size());
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    EXPECT_EQ(a.stages[i].K, b.stages[i].K);
    EXPECT_EQ(a.stages[i].rho, b.stages[i].rho);
  }
}

}  // namespace
}  // namespace nwfs
