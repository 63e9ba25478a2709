#include "conefix/generator.hpp"
#include "conefix/mappings.hpp"
#include "conefix/solvers.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace conefix;

TEST(Generator, DeterministicInSeed) {
  for (auto kind : {InstanceKind::random_metric, InstanceKind::caristi, InstanceKind::weak_contraction,
                    InstanceKind::takahashi}) {
    EXPECT_EQ(dump_instance(generate_instance(kind, 6, 3, 9)), dump_instance(generate_instance(kind, 6, 3, 9)));
    EXPECT_NE(dump_instance(generate_instance(kind, 6, 3, 9)), dump_instance(generate_instance(kind, 6, 3, 10)));
  }
}

TEST(Generator, KindNames) {
  EXPECT_EQ(parse_instance_kind("weak_contraction"), InstanceKind::weak_contraction);
  EXPECT_EQ(to_string(InstanceKind::takahashi), "takahashi");
  EXPECT_THROW(parse_instance_kind("spiral"), std::invalid_argument);
}

TEST(Generator, RandomMetricPassesAxioms) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_instance(InstanceKind::random_metric, 1 + seed % 8, 1 + seed % 4, seed);
    EXPECT_TRUE(validate_cone_metric(inst.metric_space()).passes()) << seed;
  }
}

TEST(Generator, CaristiInstancesSatisfyBothModes) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_instance(InstanceKind::caristi, 1 + seed % 8, 1 + seed % 4, seed);
    const ConeMetricSpace cms = inst.metric_space();
    const Potential& phi = inst.potential("phi");
    EXPECT_TRUE(check_caristi_hypothesis(cms, inst.map("T"), phi, CaristiMode::exists).holds) << seed;
    EXPECT_TRUE(check_caristi_hypothesis(cms, inst.map("T_forall"), phi, CaristiMode::forall).holds) << seed;
    EXPECT_TRUE(inst.map("f").is_single_valued());
  }
}

TEST(Generator, WeakContractionInstancesAreNontrivial) {
  std::size_t longest = 0;
  std::size_t multi_valued = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Instance inst = generate_instance(InstanceKind::weak_contraction, n, 1 + seed % 4, seed);
    const ConeMetricSpace cms = inst.metric_space();
    const SetValuedMap& map = inst.map("T");
    const auto delta = kplus_factor(inst.space, inst.op("delta"));
    ASSERT_TRUE(delta) << seed;
    EXPECT_TRUE(check_weak_contraction(cms, map, *delta, inst.op("L")).holds) << seed;
    EXPECT_FALSE(condition_S_failure(condition_S_selectors(cms, map, inst.param("epsilon")))) << seed;
    EXPECT_FALSE(brute_force_fixed_points(cms, map).members.empty()) << seed;
    EXPECT_TRUE(inst.space.is_positive_operator(inst.op("L")));
    multi_valued += !map.is_single_valued();
    for (PointIndex x0 = 0; x0 < n; ++x0) {
      const auto trace = weak_contraction_solve(cms, map, *delta, inst.op("L"), inst.param("epsilon"), x0);
      longest = std::max(longest, trace.iterations());
    }
  }
  EXPECT_GE(longest, 2u);
  EXPECT_GE(multi_valued, 6u);
}

TEST(Generator, TakahashiInfimumIsAttained) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_instance(InstanceKind::takahashi, 1 + seed % 8, 1 + seed % 4, seed);
    const Potential& phi = inst.potential("phi");
    const ConeVector lower = inst.space.inf(phi.values);
    bool attained = false;
    for (const auto& v : phi.values) attained = attained || inst.space.equal(v, lower);
    EXPECT_TRUE(attained) << seed;
  }
}

TEST(Generator, SinglePointInstances) {
  for (auto kind : {InstanceKind::random_metric, InstanceKind::caristi, InstanceKind::weak_contraction,
                    InstanceKind::takahashi}) {
    const Instance inst = generate_instance(kind, 1, 2, 3);
    EXPECT_EQ(inst.points.size(), 1u);
    for (const auto& [name, map] : inst.maps) EXPECT_EQ(map(0), (PointSet{0})) << name;
  }
}

TEST(Generator, HuangZhangFamily) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const Instance inst = huang_zhang_instance(alpha, 6, 4);
    const ConeMetricSpace cms = inst.metric_space();
    EXPECT_TRUE(validate_cone_metric(cms).passes());
    const ConeVector d = cms.dist(0, 1);
    EXPECT_NEAR(d(1), alpha * d(0), 1e-12);
  }
}
