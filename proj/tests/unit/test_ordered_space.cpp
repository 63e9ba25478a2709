#include "conefix/ordered_space.hpp"
#include "conefix/oracles.hpp"
#include "conefix/random.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>

using namespace conefix;
using testing_support::to_std;
using testing_support::vec;

namespace {

Eigen::MatrixXd shear() {
  Eigen::MatrixXd g(2, 2);
  g << 1, 1, 0, 1;
  return g;
}

Eigen::MatrixXd diag(double a, double b) { return vec({a, b}).asDiagonal(); }

Eigen::MatrixXd random_generators(Rng& rng, std::size_t m) {
  const auto dim = static_cast<Eigen::Index>(m);
  while (true) {
    Eigen::MatrixXd g(dim, dim);
    for (auto& v : g.reshaped()) v = rng.uniform(-1.0, 1.0);
    g += Eigen::MatrixXd::Identity(dim, dim) * 1.5;
    if (OrderedSpace::is_nonsingular(g)) return g;
  }
}

}  // namespace

TEST(OrderedSpace, DefaultIsOneDimensionalStandard) {
  const OrderedSpace e;
  EXPECT_EQ(e.dim(), 1u);
  EXPECT_TRUE(e.leq(vec({1.0}), vec({2.0})));
  EXPECT_FALSE(e.leq(vec({2.0}), vec({1.0})));
}

TEST(OrderedSpace, RejectsSingularAndNonSquareGenerators) {
  Eigen::MatrixXd singular(2, 2);
  singular << 1, 2, 2, 4;
  EXPECT_THROW(OrderedSpace{singular}, std::invalid_argument);
  EXPECT_THROW(OrderedSpace{Eigen::MatrixXd::Ones(2, 3)}, std::invalid_argument);
  EXPECT_THROW(OrderedSpace(Eigen::MatrixXd::Identity(2, 2), -1.0), std::invalid_argument);
}

TEST(OrderedSpace, ConeCoordinatesUnderShear) {
  const OrderedSpace e(shear());
  EXPECT_TRUE(e.cone_coords(vec({2.0, 1.0})).isApprox(vec({1.0, 1.0})));
  EXPECT_TRUE(e.from_cone_coords(vec({1.0, 1.0})).isApprox(vec({2.0, 1.0})));
}

TEST(OrderedSpace, ConeCoordinatesMatchEliminationOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.between(1, 4);
    const OrderedSpace e(random_generators(rng, m));
    Eigen::VectorXd x(static_cast<Eigen::Index>(m));
    for (auto& v : x) v = rng.uniform(-5.0, 5.0);
    const auto expected = ref::solve(to_std(e.generators()), to_std(x));
    const Eigen::VectorXd got = e.cone_coords(x);
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(got(static_cast<Eigen::Index>(i)), expected[i], 1e-9);
  }
}

TEST(OrderedSpace, LeqMatchesOracleOnRandomPairs) {
  Rng rng(12);
  int comparable = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = rng.between(1, 4);
    const OrderedSpace e(random_generators(rng, m));
    Eigen::VectorXd x(static_cast<Eigen::Index>(m));
    Eigen::VectorXd c(static_cast<Eigen::Index>(m));
    for (auto& v : x) v = rng.uniform(-5.0, 5.0);
    for (auto& v : c) v = rng.bernoulli(0.5) ? rng.uniform(0.0, 2.0) : rng.uniform(-0.2, 2.0);
    const Eigen::VectorXd y = x + e.generators() * c;
    const bool got = e.leq(x, y);
    comparable += got;
    EXPECT_EQ(got, ref::leq(to_std(e.generators()), to_std(x), to_std(y), e.tol()));
  }
  EXPECT_GT(comparable, 100);
  EXPECT_LT(comparable, 1900);
}

TEST(OrderedSpace, StrictAndInteriorOrders) {
  const OrderedSpace e = OrderedSpace::standard(2);
  const auto zero = e.zero();
  EXPECT_TRUE(e.interior_less(zero, vec({1.0, 1.0})));
  EXPECT_FALSE(e.interior_less(zero, vec({1.0, 0.0})));
  EXPECT_TRUE(e.strictly_less(zero, vec({1.0, 0.0})));
  EXPECT_FALSE(e.strictly_less(zero, zero));
  EXPECT_FALSE(e.leq(vec({1.0, 2.0}), vec({2.0, 1.0})));
  EXPECT_FALSE(e.leq(vec({2.0, 1.0}), vec({1.0, 2.0})));
}

TEST(OrderedSpace, ToleranceScalesWithOperands) {
  const OrderedSpace e = OrderedSpace::standard(1, 1e-9);
  EXPECT_TRUE(e.leq(vec({1e6 + 1e-4}), vec({1e6})));
  EXPECT_FALSE(e.leq(vec({1.0 + 1e-6}), vec({1.0})));
  EXPECT_TRUE(e.equal(vec({1.0}), vec({1.0 + 1e-10})));
}

TEST(OrderedSpace, ToleranceEnvironmentOverride) {
  ::setenv("CONE_FIXPOINT_TOL", "1e-6", 1);
  EXPECT_DOUBLE_EQ(default_tolerance(), 1e-6);
  ::setenv("CONE_FIXPOINT_TOL", "not a number", 1);
  EXPECT_DOUBLE_EQ(default_tolerance(), kDefaultTolerance);
  ::unsetenv("CONE_FIXPOINT_TOL");
  EXPECT_DOUBLE_EQ(default_tolerance(), kDefaultTolerance);
}

TEST(OrderedSpace, LatticeOperationsUnderShear) {
  const OrderedSpace e(shear());
  const std::vector<ConeVector> values{vec({2.0, 1.0}), vec({1.0, 1.0})};
  EXPECT_TRUE(e.inf(values).isApprox(vec({1.0, 1.0})));
  EXPECT_TRUE(e.abs(vec({0.0, 1.0})).isApprox(vec({2.0, 1.0})));
  EXPECT_THROW((void)e.inf(std::vector<ConeVector>{}), std::invalid_argument);
  EXPECT_THROW((void)e.sup(std::vector<ConeVector>{}), std::invalid_argument);
}

TEST(OrderedSpace, LatticeMatchesOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng.between(1, 4);
    const OrderedSpace e(random_generators(rng, m));
    std::vector<ConeVector> values;
    std::vector<ref::Vec> plain;
    for (std::size_t k = rng.between(1, 6); k > 0; --k) {
      Eigen::VectorXd v(static_cast<Eigen::Index>(m));
      for (auto& x : v) x = rng.uniform(-5.0, 5.0);
      values.push_back(v);
      plain.push_back(to_std(v));
    }
    const auto lo = ref::inf(to_std(e.generators()), plain);
    const auto hi = ref::sup(to_std(e.generators()), plain);
    const ConeVector got_lo = e.inf(values);
    const ConeVector got_hi = e.sup(values);
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_NEAR(got_lo(static_cast<Eigen::Index>(i)), lo[i], 1e-8);
      EXPECT_NEAR(got_hi(static_cast<Eigen::Index>(i)), hi[i], 1e-8);
    }
  }
}

TEST(OrderedSpace, PositiveOperator) {
  const OrderedSpace e(shear());
  EXPECT_TRUE(e.is_positive_operator(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_TRUE(e.is_positive_operator(Eigen::MatrixXd::Zero(2, 2)));
  EXPECT_FALSE(e.is_positive_operator(-Eigen::MatrixXd::Identity(2, 2)));
  // Swapping the standard axes does not preserve the sheared cone.
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_FALSE(e.is_positive_operator(swap));
}

TEST(OrderedSpace, LexLessIsExact) {
  const OrderedSpace e = OrderedSpace::standard(2);
  EXPECT_TRUE(e.lex_less(vec({1.0, 5.0}), vec({2.0, 0.0})));
  EXPECT_TRUE(e.lex_less(vec({1.0, 0.0}), vec({1.0, 1e-15})));
  EXPECT_FALSE(e.lex_less(vec({1.0, 1.0}), vec({1.0, 1.0})));
}

TEST(KPlus, DiagonalFactorIsLargestEntry) {
  const OrderedSpace e = OrderedSpace::standard(2);
  const auto cert = kplus_factor(e, diag(0.5, 0.25));
  ASSERT_TRUE(cert);
  EXPECT_DOUBLE_EQ(cert->factor(), 0.5);
  EXPECT_FALSE(kplus_rejection(e, diag(0.5, 0.25)));
}

TEST(KPlus, OffDiagonalMassIsRejectedWithRay) {
  const OrderedSpace e = OrderedSpace::standard(2);
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.1, 0.0, 0.5;
  EXPECT_FALSE(kplus_factor(e, m));
  const auto why = kplus_rejection(e, m);
  ASSERT_TRUE(why);
  EXPECT_EQ(why->reason, KPlusRejection::Reason::not_dominated);
  EXPECT_EQ(why->ray, 1u);
  EXPECT_TRUE(why->ray_vector.isApprox(vec({0.0, 1.0})));
}

TEST(KPlus, RejectionReasons) {
  const OrderedSpace e = OrderedSpace::standard(2);
  EXPECT_EQ(kplus_rejection(e, Eigen::MatrixXd::Zero(2, 2))->reason, KPlusRejection::Reason::not_injective);
  EXPECT_EQ(kplus_rejection(e, Eigen::MatrixXd::Identity(2, 2))->reason,
            KPlusRejection::Reason::factor_not_below_one);
  EXPECT_EQ(kplus_rejection(e, diag(0.5, -0.1))->reason, KPlusRejection::Reason::not_positive);
  EXPECT_EQ(kplus_rejection(e, diag(0.5, std::numeric_limits<double>::quiet_NaN()))->reason,
            KPlusRejection::Reason::not_finite);
  EXPECT_EQ(kplus_rejection(e, diag(0.5, 0.0))->reason, KPlusRejection::Reason::not_injective);
}

TEST(KPlus, AgreesWithRayOracleAcrossCategories) {
  Rng rng(14);
  int accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng.between(1, 4);
    const OrderedSpace e(random_generators(rng, m));
    const auto dim = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd cone = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) cone(i, i) = rng.uniform(0.05, 0.95);
    if (rng.bernoulli(0.4) && m > 1) cone(0, dim - 1) = 0.2;
    const Eigen::MatrixXd map = e.generators() * cone * e.generator_inverse();
    const auto cert = kplus_factor(e, map);
    const auto verdict = oracle::kplus_ray_oracle(e, map, trial);
    EXPECT_EQ(cert.has_value(), verdict.member);
    if (cert) {
      ++accepted;
      EXPECT_NEAR(cert->factor(), cone.diagonal().maxCoeff(), 1e-9);
      EXPECT_NEAR(cert->factor(), verdict.factor, 1e-6);
    }
  }
  EXPECT_GT(accepted, 100);
}

TEST(KPlus, SpectralRadiusOfDiagonal) {
  EXPECT_NEAR(spectral_radius_estimate(diag(0.5, 0.25)), 0.5, 1e-9);
  const OrderedSpace e(shear());
  const Eigen::MatrixXd map = e.generators() * diag(0.3, 0.7) * e.generator_inverse();
  EXPECT_NEAR(spectral_radius_estimate(e, map), 0.7, 1e-6);
}
