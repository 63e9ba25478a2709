#include "conefix/cone_metric.hpp"
#include "conefix/instance.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace conefix;
using testing_support::load_fixture;
using testing_support::vec;

namespace {

// d(x, y) = |x - y| (1, 2) on the points 0, 1, 3, computed without the library.
ConeVector line_distance(double x, double y) { return vec({std::abs(x - y), 2.0 * std::abs(x - y)}); }

ConeMetricSpace line_space() { return load_fixture("line.json").metric_space(); }

Potential line_phi() { return load_fixture("line.json").potential("phi"); }

}  // namespace

TEST(ConeMetric, LineFixtureDistances) {
  const ConeMetricSpace cms = line_space();
  const double coords[] = {0.0, 1.0, 3.0};
  for (PointIndex i = 0; i < 3; ++i) {
    for (PointIndex j = 0; j < 3; ++j) {
      EXPECT_TRUE(cms.dist(i, j).isApprox(line_distance(coords[i], coords[j])) ||
                  (i == j && cms.dist(i, j).isZero()));
    }
  }
  EXPECT_TRUE(cms.dist(0, 2).isApprox(vec({3.0, 6.0})));
  EXPECT_TRUE(cms.dist(1, 2).isApprox(vec({2.0, 4.0})));
}

TEST(ConeMetric, ValidFixturePassesWithDerivedProperties) {
  const ValidationReport report = validate_cone_metric(line_space());
  EXPECT_TRUE(report.passes());
  EXPECT_EQ(report.derived, ValidationReport::Derived::verified);
}

TEST(ConeMetric, BrokenTriangleWitnesses) {
  const ConeMetricSpace cms = load_fixture("broken_triangle.json", false).metric_space();
  const ValidationReport report = validate_cone_metric(cms);
  EXPECT_FALSE(report.passes());
  EXPECT_EQ(report.triangle_violations, 2u);
  ASSERT_EQ(report.triangle_witnesses.size(), 2u);
  EXPECT_EQ(report.triangle_witnesses[0], (std::array<PointIndex, 3>{0, 1, 2}));
  EXPECT_EQ(report.triangle_witnesses[1], (std::array<PointIndex, 3>{1, 0, 2}));
  EXPECT_NE(report.summary(cms).find("(p0,p1,p2)"), std::string::npos);
}

TEST(ConeMetric, IdentityViolations) {
  const OrderedSpace e = OrderedSpace::standard(1);
  // Nonzero self-distance and a zero distance between distinct points.
  ConeMetricSpace::Table table{{vec({1.0}), vec({0.0})}, {vec({0.0}), vec({0.0})}};
  const ValidationReport report = validate_cone_metric(ConeMetricSpace(e, {"a", "b"}, table));
  EXPECT_FALSE(report.passes());
  EXPECT_GE(report.identity_violations, 2u);
}

TEST(ConeMetric, ConstructorChecksShape) {
  const OrderedSpace e = OrderedSpace::standard(1);
  ConeMetricSpace::Table table{{vec({0.0})}};
  EXPECT_THROW(ConeMetricSpace(e, {"a", "b"}, table), std::invalid_argument);
  EXPECT_THROW(ConeMetricSpace(e, {"a", "a"}, {{vec({0.0}), vec({1.0})}, {vec({1.0}), vec({0.0})}}),
               std::invalid_argument);
  EXPECT_THROW(ConeMetricSpace(e, {"a"}, {{vec({0.0, 0.0})}}), std::invalid_argument);
}

TEST(ConeMetric, PointToSetDistanceIsLatticeInfimum) {
  const ConeMetricSpace cms = load_fixture("incomparable.json").metric_space();
  const PointIndex x = cms.index_of("x");
  const PointSet ab = make_point_set({cms.index_of("a"), cms.index_of("b")});
  // (1,2) and (2,1) are incomparable; their infimum (1,1) is not attained.
  EXPECT_TRUE(dist_point_to_set(cms, x, ab).isApprox(vec({1.0, 1.0})));
}

TEST(ConeMetric, HausdorffOnLine) {
  const ConeMetricSpace cms = line_space();
  EXPECT_TRUE(hausdorff(cms, {0}, {0, 1}).isApprox(vec({1.0, 2.0})));
  EXPECT_TRUE(hausdorff(cms, {0, 1}, {0}).isApprox(vec({1.0, 2.0})));
  EXPECT_TRUE(hausdorff(cms, {0}, {2}).isApprox(vec({3.0, 6.0})));
  EXPECT_TRUE(hausdorff(cms, {0, 1, 2}, {0, 1, 2}).isZero());
}

TEST(ConeMetric, SMembership) {
  const ConeMetricSpace cms = line_space();
  // d(p0, p1) = (1,2) fits in eps = (1,2), but d(p2, {p0}) = (3,6) does not.
  EXPECT_FALSE(s_membership(cms, vec({1.0, 2.0}), PointSet{0}, PointSet{1, 2}));
  EXPECT_TRUE(s_membership(cms, vec({1.0, 2.0}), 0, {1, 2}));
  EXPECT_TRUE(s_membership(cms, vec({3.0, 6.0}), PointSet{0}, PointSet{1, 2}));
  // eps must be nonzero and in P.
  EXPECT_FALSE(s_membership(cms, vec({0.0, 0.0}), 0, {0}));
  EXPECT_FALSE(s_membership(cms, vec({-1.0, 5.0}), 0, {0}));
  EXPECT_TRUE(s_membership(cms, vec({1.0, 0.0}), 0, {0}));
}

TEST(ConeMetric, BronstedOrderOnLine) {
  const ConeMetricSpace cms = line_space();
  const Potential phi = line_phi();
  EXPECT_TRUE(bronsted_leq(cms, phi, 0, 1));
  EXPECT_TRUE(bronsted_leq(cms, phi, 0, 2));
  EXPECT_TRUE(bronsted_leq(cms, phi, 1, 2));
  EXPECT_FALSE(bronsted_leq(cms, phi, 2, 0));
  EXPECT_TRUE(bronsted_leq(cms, phi, 1, 1));
  EXPECT_EQ(bronsted_maximal_oracle(cms, phi, 0), (PointSet{2}));
  EXPECT_EQ(bronsted_maximal_oracle(cms, phi, 2), (PointSet{2}));
}

TEST(ConeMetric, PotentialShapeChecked) {
  const ConeMetricSpace cms = line_space();
  EXPECT_NO_THROW(check_potential(cms, line_phi()));
  EXPECT_THROW(check_potential(cms, Potential{{vec({0.0, 0.0})}}), std::invalid_argument);
  EXPECT_THROW(check_potential(cms, Potential{{vec({0.0}), vec({0.0}), vec({0.0})}}), std::invalid_argument);
}

TEST(ConeMetric, LabelLookup) {
  const ConeMetricSpace cms = line_space();
  EXPECT_EQ(cms.index_of("p2"), 2u);
  EXPECT_THROW((void)cms.index_of("p9"), std::out_of_range);
}
