#include "conefix/error.hpp"
#include "conefix/instance.hpp"
#include "conefix/solvers.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace conefix;
using testing_support::load_fixture;
using testing_support::vec;

namespace {

class LineSolvers : public ::testing::Test {
 protected:
  Instance inst = load_fixture("line.json");
  ConeMetricSpace cms = inst.metric_space();
  const Potential& phi = inst.potential("phi");

  KPlusCertificate delta(double t) const {
    return *kplus_factor(cms.space(), Eigen::MatrixXd::Identity(2, 2) * t);
  }
};

ConeMetricSpace two_point_space() {
  const OrderedSpace e = OrderedSpace::standard(2);
  return ConeMetricSpace(e, {"a", "b"}, {{vec({0, 0}), vec({1, 1})}, {vec({1, 1}), vec({0, 0})}});
}

}  // namespace

TEST_F(LineSolvers, BishopPhelpsClimb) {
  const SolveTrace trace = bishop_phelps_climb(cms, phi, 0);
  // Successors of p0 are p1 (phi (4,8)) and p2 (phi (0,0)); the lex-least phi wins.
  EXPECT_EQ(trace.iterates, (std::vector<PointIndex>{0, 2}));
  EXPECT_EQ(trace.certificate.kind, CertificateKind::maximal);
  EXPECT_EQ(trace.iterations(), 1u);
  EXPECT_TRUE(trace.steps[0].distance.isApprox(vec({3.0, 6.0})));
  EXPECT_TRUE(trace.steps[0].potential_drop.isApprox(vec({5.0, 10.0})));
  EXPECT_TRUE(check_trace(cms, trace).empty());
}

TEST_F(LineSolvers, ClimbFromMaximalPointStays) {
  const SolveTrace trace = bishop_phelps_climb(cms, phi, 2);
  EXPECT_EQ(trace.iterates, (std::vector<PointIndex>{2}));
  EXPECT_EQ(trace.iterations(), 0u);
}

TEST_F(LineSolvers, CaristiSolve) {
  const SolveTrace trace = caristi_solve(cms, inst.map("T_caristi"), phi, CaristiMode::exists, 0);
  EXPECT_EQ(trace.result(), 2u);
  EXPECT_EQ(trace.certificate.kind, CertificateKind::member_of_image);
  const SolveTrace strict = caristi_solve(cms, inst.map("T_caristi"), phi, CaristiMode::forall, 0);
  EXPECT_EQ(strict.certificate.kind, CertificateKind::image_is_singleton);
  EXPECT_TRUE(check_trace(cms, strict, &inst.map("T_caristi")).empty());
}

TEST_F(LineSolvers, CaristiRejectsMapsWithoutTheHypothesis) {
  EXPECT_THROW(caristi_solve(cms, SetValuedMap({{1}, {0}, {2}}), phi, CaristiMode::exists), PreconditionError);
}

TEST_F(LineSolvers, SingleValuedSolve) {
  const SolveTrace trace = single_valued_solve(cms, {2, 2, 2}, phi, 1);
  EXPECT_EQ(trace.iterates, (std::vector<PointIndex>{1, 2}));
  EXPECT_EQ(trace.certificate.kind, CertificateKind::function_fixed);
  const std::vector<PointIndex> f{2, 2, 2};
  EXPECT_TRUE(check_trace(cms, trace, nullptr, &f).empty());
  EXPECT_THROW(single_valued_solve(cms, {1, 0, 2}, phi, 0), PreconditionError);
}

TEST_F(LineSolvers, TakahashiAttainsInfimum) {
  const SolveTrace trace = takahashi_solve(cms, phi, 0);
  EXPECT_EQ(trace.result(), 2u);
  EXPECT_EQ(trace.certificate.kind, CertificateKind::attains_infimum);
  EXPECT_TRUE(trace.certificate.value.isZero());
}

TEST(Takahashi, StrandedPointIsAPreconditionFailure) {
  // inf phi = (0,0) is not attained: neither point can move to the other.
  const ConeMetricSpace cms = two_point_space();
  const Potential phi{{vec({0, 1}), vec({1, 0})}};
  EXPECT_THROW(takahashi_solve(cms, phi, 0), PreconditionError);
}

TEST_F(LineSolvers, WeakContractionPotential) {
  const Potential rescaled = weak_contraction_potential(cms, inst.map("T"), delta(0.5), 0.1);
  const double denom = 1.0 / 1.1 - 0.5;
  EXPECT_TRUE(rescaled(0).isZero());
  EXPECT_TRUE(rescaled(1).isApprox(vec({1.0, 2.0}) / denom));
  EXPECT_TRUE(rescaled(2).isApprox(vec({2.0, 4.0}) / denom));
  // c = 1 / 1.1 does not exceed 0.95.
  EXPECT_THROW(weak_contraction_potential(cms, inst.map("T"), delta(0.95), 0.1), PreconditionError);
}

TEST_F(LineSolvers, WeakContractionSolveFromP2) {
  const SolveTrace trace =
      weak_contraction_solve(cms, inst.map("T"), delta(0.5), Eigen::MatrixXd::Zero(2, 2), 0.1, 2);
  EXPECT_EQ(trace.iterates, (std::vector<PointIndex>{2, 1, 0}));
  EXPECT_EQ(trace.certificate.kind, CertificateKind::member_of_image);
  EXPECT_EQ(trace.certificate.point, 0u);
  EXPECT_TRUE(check_trace(cms, trace, &inst.map("T")).empty());
}

TEST_F(LineSolvers, WeakContractionChecksPreconditions) {
  const auto zero = Eigen::MatrixXd::Zero(2, 2);
  // Not a weak contraction at delta = 0.1.
  EXPECT_THROW(weak_contraction_solve(cms, inst.map("T"), delta(0.1), zero, 0.1, 2), PreconditionError);
  // Constant images make any delta work, but condition (S) fails at x:
  // neither d(x, a) = (1,2) nor d(x, b) = (2,1) is below 1.05 (1,1).
  const Instance other = load_fixture("incomparable.json");
  const SetValuedMap constant({{1, 2}, {1, 2}, {1, 2}});
  const auto d = *kplus_factor(other.space, Eigen::MatrixXd::Identity(2, 2) * 0.5);
  EXPECT_TRUE(check_weak_contraction(other.metric_space(), constant, d, zero).holds);
  EXPECT_THROW(weak_contraction_solve(other.metric_space(), constant, d, zero, 0.05, 0), PreconditionError);
}

TEST_F(LineSolvers, BruteForceFixedPoints) {
  const FixedPointSets sets = brute_force_fixed_points(cms, SetValuedMap({{0}, {0, 1}, {0}}));
  EXPECT_EQ(sets.members, (PointSet{0, 1}));
  EXPECT_EQ(sets.strict, (PointSet{0}));
}

TEST_F(LineSolvers, CheckTraceDetectsTampering) {
  SolveTrace trace = bishop_phelps_climb(cms, phi, 0);
  SolveTrace bad = trace;
  bad.iterates = {0, 1};
  bad.certificate.point = 1;
  EXPECT_FALSE(check_trace(cms, bad).empty());

  bad = trace;
  bad.steps[0].distance = vec({1.0, 1.0});
  EXPECT_FALSE(check_trace(cms, bad).empty());

  bad = trace;
  bad.certificate.kind = CertificateKind::member_of_image;
  EXPECT_FALSE(check_trace(cms, bad).empty());  // no map supplied
  EXPECT_FALSE(check_trace(cms, bad, &inst.map("T")).empty());  // p2 not in T p2
}

TEST(Solvers, SinglePointIsTrivial) {
  const ConeMetricSpace cms(OrderedSpace::standard(1), {"only"}, {{vec({0.0})}});
  const Potential phi{{vec({3.0})}};
  const SetValuedMap map(std::vector<std::vector<PointIndex>>{{0}});
  EXPECT_EQ(bishop_phelps_climb(cms, phi, 0).result(), 0u);
  EXPECT_EQ(caristi_solve(cms, map, phi, CaristiMode::forall).result(), 0u);
  EXPECT_EQ(takahashi_solve(cms, phi).result(), 0u);
  EXPECT_EQ(single_valued_solve(cms, {0}, phi).result(), 0u);
  const auto delta = *kplus_factor(cms.space(), Eigen::MatrixXd::Constant(1, 1, 0.5));
  EXPECT_EQ(weak_contraction_solve(cms, map, delta, Eigen::MatrixXd::Zero(1, 1), 0.5).result(), 0u);
}
