#include "conefix/ordered_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace conefix {

double default_tolerance() {
  if (const char* env = std::getenv("CONE_FIXPOINT_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(value) && value >= 0.0) {
      return value;
    }
  }
  return kDefaultTolerance;
}

OrderedSpace::OrderedSpace()
    : generators_(Eigen::MatrixXd::Identity(1, 1)),
      gen_inverse_(Eigen::MatrixXd::Identity(1, 1)),
      tol_(default_tolerance()) {}

OrderedSpace::OrderedSpace(const Eigen::MatrixXd& generators, double tol)
    : generators_(generators), tol_(tol) {
  if (generators.rows() == 0 || generators.rows() != generators.cols()) {
    throw std::invalid_argument("generator matrix must be square and nonempty");
  }
  if (!generators.allFinite()) {
    throw std::invalid_argument("generator matrix has non-finite entries");
  }
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tolerance must be a nonnegative finite number");
  }
  if (!is_nonsingular(generators)) {
    throw std::invalid_argument("generator matrix is singular: the cone is not simplicial");
  }
  gen_inverse_ = generators.fullPivLu().inverse();
}

OrderedSpace OrderedSpace::standard(std::size_t dim, double tol) {
  const auto m = static_cast<Eigen::Index>(dim);
  return OrderedSpace(Eigen::MatrixXd::Identity(m, m), tol);
}

bool OrderedSpace::is_nonsingular(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) return false;
  const double col_norm = matrix.colwise().norm().maxCoeff();
  if (col_norm == 0.0) return false;
  const double det = matrix.fullPivLu().determinant();
  return std::abs(det) > kSingularThreshold * std::pow(col_norm, static_cast<double>(matrix.rows()));
}

Eigen::VectorXd OrderedSpace::cone_coords(const ConeVector& x) const { return gen_inverse_ * x; }

ConeVector OrderedSpace::from_cone_coords(const Eigen::VectorXd& c) const { return generators_ * c; }

Eigen::MatrixXd OrderedSpace::cone_matrix(const LinearMap& map) const {
  return gen_inverse_ * map * generators_;
}

double OrderedSpace::scale_of(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
}

bool OrderedSpace::leq(const ConeVector& x, const ConeVector& y) const {
  const Eigen::VectorXd cx = cone_coords(x);
  const Eigen::VectorXd cy = cone_coords(y);
  const double slack = tol_ * scale_of(cx, cy);
  return ((cy - cx).array() >= -slack).all();
}

bool OrderedSpace::interior_less(const ConeVector& x, const ConeVector& y) const {
  const Eigen::VectorXd cx = cone_coords(x);
  const Eigen::VectorXd cy = cone_coords(y);
  const double slack = tol_ * scale_of(cx, cy);
  return ((cy - cx).array() > slack).all();
}

bool OrderedSpace::equal(const ConeVector& x, const ConeVector& y) const {
  return leq(x, y) && leq(y, x);
}

bool OrderedSpace::strictly_less(const ConeVector& x, const ConeVector& y) const {
  return leq(x, y) && !leq(y, x);
}

ConeVector OrderedSpace::inf(std::span<const ConeVector> values) const {
  if (values.empty()) throw std::invalid_argument("empty lattice operand");
  Eigen::VectorXd c = cone_coords(values.front());
  for (const auto& v : values.subspan(1)) c = c.cwiseMin(cone_coords(v));
  return from_cone_coords(c);
}

ConeVector OrderedSpace::sup(std::span<const ConeVector> values) const {
  if (values.empty()) throw std::invalid_argument("empty lattice operand");
  Eigen::VectorXd c = cone_coords(values.front());
  for (const auto& v : values.subspan(1)) c = c.cwiseMax(cone_coords(v));
  return from_cone_coords(c);
}

ConeVector OrderedSpace::inf(const ConeVector& a, const ConeVector& b) const {
  return from_cone_coords(cone_coords(a).cwiseMin(cone_coords(b)));
}

ConeVector OrderedSpace::sup(const ConeVector& a, const ConeVector& b) const {
  return from_cone_coords(cone_coords(a).cwiseMax(cone_coords(b)));
}

ConeVector OrderedSpace::abs(const ConeVector& x) const { return sup(x, ConeVector(-x)); }

bool OrderedSpace::is_positive_operator(const LinearMap& map) const {
  if (!map.allFinite()) return false;
  const Eigen::MatrixXd cm = cone_matrix(map);
  const double slack = tol_ * std::max(1.0, cm.cwiseAbs().maxCoeff());
  return (cm.array() >= -slack).all();
}

bool OrderedSpace::lex_less(const ConeVector& x, const ConeVector& y) const {
  const Eigen::VectorXd cx = cone_coords(x);
  const Eigen::VectorXd cy = cone_coords(y);
  return std::lexicographical_compare(cx.begin(), cx.end(), cy.begin(), cy.end());
}

std::string to_string(KPlusRejection::Reason reason) {
  switch (reason) {
    case KPlusRejection::Reason::not_finite: return "operator has non-finite entries";
    case KPlusRejection::Reason::not_positive: return "operator maps an extreme ray outside the cone";
    case KPlusRejection::Reason::not_dominated: return "image of an extreme ray is not a multiple of the ray";
    case KPlusRejection::Reason::factor_not_below_one: return "contraction factor is not below 1";
    case KPlusRejection::Reason::not_injective: return "operator is not injective";
  }
  return "unknown";
}

namespace {

struct KPlusAnalysis {
  std::optional<KPlusRejection> rejection;
  double factor = 0.0;
};

KPlusAnalysis analyze_kplus(const OrderedSpace& space, const LinearMap& map) {
  const auto m = static_cast<Eigen::Index>(space.dim());
  auto reject = [&](KPlusRejection::Reason reason, Eigen::Index ray) {
    KPlusRejection r{reason, static_cast<std::size_t>(ray), space.ray(static_cast<std::size_t>(ray)), {}};
    r.message = to_string(reason) + " (extreme ray " + std::to_string(ray) + ")";
    return KPlusAnalysis{r, 0.0};
  };
  if (map.rows() != m || map.cols() != m) {
    throw std::invalid_argument("operator dimension does not match the space");
  }
  if (!map.allFinite()) return reject(KPlusRejection::Reason::not_finite, 0);

  const Eigen::MatrixXd cm = space.cone_matrix(map);
  const double slack = space.tol() * std::max(1.0, cm.cwiseAbs().maxCoeff());
  // Column j is the image of ray j in cone coordinates.
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (cm(i, j) < -slack) return reject(KPlusRejection::Reason::not_positive, j);
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != j && cm(i, j) > slack) return reject(KPlusRejection::Reason::not_dominated, j);
    }
  }
  if (!OrderedSpace::is_nonsingular(map)) {
    Eigen::Index j = 0;
    cm.diagonal().minCoeff(&j);
    return reject(KPlusRejection::Reason::not_injective, j);
  }
  Eigen::Index worst = 0;
  const double factor = std::max(0.0, cm.diagonal().maxCoeff(&worst));
  if (factor >= 1.0 - kStrictMargin) return reject(KPlusRejection::Reason::factor_not_below_one, worst);
  return KPlusAnalysis{std::nullopt, factor};
}

}  // namespace

std::optional<KPlusCertificate> kplus_factor(const OrderedSpace& space, const LinearMap& map) {
  const KPlusAnalysis analysis = analyze_kplus(space, map);
  if (analysis.rejection) return std::nullopt;
  return KPlusCertificate(map, analysis.factor);
}

std::optional<KPlusRejection> kplus_rejection(const OrderedSpace& space, const LinearMap& map) {
  return analyze_kplus(space, map).rejection;
}

double spectral_radius_estimate(const LinearMap& map, int iters) {
  if (iters < 1) throw std::invalid_argument("spectral_radius_estimate needs iters >= 1");
  const Eigen::MatrixXd a = map.cwiseAbs();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows());
  double estimate = 0.0;
  for (int k = 0; k < iters; ++k) {
    const Eigen::VectorXd w = a * v;
    const double norm = w.lpNorm<Eigen::Infinity>();
    estimate = norm / v.lpNorm<Eigen::Infinity>();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return estimate;
}

double spectral_radius_estimate(const OrderedSpace& space, const LinearMap& map, int iters) {
  return spectral_radius_estimate(space.cone_matrix(map), iters);
}

}  // namespace conefix
