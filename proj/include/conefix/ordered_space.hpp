#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace conefix {

/// Element of E = R^m in ambient coordinates.
using ConeVector = Eigen::VectorXd;
/// Linear operator on E in ambient coordinates.
using LinearMap = Eigen::MatrixXd;

inline constexpr double kDefaultTolerance = 1e-9;
/// Relative determinant threshold below which a matrix counts as singular.
inline constexpr double kSingularThreshold = 1e-12;
/// Certified contraction factors must stay below 1 - kStrictMargin.
inline constexpr double kStrictMargin = 1e-12;

/// Default comparison tolerance. Honors the CONE_FIXPOINT_TOL environment
/// variable when it holds a nonnegative finite number.
double default_tolerance();

/// E = R^m ordered by the simplicial cone P = { G c : c >= 0 }.
///
/// The columns of G are the extreme rays of P. Because P is simplicial the
/// induced order makes E a vector lattice: in cone coordinates c = G^-1 x the
/// order is componentwise, so infima and suprema of finite sets exist and are
/// componentwise min and max. Every bounded monotone sequence then has an
/// infimum as well (sigma-order completeness), and int(P) is nonempty.
///
/// All comparisons are done in cone coordinates with tolerance tol, scaled by
/// the largest absolute cone coordinate of the operands (absolute below 1).
class OrderedSpace {
 public:
  /// One-dimensional space ordered by the nonnegative reals.
  OrderedSpace();

  /// Throws std::invalid_argument if G is not square, not finite, singular,
  /// or tol is negative.
  explicit OrderedSpace(const Eigen::MatrixXd& generators, double tol = default_tolerance());

  static OrderedSpace standard(std::size_t dim, double tol = default_tolerance());

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(generators_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& generators() const { return generators_; }
  [[nodiscard]] const Eigen::MatrixXd& generator_inverse() const { return gen_inverse_; }
  [[nodiscard]] double tol() const { return tol_; }

  [[nodiscard]] ConeVector zero() const { return ConeVector::Zero(generators_.rows()); }
  /// The i-th extreme ray G e_i.
  [[nodiscard]] ConeVector ray(std::size_t i) const { return generators_.col(static_cast<Eigen::Index>(i)); }

  /// c = G^-1 x, so that x in P iff c >= 0.
  [[nodiscard]] Eigen::VectorXd cone_coords(const ConeVector& x) const;
  [[nodiscard]] ConeVector from_cone_coords(const Eigen::VectorXd& c) const;
  /// G^-1 M G: the operator expressed in the cone basis.
  [[nodiscard]] Eigen::MatrixXd cone_matrix(const LinearMap& map) const;

  /// x ⪯ y, i.e. y - x in P.
  [[nodiscard]] bool leq(const ConeVector& x, const ConeVector& y) const;
  /// x ≪ y, i.e. y - x in int(P): every cone coordinate strictly positive.
  [[nodiscard]] bool interior_less(const ConeVector& x, const ConeVector& y) const;
  /// x ≺ y: x ⪯ y and x != y.
  [[nodiscard]] bool strictly_less(const ConeVector& x, const ConeVector& y) const;
  /// x ⪯ y and y ⪯ x.
  [[nodiscard]] bool equal(const ConeVector& x, const ConeVector& y) const;
  [[nodiscard]] bool is_zero(const ConeVector& x) const { return equal(x, zero()); }
  [[nodiscard]] bool in_cone(const ConeVector& x) const { return leq(zero(), x); }

  /// Greatest lower bound of a nonempty finite set. Throws
  /// std::invalid_argument("empty lattice operand") on an empty set.
  [[nodiscard]] ConeVector inf(std::span<const ConeVector> values) const;
  [[nodiscard]] ConeVector sup(std::span<const ConeVector> values) const;
  [[nodiscard]] ConeVector inf(const ConeVector& a, const ConeVector& b) const;
  [[nodiscard]] ConeVector sup(const ConeVector& a, const ConeVector& b) const;

  /// |x| = sup{x, -x}.
  [[nodiscard]] ConeVector abs(const ConeVector& x) const;

  /// M(P) ⊆ P, checked as G^-1 M G >= -tol entrywise.
  [[nodiscard]] bool is_positive_operator(const LinearMap& map) const;

  /// Lexicographic comparison of cone coordinates (exact, no tolerance).
  [[nodiscard]] bool lex_less(const ConeVector& x, const ConeVector& y) const;

  /// |det M| > kSingularThreshold * (max column norm)^m.
  [[nodiscard]] static bool is_nonsingular(const Eigen::MatrixXd& matrix);

 private:
  [[nodiscard]] double scale_of(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  Eigen::MatrixXd generators_;
  Eigen::MatrixXd gen_inverse_;
  double tol_ = kDefaultTolerance;
};

/// A member of K₊(E): positive, injective linear operator with
/// θ ⪯ M x ⪯ t x on P for the minimal factor t < 1.
/// Only obtainable through kplus_factor.
class KPlusCertificate {
 public:
  [[nodiscard]] const LinearMap& map() const { return map_; }
  [[nodiscard]] double factor() const { return factor_; }

 private:
  KPlusCertificate(LinearMap map, double factor) : map_(std::move(map)), factor_(factor) {}
  friend std::optional<KPlusCertificate> kplus_factor(const OrderedSpace&, const LinearMap&);

  LinearMap map_;
  double factor_;
};

/// Why an operator is not in K₊(E), with the extreme ray that exposes it.
struct KPlusRejection {
  enum class Reason { not_finite, not_positive, not_dominated, factor_not_below_one, not_injective };
  Reason reason;
  std::size_t ray = 0;
  ConeVector ray_vector;
  std::string message;
};

/// Certificate with the minimal t, or nullopt when M is not in K₊(E).
///
/// For a simplicial cone, θ ⪯ M x ⪯ t x on every extreme ray forces G^-1 M G
/// to be diagonal with entries in [0, t]; injectivity removes zero entries.
/// The minimal factor is therefore the largest diagonal entry.
std::optional<KPlusCertificate> kplus_factor(const OrderedSpace& space, const LinearMap& map);

/// The first reason kplus_factor rejects M, or nullopt when it accepts.
std::optional<KPlusRejection> kplus_rejection(const OrderedSpace& space, const LinearMap& map);

/// Power-iteration estimate of the spectral radius of |M| (entrywise).
double spectral_radius_estimate(const LinearMap& map, int iters = 1000);
/// Same, applied to |G^-1 M G|.
double spectral_radius_estimate(const OrderedSpace& space, const LinearMap& map, int iters = 1000);

std::string to_string(KPlusRejection::Reason reason);

}  // namespace conefix
