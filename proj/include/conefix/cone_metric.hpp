#pragma once

#include "conefix/ordered_space.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace conefix {

using PointIndex = std::size_t;
/// Sorted, duplicate-free set of point indices.
using PointSet = std::vector<PointIndex>;

/// Sorts and deduplicates.
PointSet make_point_set(std::vector<PointIndex> points);

/// Finite cone metric space: n labeled points and an n×n table of distances
/// in E. Construction checks only shapes and finiteness; the metric axioms
/// are checked by validate_cone_metric so that broken tables can be reported.
class ConeMetricSpace {
 public:
  using Table = std::vector<std::vector<ConeVector>>;

  ConeMetricSpace(OrderedSpace space, std::vector<std::string> labels, Table dist);

  /// d(x, y) = rho(x, y) * weight for a scalar table rho.
  static ConeMetricSpace scaled_scalar(OrderedSpace space, std::vector<std::string> labels,
                                       const std::vector<std::vector<double>>& rho,
                                       const ConeVector& weight);

  [[nodiscard]] const OrderedSpace& space() const { return space_; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(PointIndex i) const { return labels_.at(i); }
  [[nodiscard]] const ConeVector& dist(PointIndex i, PointIndex j) const { return dist_[i][j]; }
  [[nodiscard]] const Table& table() const { return dist_; }

  /// Throws std::out_of_range for an unknown label.
  [[nodiscard]] PointIndex index_of(const std::string& label) const;
  /// Throws std::invalid_argument if the set is empty or has an index >= n.
  void check_set(const PointSet& set) const;

 private:
  OrderedSpace space_;
  std::vector<std::string> labels_;
  Table dist_;
};

/// phi(x) per point. On a finite X every such table is lower semicontinuous
/// and bounded below.
struct Potential {
  std::vector<ConeVector> values;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] const ConeVector& operator()(PointIndex x) const { return values[x]; }
};

/// Outcome of checking the two cone metric axioms on a table.
struct ValidationReport {
  static constexpr std::size_t kMaxWitnesses = 32;

  enum class Derived { not_checked, verified, violated };

  /// (i, j) with i != j and d(i, j) = θ, or i == j and d(i, i) != θ.
  std::vector<std::array<PointIndex, 2>> identity_witnesses;
  /// (i, j, k) with d(i, j) ⋠ d(i, k) + d(j, k).
  std::vector<std::array<PointIndex, 3>> triangle_witnesses;
  std::size_t identity_violations = 0;
  std::size_t triangle_violations = 0;

  /// Symmetry and θ ⪯ d, which follow from the axioms. Checked only when the
  /// axioms pass.
  Derived derived = Derived::not_checked;
  std::vector<std::array<PointIndex, 2>> derived_witnesses;

  [[nodiscard]] bool passes() const { return identity_violations == 0 && triangle_violations == 0; }
  [[nodiscard]] std::string summary(const ConeMetricSpace& cms) const;
};

ValidationReport validate_cone_metric(const ConeMetricSpace& cms);

/// d(x, A) = inf_{y in A} d(x, y), a lattice infimum that need not be attained.
ConeVector dist_point_to_set(const ConeMetricSpace& cms, PointIndex x, const PointSet& set);

/// H(A, B) = sup{ sup_{a in A} d(a, B), sup_{b in B} d(b, A) }.
ConeVector hausdorff(const ConeMetricSpace& cms, const PointSet& a, const PointSet& b);

/// eps ∈ s(x, B): eps ≻ θ and d(x, b) ⪯ eps for some b in B.
bool s_membership(const ConeMetricSpace& cms, const ConeVector& eps, PointIndex x, const PointSet& b);
/// eps ∈ s(A, B): eps ≻ θ, every a has some b within eps, and every b has
/// some a within eps.
bool s_membership(const ConeMetricSpace& cms, const ConeVector& eps, const PointSet& a, const PointSet& b);

/// x ⪯_phi y  iff  d(x, y) ⪯ phi(x) - phi(y).
bool bronsted_leq(const ConeMetricSpace& cms, const Potential& phi, PointIndex x, PointIndex y);

/// Every x* with x0 ⪯_phi x* and no y != x* above it. Exhaustive.
PointSet bronsted_maximal_oracle(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0);

/// Throws std::invalid_argument unless phi has one value of dimension m per point.
void check_potential(const ConeMetricSpace& cms, const Potential& phi);

}  // namespace conefix
