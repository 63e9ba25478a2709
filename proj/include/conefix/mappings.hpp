#pragma once

#include "conefix/cone_metric.hpp"
#include "conefix/ordered_space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conefix {

/// T: X -> B(X). Every image is a nonempty point set; boundedness is
/// automatic on a finite X.
class SetValuedMap {
 public:
  /// Normalizes each image to a sorted set. Throws std::invalid_argument if
  /// any image is empty.
  explicit SetValuedMap(std::vector<std::vector<PointIndex>> images);

  /// x |-> {f(x)}.
  static SetValuedMap from_function(const std::vector<PointIndex>& f);

  [[nodiscard]] std::size_t size() const { return images_.size(); }
  [[nodiscard]] const PointSet& operator()(PointIndex x) const { return images_[x]; }
  [[nodiscard]] const std::vector<PointSet>& images() const { return images_; }
  [[nodiscard]] bool contains(PointIndex x, PointIndex y) const;
  /// True when every image is a singleton.
  [[nodiscard]] bool is_single_valued() const;

  friend bool operator==(const SetValuedMap&, const SetValuedMap&) = default;

 private:
  std::vector<PointSet> images_;
};

/// Throws std::invalid_argument unless T has one image per point and every
/// image index is in range.
void check_map(const ConeMetricSpace& cms, const SetValuedMap& map);

/// One violated instance of a contraction-type inequality lhs ⪯ rhs.
/// For the s-contraction check lhs is H(Tx, Ty) and rhs is k d(x, y).
/// For the Caristi check y ranges over Tx and rhs is phi(x) - phi(y).
struct PairWitness {
  PointIndex x;
  PointIndex y;
  ConeVector lhs;
  ConeVector rhs;
};

struct ClassifierReport {
  std::string condition;
  bool holds = true;
  /// Scanned in row-major (x, y) order.
  std::vector<PairWitness> witnesses;
  /// Operators the check was run with, keyed by role (delta, L, k, alpha).
  std::map<std::string, LinearMap> parameters;
  /// Certified factor t, when one of the parameters is a K₊ member.
  std::optional<double> factor;
};

/// phi_T(x) = d(x, Tx).
Potential phi_T(const ConeMetricSpace& cms, const SetValuedMap& map);

/// H(Tx, Ty) ⪯ delta d(x, y) + L d(y, Tx) for all ordered pairs.
/// Throws PreconditionError if L is not a positive operator.
ClassifierReport check_weak_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                        const KPlusCertificate& delta, const LinearMap& l);

/// H(Tx, Ty) ⪯ k d(x, y) for all pairs. The report's factor is the scalar t
/// for which the condition is equivalent to H(Tx, Ty) ⪯ t d(x, y).
ClassifierReport check_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                   const KPlusCertificate& k);

/// k d(x, y) ∈ s(Tx, Ty) for all x != y. The diagonal is exempt since k θ = θ
/// can never be ≻ θ.
ClassifierReport check_s_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                     const KPlusCertificate& k);

/// H(Tx, Ty) ⪯ alpha [d(x, Tx) + d(y, Ty)].
/// Throws PreconditionError if 2 alpha is not in K₊(E).
ClassifierReport check_kannan(const ConeMetricSpace& cms, const SetValuedMap& map, const LinearMap& alpha);

/// H(Tx, Ty) ⪯ alpha [d(x, Ty) + d(y, Tx)].
/// Throws PreconditionError if 2 alpha is not in K₊(E).
ClassifierReport check_chatterjea(const ConeMetricSpace& cms, const SetValuedMap& map,
                                  const LinearMap& alpha);

/// For each x, {y in Tx : d(x, y) ⪯ (1 + eps) d(x, Tx)}. Condition (S) holds
/// at level eps iff every set is nonempty. Throws std::invalid_argument if
/// eps <= 0.
std::vector<PointSet> condition_S_selectors(const ConeMetricSpace& cms, const SetValuedMap& map, double eps);

/// First point with no admissible successor, if any.
std::optional<PointIndex> condition_S_failure(const std::vector<PointSet>& selectors);

enum class CaristiMode { exists, forall };

/// exists: every x has some y in Tx with d(x, y) ⪯ phi(x) - phi(y).
/// forall: every y in Tx satisfies it.
/// In exists mode a failing x contributes one witness per y in Tx.
ClassifierReport check_caristi_hypothesis(const ConeMetricSpace& cms, const SetValuedMap& map,
                                          const Potential& phi, CaristiMode mode);

std::string to_string(CaristiMode mode);

}  // namespace conefix
