#pragma once

#include "conefix/instance.hpp"
#include "conefix/random.hpp"

#include <cstdint>
#include <string>

namespace conefix {

enum class InstanceKind { random_metric, caristi, weak_contraction, takahashi };

/// Rejection-sampling attempts before a generator gives up.
inline constexpr int kGenerationBudget = 10000;

/// Deterministic in (kind, n, m, seed). Every generated instance satisfies
/// the hypotheses its kind advertises; they are re-checked by the matching
/// classifier before returning, and a failure there throws InternalError.
///
///   random_metric     d = rho * w from a random point cloud, w in int(P);
///                     also a random map T, potential phi, k in K₊ and
///                     positive L
///   caristi           potential phi with maps T (exists-mode hypothesis),
///                     T_forall (forall-mode) and single-valued f
///   weak_contraction  map T with a planted fixed point that is a
///                     (delta, L)-weak contraction, delta = t I, satisfying
///                     condition (S) at params.epsilon
///   takahashi         potential phi whose lattice infimum is attained and
///                     which satisfies the descent hypothesis
///
/// Throws PreconditionError("generation budget exhausted") if rejection
/// sampling does not succeed within kGenerationBudget attempts.
Instance generate_instance(InstanceKind kind, std::size_t n, std::size_t m, std::uint64_t seed);

InstanceKind parse_instance_kind(const std::string& text);
std::string to_string(InstanceKind kind);

// Building blocks, shared with the property suites.

OrderedSpace random_space(Rng& rng, std::size_t m);
/// Point cloud in [0, 10]^dim with pairwise distances at least 0.05.
std::vector<std::vector<double>> random_cloud(Rng& rng, std::size_t n, std::size_t dim);
/// Tabulated sum of one to three scaled Euclidean metrics. The first weight
/// is interior to P, later ones may sit on the boundary, so distances are in
/// general pairwise incomparable.
MetricSpec random_table_metric(Rng& rng, const OrderedSpace& space, std::size_t n);
/// rho * weight for a Euclidean rho on a random cloud.
MetricSpec random_scaled_metric(Rng& rng, std::size_t n, const ConeVector& weight);
/// Random vector in int(P).
ConeVector random_interior(Rng& rng, const OrderedSpace& space, double lo = 0.2, double hi = 1.5);
/// Potential mixing a random ranking, scaled to the metric, with noise and a
/// common offset, so that ⪯_phi has both long chains and incomparable pairs.
Potential random_potential(Rng& rng, const ConeMetricSpace& cms);
SetValuedMap random_map(Rng& rng, std::size_t n, std::size_t max_image);
/// G D G^-1 with D diagonal, entries uniform in [lo, hi].
LinearMap random_kplus(Rng& rng, const OrderedSpace& space, double lo, double hi);
/// G N G^-1 with N entrywise nonnegative, entries uniform in [0, scale].
LinearMap random_positive(Rng& rng, const OrderedSpace& space, double scale);
/// Largest cone coordinate over all distances, at least 1e-3.
double metric_scale(const ConeMetricSpace& cms);

/// Instance with only a space and points, metric built from `metric`.
Instance make_instance(OrderedSpace space, std::size_t n, MetricSpec metric, std::uint64_t seed,
                       std::string description);

/// Points on a line with d(x, y) = (|x - y|, alpha |x - y|) in R^2 ordered
/// componentwise.
Instance huang_zhang_instance(double alpha, std::size_t n, std::uint64_t seed);

}  // namespace conefix
