#pragma once

#include "conefix/cone_metric.hpp"
#include "conefix/mappings.hpp"
#include "conefix/ordered_space.hpp"

#include <string>
#include <vector>

namespace conefix {

enum class Method { bishop_phelps, caristi, takahashi, weak_contraction, single_valued };

enum class CertificateKind {
  maximal,             // no y != x* with x* ⪯_phi y
  member_of_image,     // x* ∈ Tx*
  image_is_singleton,  // Tx* = {x*}
  attains_infimum,     // phi(x*) = inf phi
  function_fixed,      // f(x*) = x*
};

/// One verified descent step: d(x_n, x_{n+1}) ⪯ phi(x_n) - phi(x_{n+1}).
struct StepWitness {
  ConeVector distance;
  ConeVector potential_drop;
};

struct Certificate {
  CertificateKind kind = CertificateKind::maximal;
  PointIndex point = 0;
  /// inf phi for attains_infimum, phi(x*) otherwise.
  ConeVector value;
};

struct SolveTrace {
  Method method = Method::bishop_phelps;
  std::vector<PointIndex> iterates;
  std::vector<StepWitness> steps;
  Certificate certificate;
  /// The potential whose Brønsted order the steps climb. For the weak
  /// contraction solver this is the rescaled (c I - delta)^-1 phi_T.
  Potential potential;

  [[nodiscard]] std::size_t iterations() const { return steps.size(); }
  [[nodiscard]] PointIndex result() const { return iterates.back(); }
};

struct FixedPointSets {
  PointSet members;  // x ∈ Tx
  PointSet strict;   // Tx = {x}
};

/// Greedy climb of ⪯_phi from x0 to a maximal element. Among the strict
/// successors of the current point the one with the lexicographically least
/// phi (in cone coordinates) is taken, ties broken by lowest index.
SolveTrace bishop_phelps_climb(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0);

/// Fixed point of T from a ⪯_phi-maximal element. Requires the Caristi
/// hypothesis in the given mode; throws PreconditionError otherwise.
SolveTrace caristi_solve(const ConeMetricSpace& cms, const SetValuedMap& map, const Potential& phi,
                         CaristiMode mode, PointIndex x0 = 0);

/// Picard iteration of f from x0, valid when d(x, f x) ⪯ phi(x) - phi(f x)
/// for every x; throws PreconditionError otherwise.
SolveTrace single_valued_solve(const ConeMetricSpace& cms, const std::vector<PointIndex>& f, const Potential& phi,
                               PointIndex x0 = 0);

/// Point attaining the lattice infimum of phi. Requires that every x0 with
/// inf phi ≺ phi(x0) has a strict ⪯_phi successor; throws PreconditionError
/// naming a stranded point otherwise.
SolveTrace takahashi_solve(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0 = 0);

/// (c I - delta)^-1 applied to phi_T, with c = 1 / (1 + eps). Throws
/// PreconditionError unless c exceeds the certified factor of delta, and
/// InternalError if the inverse is not a positive operator.
Potential weak_contraction_potential(const ConeMetricSpace& cms, const SetValuedMap& map,
                                     const KPlusCertificate& delta, double eps);

/// Fixed point of a (delta, L)-weak contraction satisfying condition (S) at
/// level eps. Follows the selector that picks, among admissible successors,
/// the lexicographically least d(x, y), ties by lowest index.
SolveTrace weak_contraction_solve(const ConeMetricSpace& cms, const SetValuedMap& map,
                                  const KPlusCertificate& delta, const LinearMap& l, double eps,
                                  PointIndex x0 = 0);

FixedPointSets brute_force_fixed_points(const ConeMetricSpace& cms, const SetValuedMap& map);

/// Replays a trace against the instance without any solver state. Returns
/// the list of problems found; empty means the trace and its certificate
/// check out. `map` is required for image certificates, `function` for
/// function_fixed.
std::vector<std::string> check_trace(const ConeMetricSpace& cms, const SolveTrace& trace,
                                     const SetValuedMap* map = nullptr,
                                     const std::vector<PointIndex>* function = nullptr);

std::string to_string(Method method);
std::string to_string(CertificateKind kind);

}  // namespace conefix
