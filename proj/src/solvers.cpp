#include "conefix/solvers.hpp"

#include "conefix/error.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace conefix {

std::string to_string(Method method) {
  switch (method) {
    case Method::bishop_phelps: return "bishop_phelps";
    case Method::caristi: return "caristi";
    case Method::takahashi: return "takahashi";
    case Method::weak_contraction: return "weak_contraction";
    case Method::single_valued: return "single_valued";
  }
  return "unknown";
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::maximal: return "maximal";
    case CertificateKind::member_of_image: return "member_of_image";
    case CertificateKind::image_is_singleton: return "image_is_singleton";
    case CertificateKind::attains_infimum: return "attains_infimum";
    case CertificateKind::function_fixed: return "function_fixed";
  }
  return "unknown";
}

namespace {

void check_start(const ConeMetricSpace& cms, PointIndex x0) {
  if (x0 >= cms.size()) throw std::invalid_argument("start point out of range");
}

/// Appends the step x -> y and checks its Caristi inequality.
void push_step(const ConeMetricSpace& cms, SolveTrace& trace, PointIndex y) {
  const PointIndex x = trace.iterates.back();
  StepWitness step{cms.dist(x, y), trace.potential(x) - trace.potential(y)};
  if (!cms.space().leq(step.distance, step.potential_drop)) {
    throw InternalError("descent step " + cms.label(x) + " -> " + cms.label(y) +
                        " violates d(x, y) <= phi(x) - phi(y)");
  }
  if (std::find(trace.iterates.begin(), trace.iterates.end(), y) != trace.iterates.end()) {
    throw InternalError("descent revisited point " + cms.label(y));
  }
  trace.iterates.push_back(y);
  trace.steps.push_back(std::move(step));
}

/// Climbs ⪯_phi from x0 until no strict successor remains.
void climb(const ConeMetricSpace& cms, SolveTrace& trace, PointIndex x0) {
  const Potential& phi = trace.potential;
  const OrderedSpace& e = cms.space();
  trace.iterates = {x0};
  trace.steps.clear();
  while (true) {
    const PointIndex x = trace.iterates.back();
    std::optional<PointIndex> best;
    for (PointIndex y = 0; y < cms.size(); ++y) {
      if (y == x || !bronsted_leq(cms, phi, x, y)) continue;
      if (!best || e.lex_less(phi(y), phi(*best))) best = y;
    }
    if (!best) return;
    push_step(cms, trace, *best);
  }
}

std::string witness_text(const ConeMetricSpace& cms, const ClassifierReport& report) {
  std::ostringstream out;
  if (report.witnesses.empty()) return "";
  const auto& w = report.witnesses.front();
  out << " (witness x=" << cms.label(w.x) << ", y=" << cms.label(w.y) << ")";
  return out.str();
}

}  // namespace

SolveTrace bishop_phelps_climb(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0) {
  check_potential(cms, phi);
  check_start(cms, x0);
  SolveTrace trace;
  trace.method = Method::bishop_phelps;
  trace.potential = phi;
  climb(cms, trace, x0);
  trace.certificate = {CertificateKind::maximal, trace.result(), phi(trace.result())};
  return trace;
}

SolveTrace caristi_solve(const ConeMetricSpace& cms, const SetValuedMap& map, const Potential& phi,
                         CaristiMode mode, PointIndex x0) {
  check_start(cms, x0);
  const ClassifierReport hypothesis = check_caristi_hypothesis(cms, map, phi, mode);
  if (!hypothesis.holds) {
    throw PreconditionError("Caristi hypothesis (" + to_string(mode) + " mode) fails at x=" +
                            cms.label(hypothesis.witnesses.front().x) + witness_text(cms, hypothesis));
  }
  const auto kind = mode == CaristiMode::exists ? CertificateKind::member_of_image
                                                : CertificateKind::image_is_singleton;
  // A maximal element is a fixed point under the hypothesis; the loop over
  // further starts only matters if that implication were to fail numerically.
  for (PointIndex offset = 0; offset < cms.size(); ++offset) {
    const PointIndex start = (x0 + offset) % cms.size();
    SolveTrace trace;
    trace.method = Method::caristi;
    trace.potential = phi;
    climb(cms, trace, start);
    const PointIndex x = trace.result();
    const bool ok = mode == CaristiMode::exists ? map.contains(x, x) : map(x) == PointSet{x};
    if (ok) {
      trace.certificate = {kind, x, phi(x)};
      return trace;
    }
  }
  throw InternalError("no maximal element is a fixed point although the Caristi hypothesis holds");
}

SolveTrace single_valued_solve(const ConeMetricSpace& cms, const std::vector<PointIndex>& f, const Potential& phi,
                               PointIndex x0) {
  check_potential(cms, phi);
  check_start(cms, x0);
  if (f.size() != cms.size()) throw std::invalid_argument("function must have one value per point");
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f[x] >= cms.size()) throw std::invalid_argument("function value out of range");
    if (!bronsted_leq(cms, phi, x, f[x])) {
      throw PreconditionError("d(x, f(x)) <= phi(x) - phi(f(x)) fails at x=" + cms.label(x));
    }
  }
  SolveTrace trace;
  trace.method = Method::single_valued;
  trace.potential = phi;
  trace.iterates = {x0};
  while (f[trace.result()] != trace.result()) push_step(cms, trace, f[trace.result()]);
  trace.certificate = {CertificateKind::function_fixed, trace.result(), phi(trace.result())};
  return trace;
}

SolveTrace takahashi_solve(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0) {
  check_potential(cms, phi);
  check_start(cms, x0);
  const OrderedSpace& e = cms.space();
  const ConeVector lower = e.inf(phi.values);
  for (PointIndex x = 0; x < cms.size(); ++x) {
    if (!e.strictly_less(lower, phi(x))) continue;
    bool has_successor = false;
    for (PointIndex y = 0; y < cms.size() && !has_successor; ++y) {
      has_successor = y != x && bronsted_leq(cms, phi, x, y);
    }
    if (!has_successor) {
      throw PreconditionError("Takahashi hypothesis fails: inf phi < phi(" + cms.label(x) +
                              ") but no other point y has d(x, y) <= phi(x) - phi(y)");
    }
  }
  SolveTrace trace;
  trace.method = Method::takahashi;
  trace.potential = phi;
  climb(cms, trace, x0);
  if (!e.equal(phi(trace.result()), lower)) {
    throw InternalError("maximal element " + cms.label(trace.result()) + " does not attain inf phi");
  }
  trace.certificate = {CertificateKind::attains_infimum, trace.result(), lower};
  return trace;
}

Potential weak_contraction_potential(const ConeMetricSpace& cms, const SetValuedMap& map,
                                     const KPlusCertificate& delta, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const OrderedSpace& e = cms.space();
  const double c = 1.0 / (1.0 + eps);
  if (!(c > delta.factor())) {
    throw PreconditionError("1/(1+eps) = " + std::to_string(c) + " must exceed the factor of delta (" +
                            std::to_string(delta.factor()) + ")");
  }
  const auto m = static_cast<Eigen::Index>(e.dim());
  const Eigen::MatrixXd shifted = c * Eigen::MatrixXd::Identity(m, m) - e.cone_matrix(delta.map());

  Eigen::MatrixXd off = shifted;
  off.diagonal().setZero();
  Eigen::MatrixXd inverse_cone;
  if (off.cwiseAbs().maxCoeff() <= e.tol() * std::max(1.0, shifted.cwiseAbs().maxCoeff())) {
    inverse_cone = shifted.diagonal().cwiseInverse().asDiagonal();
  } else {
    const auto lu = shifted.fullPivLu();
    if (!lu.isInvertible()) throw InternalError("c I - delta is singular");
    inverse_cone = lu.inverse();
  }
  const Eigen::MatrixXd inverse = e.generators() * inverse_cone * e.generator_inverse();
  if (!e.is_positive_operator(inverse)) throw InternalError("(c I - delta)^-1 is not a positive operator");

  Potential phi = phi_T(cms, map);
  for (auto& v : phi.values) v = inverse * v;
  return phi;
}

SolveTrace weak_contraction_solve(const ConeMetricSpace& cms, const SetValuedMap& map,
                                  const KPlusCertificate& delta, const LinearMap& l, double eps,
                                  PointIndex x0) {
  check_start(cms, x0);
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  const ClassifierReport contraction = check_weak_contraction(cms, map, delta, l);
  if (!contraction.holds) {
    throw PreconditionError("T is not a (delta, L)-weak contraction" + witness_text(cms, contraction));
  }
  const auto selectors = condition_S_selectors(cms, map, eps);
  if (const auto bad = condition_S_failure(selectors)) {
    throw PreconditionError("condition (S) fails at x=" + cms.label(*bad));
  }

  SolveTrace trace;
  trace.method = Method::weak_contraction;
  trace.potential = weak_contraction_potential(cms, map, delta, eps);
  trace.iterates = {x0};
  const OrderedSpace& e = cms.space();
  while (!map.contains(trace.result(), trace.result())) {
    const PointIndex x = trace.result();
    PointIndex best = selectors[x].front();
    for (PointIndex y : selectors[x]) {
      if (e.lex_less(cms.dist(x, y), cms.dist(x, best))) best = y;
    }
    push_step(cms, trace, best);
  }
  trace.certificate = {CertificateKind::member_of_image, trace.result(), trace.potential(trace.result())};
  return trace;
}

FixedPointSets brute_force_fixed_points(const ConeMetricSpace& cms, const SetValuedMap& map) {
  check_map(cms, map);
  FixedPointSets sets;
  for (PointIndex x = 0; x < cms.size(); ++x) {
    if (map.contains(x, x)) sets.members.push_back(x);
    if (map(x) == PointSet{x}) sets.strict.push_back(x);
  }
  return sets;
}

std::vector<std::string> check_trace(const ConeMetricSpace& cms, const SolveTrace& trace, const SetValuedMap* map,
                                     const std::vector<PointIndex>* function) {
  std::vector<std::string> problems;
  const OrderedSpace& e = cms.space();
  const Potential& phi = trace.potential;
  const std::size_t n = cms.size();

  if (phi.size() != n) return {"trace potential has the wrong number of points"};
  if (trace.iterates.empty()) return {"trace has no iterates"};
  for (PointIndex p : trace.iterates) {
    if (p >= n) return {"trace visits a point outside the space"};
  }
  if (trace.steps.size() + 1 != trace.iterates.size()) problems.emplace_back("step count does not match iterates");
  if (trace.iterations() > n) problems.emplace_back("more iterations than points");

  PointSet seen = make_point_set(trace.iterates);
  if (seen.size() != trace.iterates.size()) problems.emplace_back("iterates repeat a point");

  for (std::size_t s = 0; s < trace.steps.size() && s + 1 < trace.iterates.size(); ++s) {
    const PointIndex x = trace.iterates[s];
    const PointIndex y = trace.iterates[s + 1];
    const StepWitness& w = trace.steps[s];
    const std::string where = " at step " + std::to_string(s + 1);
    if (!e.equal(w.distance, cms.dist(x, y))) problems.push_back("recorded distance is wrong" + where);
    if (!e.equal(w.potential_drop, phi(x) - phi(y))) problems.push_back("recorded potential drop is wrong" + where);
    if (!e.leq(w.distance, w.potential_drop)) problems.push_back("Caristi inequality fails" + where);
    if (!e.leq(phi(y), phi(x))) problems.push_back("potential increases" + where);
  }

  const PointIndex x = trace.iterates.back();
  const Certificate& cert = trace.certificate;
  if (cert.point != x) problems.emplace_back("certificate point is not the last iterate");

  const bool climbs = trace.method == Method::bishop_phelps || trace.method == Method::caristi ||
                      trace.method == Method::takahashi;
  if (climbs) {
    for (PointIndex y = 0; y < n; ++y) {
      if (y != x && bronsted_leq(cms, phi, x, y)) {
        problems.push_back("last iterate is not maximal: " + cms.label(y) + " lies above it");
        break;
      }
    }
  }

  switch (cert.kind) {
    case CertificateKind::maximal:
      break;
    case CertificateKind::member_of_image:
      if (!map) problems.emplace_back("map required to check x* in Tx*");
      else if (!map->contains(x, x)) problems.emplace_back("x* is not in Tx*");
      break;
    case CertificateKind::image_is_singleton:
      if (!map) problems.emplace_back("map required to check Tx* = {x*}");
      else if ((*map)(x) != PointSet{x}) problems.emplace_back("Tx* is not {x*}");
      break;
    case CertificateKind::attains_infimum:
      if (!e.equal(phi(x), e.inf(phi.values))) problems.emplace_back("phi(x*) is not inf phi");
      break;
    case CertificateKind::function_fixed:
      if (!function) problems.emplace_back("function required to check f(x*) = x*");
      else if ((*function).at(x) != x) problems.emplace_back("f(x*) != x*");
      break;
  }
  return problems;
}

}  // namespace conefix
