#include "conefix/property_suite.hpp"

#include "conefix/error.hpp"
#include "conefix/generator.hpp"
#include "conefix/oracles.hpp"
#include "conefix/random.hpp"
#include "conefix/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace conefix {

namespace {

using Verdict = std::optional<std::string>;

/// Seed for randomness a check draws on its own, distinct from the stream
/// that generated the instance.
Rng check_rng(const Instance& inst) { return Rng(inst.meta.seed ^ 0x9e3779b97f4a7c15ULL); }

std::string str(const ConeVector& v) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  out << ')';
  return out.str();
}

ConeVector random_vector(Rng& rng, const OrderedSpace& e, double lo, double hi) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(e.dim()));
  for (auto& ci : c) ci = rng.uniform(lo, hi);
  return e.from_cone_coords(c);
}

/// Random element of P, with each cone coordinate zero with probability p_zero.
ConeVector random_cone_element(Rng& rng, const OrderedSpace& e, double hi, double p_zero = 0.3) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(e.dim()));
  for (auto& ci : c) ci = rng.bernoulli(p_zero) ? 0.0 : rng.uniform(0.0, hi);
  return e.from_cone_coords(c);
}

PointSet random_subset(Rng& rng, std::size_t n) {
  std::vector<PointIndex> pts;
  const std::size_t size = rng.between(1, n);
  for (std::size_t k = 0; k < size; ++k) pts.push_back(rng.index(n));
  return make_point_set(std::move(pts));
}

std::string pair(const ConeMetricSpace& cms, PointIndex x, PointIndex y) {
  return "(" + cms.label(x) + "," + cms.label(y) + ")";
}

/// A single-point instance carrying only an ordered space.
Instance space_instance(std::uint64_t seed, std::size_t max_dim = 4) {
  Rng rng(seed);
  const std::size_t m = rng.between(1, max_dim);
  OrderedSpace space = random_space(rng, m);
  MetricSpec metric;
  metric.table = {{space.zero()}};
  return make_instance(space, 1, std::move(metric), seed, "ordered space");
}

Instance space_instance_default(std::uint64_t seed) { return space_instance(seed); }

Instance metric_instance(Rng& rng, std::uint64_t seed, std::size_t min_n = 1) {
  const std::size_t n = rng.between(min_n, 8);
  const std::size_t m = rng.between(1, 4);
  OrderedSpace space = random_space(rng, m);
  return make_instance(space, n, random_table_metric(rng, space, n), seed, "random cone metric space");
}

std::size_t random_n(Rng& rng) { return rng.between(1, 8); }
std::size_t random_m(Rng& rng) { return rng.between(1, 4); }

// ---------------------------------------------------------------- ordered space

Verdict check_order_axioms(const Instance& inst) {
  const OrderedSpace& e = inst.space;
  Rng rng = check_rng(inst);
  for (int trial = 0; trial < 300; ++trial) {
    const ConeVector x = random_vector(rng, e, -5.0, 5.0);
    const ConeVector y = rng.bernoulli(0.7) ? ConeVector(x + random_cone_element(rng, e, 3.0))
                                            : random_vector(rng, e, -5.0, 5.0);
    const ConeVector z = rng.bernoulli(0.7) ? ConeVector(y + random_cone_element(rng, e, 3.0))
                                            : random_vector(rng, e, -5.0, 5.0);
    if (!e.leq(x, x)) return "leq is not reflexive at " + str(x);
    if (e.leq(x, y) && e.leq(y, x)) {
      const double gap = e.cone_coords(ConeVector(x - y)).cwiseAbs().maxCoeff();
      const double scale = std::max({1.0, e.cone_coords(x).cwiseAbs().maxCoeff(), e.cone_coords(y).cwiseAbs().maxCoeff()});
      if (gap > e.tol() * scale) return "leq is not antisymmetric at " + str(x) + ", " + str(y);
    }
    if (e.leq(x, y) && e.leq(y, z) && !e.leq(x, z)) {
      return "leq is not transitive at " + str(x) + ", " + str(y) + ", " + str(z);
    }
    if (e.interior_less(x, y) && !e.leq(x, y)) return "x << y without x <= y";
    if (e.strictly_less(x, y) && e.equal(x, y)) return "x < y with x = y";
    const ConeVector nudged = x + e.from_cone_coords(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(e.dim()), 1e-13));
    if (!e.equal(x, nudged)) return "sub-tolerance perturbation breaks equality";
  }
  return std::nullopt;
}

Verdict check_remark_r1(const Instance& inst) {
  const OrderedSpace& e = inst.space;
  Rng rng = check_rng(inst);
  std::size_t premises = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const ConeVector b = random_vector(rng, e, -5.0, 5.0);
    const ConeVector a = rng.bernoulli(0.8) ? ConeVector(b - random_cone_element(rng, e, 3.0, 0.4))
                                            : random_vector(rng, e, -5.0, 5.0);
    const ConeVector c = rng.bernoulli(0.8) ? ConeVector(b + random_vector(rng, e, 1e-3, 3.0))
                                            : random_vector(rng, e, -5.0, 5.0);
    if (e.leq(a, b) && e.interior_less(b, c)) {
      ++premises;
      if (!e.interior_less(a, c)) return "a <= b << c but not a << c for a=" + str(a) + " b=" + str(b) + " c=" + str(c);
    }
  }
  if (premises == 0) return "no triple satisfied the premise";
  return std::nullopt;
}

Verdict check_lattice_laws(const Instance& inst) {
  const OrderedSpace& e = inst.space;
  Rng rng = check_rng(inst);
  auto random_set = [&] {
    std::vector<ConeVector> s;
    const std::size_t size = rng.between(1, 5);
    for (std::size_t k = 0; k < size; ++k) s.push_back(random_vector(rng, e, -5.0, 5.0));
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_set();
    const auto t = random_set();
    const ConeVector lo = e.inf(s);
    const ConeVector hi = e.sup(s);
    for (const auto& v : s) {
      if (!e.leq(lo, v) || !e.leq(v, hi)) return "inf/sup is not a bound of " + str(v);
    }
    // Any lower bound sits below the infimum.
    const ConeVector candidate = s[rng.index(s.size())] - random_cone_element(rng, e, 3.0);
    const bool is_lower = std::all_of(s.begin(), s.end(), [&](const ConeVector& v) { return e.leq(candidate, v); });
    if (is_lower && !e.leq(candidate, lo)) return "a lower bound exceeds the infimum";
    const ConeVector upper = s[rng.index(s.size())] + random_cone_element(rng, e, 3.0);
    const bool is_upper = std::all_of(s.begin(), s.end(), [&](const ConeVector& v) { return e.leq(v, upper); });
    if (is_upper && !e.leq(hi, upper)) return "an upper bound is below the supremum";

    const ConeVector& a = s.front();
    const ConeVector& b = t.front();
    if (!e.equal(e.inf(a, a), a) || !e.equal(e.sup(a, a), a)) return "inf/sup not idempotent";
    if (!e.equal(e.inf(a, b), e.inf(b, a)) || !e.equal(e.sup(a, b), e.sup(b, a))) return "inf/sup not commutative";
    std::vector<ConeVector> both = s;
    both.insert(both.end(), t.begin(), t.end());
    if (!e.equal(e.inf(both), e.inf(e.inf(s), e.inf(t)))) return "inf not associative under union";
    if (!e.equal(e.sup(both), e.sup(e.sup(s), e.sup(t)))) return "sup not associative under union";

    const ConeVector shift = random_vector(rng, e, -5.0, 5.0);
    std::vector<ConeVector> shifted;
    for (const auto& v : s) shifted.push_back(v + shift);
    if (!e.equal(e.inf(shifted), lo + shift)) return "inf not translation invariant";

    const ConeVector absolute = e.abs(a);
    if (!e.in_cone(absolute) || !e.leq(a, absolute) || !e.leq(ConeVector(-a), absolute)) return "|x| is not above x, -x, 0";
    const ConeVector positive = random_cone_element(rng, e, 3.0);
    if (!e.equal(e.abs(positive), positive)) return "|x| != x for x in P";
  }
  return std::nullopt;
}

LinearMap random_operator_case(Rng& rng, const OrderedSpace& e, int category) {
  const auto m = static_cast<Eigen::Index>(e.dim());
  Eigen::VectorXd d(m);
  for (auto& v : d) v = rng.uniform(0.01, 0.99);
  Eigen::MatrixXd cone = d.asDiagonal();
  const Eigen::Index pick = static_cast<Eigen::Index>(rng.index(e.dim()));
  switch (category) {
    case 1: cone(pick, pick) = rng.uniform(1.0, 1.5); break;
    case 2:
      if (m > 1) {
        Eigen::Index j = static_cast<Eigen::Index>(rng.index(e.dim() - 1));
        if (j >= pick) ++j;
        cone(pick, j) = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(1e-3, 0.5);
      }
      break;
    case 3: {
      Eigen::MatrixXd dense(m, m);
      for (auto& v : dense.reshaped()) v = rng.uniform(-1.0, 1.0);
      return dense;
    }
    case 4: cone(pick, pick) = 0.0; break;
    case 5: cone(pick, pick) = -rng.uniform(1e-3, 0.5); break;
    default: break;
  }
  return e.generators() * cone * e.generator_inverse();
}

Instance gen_kplus(std::uint64_t seed) {
  Instance inst = space_instance(seed);
  Rng rng(seed + 1);
  const int category = static_cast<int>(rng.index(6));
  inst.operators.emplace("M", random_operator_case(rng, inst.space, category));
  inst.meta.params["category"] = category;
  return inst;
}

Verdict check_kplus(const Instance& inst) {
  const OrderedSpace& e = inst.space;
  const LinearMap& map = inst.op("M");
  const auto cert = kplus_factor(e, map);
  const auto oracle = oracle::kplus_ray_oracle(e, map, inst.meta.seed);
  if (cert.has_value() != oracle.member) {
    return std::string("kplus_factor ") + (cert ? "accepts" : "rejects") + " but the ray oracle " +
           (oracle.member ? "accepts" : "rejects: " + oracle.reason);
  }
  if (!cert) {
    if (!kplus_rejection(e, map)) return "rejected operator without a rejection witness";
    return std::nullopt;
  }
  if (std::abs(cert->factor() - oracle.factor) > 1e-6) {
    return "factor " + std::to_string(cert->factor()) + " differs from oracle " + std::to_string(oracle.factor);
  }
  const double rho = spectral_radius_estimate(e, map, 1000);
  if (rho > cert->factor() + 1e-6) {
    return "spectral radius " + std::to_string(rho) + " exceeds factor " + std::to_string(cert->factor());
  }
  Rng rng = check_rng(inst);
  for (int k = 0; k < 1000; ++k) {
    const ConeVector x = random_vector(rng, e, -5.0, 5.0);
    if (!e.leq(e.abs(map * x), map * e.abs(x))) return "|delta x| <= delta |x| fails at " + str(x);
  }
  return std::nullopt;
}

Instance gen_kplus_pair(std::uint64_t seed) {
  Instance inst = space_instance(seed);
  Rng rng(seed + 1);
  inst.operators.emplace("delta1", random_kplus(rng, inst.space, 0.01, 0.99));
  inst.operators.emplace("delta2", random_kplus(rng, inst.space, 0.01, 0.99));
  return inst;
}

Verdict check_kplus_closure(const Instance& inst) {
  const OrderedSpace& e = inst.space;
  const auto c1 = kplus_factor(e, inst.op("delta1"));
  const auto c2 = kplus_factor(e, inst.op("delta2"));
  if (!c1 || !c2) return "generated operator is not in K+";
  const LinearMap product = c1->map() * c2->map();
  const auto oracle = oracle::kplus_ray_oracle(e, product, inst.meta.seed);
  if (!oracle.member) return "composition rejected by the ray oracle: " + oracle.reason;
  if (oracle.factor > c1->factor() * c2->factor() + 1e-9) {
    return "composition factor " + std::to_string(oracle.factor) + " exceeds t1*t2";
  }
  if (!kplus_factor(e, product)) return "composition rejected by kplus_factor";
  return std::nullopt;
}

// ---------------------------------------------------------------- cone metric

Instance gen_remark_r2(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed);
  inst.meta.description = "cone metric table passing both axioms";
  const std::size_t n = inst.points.size();
  if (n >= 2 && rng.bernoulli(0.5)) {
    // Try an asymmetric or sign-breaking edit; keep it only if the axioms
    // still pass, which the derived properties say cannot happen.
    Instance edited = inst;
    const PointIndex i = rng.index(n);
    PointIndex j = rng.index(n - 1);
    if (j >= i) ++j;
    const ConeVector delta = random_cone_element(rng, inst.space, 0.5) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
    edited.metric.table[i][j] += delta;
    if (validate_cone_metric(edited.metric_space()).passes()) return edited;
  }
  return inst;
}

Verdict check_remark_r2(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  if (!validate_cone_metric(cms).passes()) return "generated table does not satisfy the axioms";
  const OrderedSpace& e = cms.space();
  for (PointIndex i = 0; i < cms.size(); ++i) {
    for (PointIndex j = 0; j < cms.size(); ++j) {
      if (!e.equal(cms.dist(i, j), cms.dist(j, i))) return "d is not symmetric at " + pair(cms, i, j);
      if (!e.in_cone(cms.dist(i, j))) return "d is not >= 0 at " + pair(cms, i, j);
    }
  }
  return std::nullopt;
}

Instance gen_validation_soundness(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed, 3);
  inst.meta.description = "cone metric table with one broken triangle inequality";
  const std::size_t n = inst.points.size();
  std::vector<PointIndex> idx(n);
  for (PointIndex p = 0; p < n; ++p) idx[p] = p;
  rng.shuffle(idx);
  const PointIndex i = idx[0], j = idx[1], k = idx[2];
  const ConeMetricSpace cms = inst.metric_space();
  const ConeVector broken =
      cms.dist(i, k) + cms.dist(j, k) + random_vector(rng, inst.space, 0.01, 1.0) * metric_scale(cms);
  inst.metric.table[i][j] = broken;
  inst.metric.table[j][i] = broken;
  return inst;
}

Verdict check_validation_soundness(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const OrderedSpace& e = cms.space();
  const ValidationReport report = validate_cone_metric(cms);
  std::size_t violations = 0;
  for (PointIndex i = 0; i < cms.size(); ++i) {
    for (PointIndex j = 0; j < cms.size(); ++j) {
      for (PointIndex k = 0; k < cms.size(); ++k) {
        const Eigen::VectorXd gap = e.cone_coords(ConeVector(cms.dist(i, k) + cms.dist(j, k) - cms.dist(i, j)));
        const double scale = std::max({1.0, e.cone_coords(cms.dist(i, j)).cwiseAbs().maxCoeff(),
                                       e.cone_coords(ConeVector(cms.dist(i, k) + cms.dist(j, k))).cwiseAbs().maxCoeff()});
        if (gap.minCoeff() < -e.tol() * scale) ++violations;
      }
    }
  }
  if (report.triangle_violations != violations) {
    return "validator counts " + std::to_string(report.triangle_violations) + " triangle violations, scan finds " +
           std::to_string(violations);
  }
  for (const auto& w : report.triangle_witnesses) {
    if (e.leq(cms.dist(w[0], w[1]), ConeVector(cms.dist(w[0], w[2]) + cms.dist(w[1], w[2])))) {
      return "witness (" + cms.label(w[0]) + "," + cms.label(w[1]) + "," + cms.label(w[2]) + ") is not a violation";
    }
  }
  if (report.passes() != (violations == 0 && report.identity_violations == 0)) return "pass flag is inconsistent";
  return std::nullopt;
}

Instance gen_metric(std::uint64_t seed) {
  Rng rng(seed);
  return metric_instance(rng, seed);
}

Verdict check_cone_metric_sets(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const OrderedSpace& e = cms.space();
  const std::size_t n = cms.size();
  Rng rng = check_rng(inst);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet a = random_subset(rng, n);
    const PointSet b = random_subset(rng, n);
    const PointIndex x = rng.index(n);
    PointSet ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    ab = make_point_set(std::move(ab));
    const ConeVector union_dist = dist_point_to_set(cms, x, ab);
    if (!e.equal(union_dist, e.inf(dist_point_to_set(cms, x, a), dist_point_to_set(cms, x, b)))) {
      return "d(x, A u B) != inf{d(x, A), d(x, B)}";
    }
    for (PointIndex y : a) {
      if (!e.leq(dist_point_to_set(cms, x, a), cms.dist(x, y))) return "d(x, A) is not below d(x, a)";
    }
    if (!e.equal(hausdorff(cms, a, b), hausdorff(cms, b, a))) return "H is not symmetric";
    if (!e.is_zero(hausdorff(cms, a, a))) return "H(A, A) != 0";
    const PointIndex y = rng.index(n);
    if (!e.equal(hausdorff(cms, {x}, {y}), cms.dist(x, y))) return "H({x}, {y}) != d(x, y)";

    for (const ConeVector& eps : {ConeVector(hausdorff(cms, a, b) + random_cone_element(rng, e, 1.0)),
                                  random_vector(rng, e, 0.0, metric_scale(cms))}) {
      if (!s_membership(cms, eps, a, b)) continue;
      if (!e.leq(hausdorff(cms, a, b), eps)) return "eps in s(A, B) but H(A, B) is not below eps";
      for (PointIndex p : a) {
        if (!s_membership(cms, eps, p, b)) return "eps in s(A, B) but not in s(a, B)";
      }
    }
  }
  return std::nullopt;
}

Instance gen_metric_with_potential(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed);
  inst.potentials.emplace("phi", random_potential(rng, inst.metric_space()));
  return inst;
}

Verdict check_bronsted_order(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const Potential& phi = inst.potential("phi");
  const OrderedSpace& e = cms.space();
  const std::size_t n = cms.size();
  for (PointIndex x = 0; x < n; ++x) {
    if (!bronsted_leq(cms, phi, x, x)) return "not reflexive at " + cms.label(x);
    for (PointIndex y = 0; y < n; ++y) {
      const bool xy = bronsted_leq(cms, phi, x, y);
      if (x != y && xy && bronsted_leq(cms, phi, y, x)) return "not antisymmetric at " + pair(cms, x, y);
      if (xy && !e.leq(phi(y), phi(x))) return "phi increases along the order at " + pair(cms, x, y);
      for (PointIndex z = 0; z < n; ++z) {
        if (xy && bronsted_leq(cms, phi, y, z) && !bronsted_leq(cms, phi, x, z)) {
          return "not transitive at " + cms.label(x) + "," + cms.label(y) + "," + cms.label(z);
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- mappings

Instance gen_metric_with_map(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed);
  inst.maps.emplace("T", random_map(rng, inst.points.size(), 3));
  return inst;
}

Verdict check_prop_p1(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map("T");
  const Potential phi = phi_T(cms, map);
  const OrderedSpace& e = cms.space();
  for (PointIndex u = 0; u < cms.size(); ++u) {
    for (PointIndex v = 0; v < cms.size(); ++v) {
      const ConeVector rhs = phi(v) + cms.dist(u, v) + hausdorff(cms, map(u), map(v));
      if (!e.leq(phi(u), rhs)) return "phi_T(u) <= phi_T(v) + d(u,v) + H(Tu,Tv) fails at " + pair(cms, u, v);
    }
  }
  return std::nullopt;
}

Instance gen_remark_r6(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed);
  const std::size_t n = inst.points.size();
  const ConeMetricSpace cms = inst.metric_space();
  const LinearMap k = random_kplus(rng, inst.space, 0.5, 0.99);
  const auto cert = kplus_factor(inst.space, k);
  if (!cert) throw InternalError("generated k is not in K+");
  const PointIndex hub = rng.index(n);
  std::vector<PointSet> images = random_map(rng, n, 2).images();
  while (true) {
    const SetValuedMap map(std::vector<std::vector<PointIndex>>(images.begin(), images.end()));
    const ClassifierReport report = check_s_contraction(cms, map, *cert);
    if (report.holds) break;
    const auto& w = report.witnesses.front();
    // Pull one offending image onto the other or onto the hub.
    if (images[w.x] != images[w.y] && rng.bernoulli(0.5)) images[w.x] = images[w.y];
    else images[w.x] = images[w.y] = {hub};
  }
  inst.maps.emplace("T", SetValuedMap(std::vector<std::vector<PointIndex>>(images.begin(), images.end())));
  inst.operators.emplace("k", k);
  return inst;
}

Verdict check_remark_r6(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const auto k = kplus_factor(cms.space(), inst.op("k"));
  if (!k) return "k is not in K+";
  const SetValuedMap& map = inst.map("T");
  if (!check_s_contraction(cms, map, *k).holds) return "generated map is not an s-contraction";
  const ClassifierReport contraction = check_contraction(cms, map, *k);
  if (!contraction.holds) {
    const auto& w = contraction.witnesses.front();
    return "s-contraction is not a contraction at " + pair(cms, w.x, w.y);
  }
  return std::nullopt;
}

Instance gen_classifier(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = metric_instance(rng, seed);
  inst.maps.emplace("T", random_map(rng, inst.points.size(), 3));
  inst.operators.emplace("delta", random_kplus(rng, inst.space, 0.05, 0.99));
  return inst;
}

Verdict check_classifier_consistency(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map("T");
  const auto delta = kplus_factor(cms.space(), inst.op("delta"));
  if (!delta) return "delta is not in K+";
  const auto m = static_cast<Eigen::Index>(cms.space().dim());
  const ClassifierReport weak = check_weak_contraction(cms, map, *delta, Eigen::MatrixXd::Zero(m, m));
  const ClassifierReport plain = check_contraction(cms, map, *delta);
  auto pairs = [](const ClassifierReport& r) {
    std::vector<std::pair<PointIndex, PointIndex>> out;
    for (const auto& w : r.witnesses) out.emplace_back(w.x, w.y);
    return out;
  };
  if (weak.holds != plain.holds || pairs(weak) != pairs(plain)) return "weak contraction with L = 0 differs from contraction";
  if (pairs(check_contraction(cms, map, *delta)) != pairs(plain)) return "classifier is not deterministic";

  std::vector<std::vector<PointIndex>> with_self;
  for (PointIndex x = 0; x < cms.size(); ++x) {
    std::vector<PointIndex> image(map(x).begin(), map(x).end());
    image.push_back(x);
    with_self.push_back(std::move(image));
  }
  const SetValuedMap reflexive(std::move(with_self));
  const Potential phi = phi_T(cms, reflexive);
  for (PointIndex x = 0; x < cms.size(); ++x) {
    if (!cms.space().is_zero(phi(x))) return "phi_T != 0 although x in Tx at " + cms.label(x);
  }
  for (double eps : {1e-3, 0.1, 1.0}) {
    if (condition_S_failure(condition_S_selectors(cms, reflexive, eps))) return "condition (S) fails although x in Tx";
  }
  if (brute_force_fixed_points(cms, reflexive).members.size() != cms.size()) return "fixed point scan misses points";
  return std::nullopt;
}

// ---------------------------------------------------------------- solvers

Verdict check_theorem_t1(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const Potential& phi = inst.potential("phi");
  for (PointIndex x0 = 0; x0 < cms.size(); ++x0) {
    const SolveTrace trace = bishop_phelps_climb(cms, phi, x0);
    const PointIndex top = trace.result();
    if (!bronsted_leq(cms, phi, x0, top)) return "x0 is not below x* from " + cms.label(x0);
    const PointSet maximal = bronsted_maximal_oracle(cms, phi, x0);
    if (!std::binary_search(maximal.begin(), maximal.end(), top)) return "x* is not maximal from " + cms.label(x0);
    if (trace.iterations() > cms.size()) return "more than n iterations from " + cms.label(x0);
    const auto problems = check_trace(cms, trace);
    if (!problems.empty()) return "trace from " + cms.label(x0) + ": " + problems.front();
  }
  return std::nullopt;
}

Instance gen_kind(InstanceKind kind, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = random_n(rng);
  const std::size_t m = random_m(rng);
  return generate_instance(kind, n, m, seed);
}

Verdict check_caristi(const Instance& inst, CaristiMode mode) {
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map(mode == CaristiMode::exists ? "T" : "T_forall");
  const Potential& phi = inst.potential("phi");
  const FixedPointSets fixed = brute_force_fixed_points(cms, map);
  const PointSet& expected = mode == CaristiMode::exists ? fixed.members : fixed.strict;
  for (PointIndex x0 = 0; x0 < cms.size(); ++x0) {
    const SolveTrace trace = caristi_solve(cms, map, phi, mode, x0);
    if (!std::binary_search(expected.begin(), expected.end(), trace.result())) {
      return "x* = " + cms.label(trace.result()) + " is not a fixed point found by the scan";
    }
    if (trace.iterations() > cms.size()) return "more than n iterations";
    const auto problems = check_trace(cms, trace, &map);
    if (!problems.empty()) return "trace from " + cms.label(x0) + ": " + problems.front();
  }
  return std::nullopt;
}

Verdict check_corollary_c1(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map("f");
  if (!map.is_single_valued()) return "f is not single-valued";
  std::vector<PointIndex> f;
  for (const auto& image : map.images()) f.push_back(image.front());
  const Potential& phi = inst.potential("phi");
  for (PointIndex x0 = 0; x0 < cms.size(); ++x0) {
    const SolveTrace trace = single_valued_solve(cms, f, phi, x0);
    if (f[trace.result()] != trace.result()) return "iteration stopped off a fixed point";
    const auto problems = check_trace(cms, trace, nullptr, &f);
    if (!problems.empty()) return "trace from " + cms.label(x0) + ": " + problems.front();
  }
  return std::nullopt;
}

Verdict check_theorem_t3(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const Potential& phi = inst.potential("phi");
  const OrderedSpace& e = cms.space();
  const ConeVector lower = e.inf(phi.values);
  for (PointIndex x0 = 0; x0 < cms.size(); ++x0) {
    const SolveTrace trace = takahashi_solve(cms, phi, x0);
    if (!e.equal(phi(trace.result()), lower)) {
      return "phi(x*) = " + str(phi(trace.result())) + " differs from inf phi = " + str(lower);
    }
    const auto problems = check_trace(cms, trace);
    if (!problems.empty()) return "trace from " + cms.label(x0) + ": " + problems.front();
  }
  return std::nullopt;
}

Verdict check_theorem_t4(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map("T");
  const auto delta = kplus_factor(cms.space(), inst.op("delta"));
  if (!delta) return "delta is not in K+";
  const LinearMap& l = inst.op("L");
  const double eps = inst.param("epsilon");
  if (!check_weak_contraction(cms, map, *delta, l).holds) return "T is not a (delta, L)-weak contraction";
  if (condition_S_failure(condition_S_selectors(cms, map, eps))) return "condition (S) fails";
  if (!(1.0 / (1.0 + eps) > delta->factor())) return "1/(1+eps) does not exceed delta";
  const PointSet fixed = brute_force_fixed_points(cms, map).members;
  for (PointIndex x0 = 0; x0 < cms.size(); ++x0) {
    const SolveTrace trace = weak_contraction_solve(cms, map, *delta, l, eps, x0);
    if (trace.iterations() > cms.size()) return "more than n iterations";
    if (!std::binary_search(fixed.begin(), fixed.end(), trace.result())) return "x* is not in Tx*";
    const auto problems = check_trace(cms, trace, &map);
    if (!problems.empty()) return "trace from " + cms.label(x0) + ": " + problems.front();
  }
  return std::nullopt;
}

Instance gen_huang_zhang(std::uint64_t seed) {
  Rng rng(seed);
  const double alphas[] = {0.5, 1.0, 2.0};
  return huang_zhang_instance(alphas[rng.index(3)], rng.between(2, 8), seed);
}

Verdict check_huang_zhang(const Instance& inst) {
  const ConeMetricSpace cms = inst.metric_space();
  const ValidationReport report = validate_cone_metric(cms);
  if (!report.passes()) return report.summary(cms);
  if (report.derived != ValidationReport::Derived::verified) return "derived properties not verified";
  return std::nullopt;
}

std::vector<PropertySuite> make_suites() {
  std::vector<PropertySuite> suites;
  auto add = [&](std::string name, std::string description, auto generate, auto check) {
    suites.push_back({std::move(name), std::move(description), generate, check});
  };
  add("order_axioms", "the cone order is reflexive, antisymmetric and transitive", space_instance_default,
      check_order_axioms);
  add("remark_r1", "a <= b << c implies a << c (10^4 triples per space)", space_instance_default, check_remark_r1);
  add("lattice_laws", "inf/sup are greatest/least bounds, idempotent, commutative, associative, translation invariant",
      space_instance_default, check_lattice_laws);
  add("kplus", "kplus_factor agrees with the extreme-ray oracle; spectral radius <= t; |dx| <= d|x|", gen_kplus,
      check_kplus);
  add("kplus_closure", "composition of K+ members is in K+ with factor <= t1 t2", gen_kplus_pair, check_kplus_closure);
  add("remark_r2", "tables passing the axioms are symmetric and nonnegative", gen_remark_r2, check_remark_r2);
  add("validation_soundness", "validator reports exactly the broken triangle inequalities", gen_validation_soundness,
      check_validation_soundness);
  add("cone_metric_sets", "point-to-set distance, H and s-set identities", gen_metric, check_cone_metric_sets);
  add("bronsted_order", "the Bronsted order is a partial order along which phi does not increase",
      gen_metric_with_potential, check_bronsted_order);
  add("prop_p1", "phi_T(u) <= phi_T(v) + d(u,v) + H(Tu,Tv)", gen_metric_with_map, check_prop_p1);
  add("remark_r6", "s-contractions are contractions with the same k", gen_remark_r6, check_remark_r6);
  add("classifier_consistency", "L = 0 weak contraction equals contraction; x in Tx gives phi_T = 0 and (S)",
      gen_classifier, check_classifier_consistency);
  add("theorem_t1", "the climb ends at a maximal element above x0 within n steps", gen_metric_with_potential,
      check_theorem_t1);
  add("theorem_t2_exists", "Caristi (exists mode): x* in Tx*",
      [](std::uint64_t s) { return gen_kind(InstanceKind::caristi, s); },
      [](const Instance& i) { return check_caristi(i, CaristiMode::exists); });
  add("theorem_t2_forall", "Caristi (forall mode): Tx* = {x*}",
      [](std::uint64_t s) { return gen_kind(InstanceKind::caristi, s); },
      [](const Instance& i) { return check_caristi(i, CaristiMode::forall); });
  add("corollary_c1", "single-valued Caristi iteration ends at a fixed point",
      [](std::uint64_t s) { return gen_kind(InstanceKind::caristi, s); }, check_corollary_c1);
  add("theorem_t3", "the climb attains the lattice infimum of phi",
      [](std::uint64_t s) { return gen_kind(InstanceKind::takahashi, s); }, check_theorem_t3);
  add("theorem_t4", "weak contractions with condition (S) reach x* in Tx* through verified Caristi steps",
      [](std::uint64_t s) { return gen_kind(InstanceKind::weak_contraction, s); }, check_theorem_t4);
  add("huang_zhang", "d = (|x-y|, alpha |x-y|) is a cone metric", gen_huang_zhang, check_huang_zhang);
  return suites;
}

}  // namespace

const std::vector<PropertySuite>& builtin_suites() {
  static const std::vector<PropertySuite> suites = make_suites();
  return suites;
}

const PropertySuite& find_suite(const std::string& name) {
  for (const auto& suite : builtin_suites()) {
    if (suite.name == name) return suite;
  }
  std::string names;
  for (const auto& suite : builtin_suites()) names += (names.empty() ? "" : ", ") + suite.name;
  throw std::invalid_argument("unknown suite '" + name + "'; available: " + names);
}

std::optional<std::string> run_check(const PropertySuite& suite, const Instance& instance) {
  try {
    return suite.check(instance);
  } catch (const std::exception& ex) {
    return std::string("exception: ") + ex.what();
  }
}

Instance shrink_failure(const PropertySuite& suite, Instance instance) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (PointIndex p = 0; p < instance.points.size(); ++p) {
      auto smaller = instance.without_point(p);
      if (smaller && run_check(suite, *smaller)) {
        instance = std::move(*smaller);
        progress = true;
        break;
      }
    }
  }
  return instance;
}

SuiteReport run_property_suite(const PropertySuite& suite, std::size_t trials, std::uint64_t seed, unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::vector<SuiteFailure> failures;
  std::mutex guard;

  auto work = [&](unsigned worker) {
    for (std::size_t trial = worker; trial < trials; trial += workers) {
      const std::uint64_t sub = derive_seed(seed, trial);
      std::optional<std::string> message;
      std::optional<Instance> instance;
      try {
        instance = suite.generate(sub);
        message = run_check(suite, *instance);
      } catch (const std::exception& ex) {
        message = std::string("generation failed: ") + ex.what();
      }
      if (!message) continue;
      SuiteFailure failure{trial, sub, *message, Instance{}};
      if (instance) {
        failure.instance = shrink_failure(suite, std::move(*instance));
        if (auto again = run_check(suite, failure.instance)) failure.message = *again;
      }
      std::lock_guard lock(guard);
      failures.push_back(std::move(failure));
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::sort(failures.begin(), failures.end(), [](const SuiteFailure& a, const SuiteFailure& b) {
    return std::tie(a.seed, a.trial) < std::tie(b.seed, b.trial);
  });

  SuiteReport report;
  report.suite = suite.name;
  report.trials = trials;
  report.seed = seed;
  report.failures = std::move(failures);
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SuiteReport run_property_suite(const std::string& name, std::size_t trials, std::uint64_t seed, unsigned workers) {
  return run_property_suite(find_suite(name), trials, seed, workers);
}

nlohmann::ordered_json to_json(const SuiteReport& report) {
  nlohmann::ordered_json out;
  out["suite"] = report.suite;
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  out["passed"] = report.passed();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"trial", f.trial}, {"seed", f.seed}, {"message", f.message}, {"instance", to_json(f.instance)}});
  }
  out["failures"] = std::move(failures);
  return out;
}

}  // namespace conefix
