#include "conefix/mappings.hpp"

#include "conefix/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace conefix {

SetValuedMap::SetValuedMap(std::vector<std::vector<PointIndex>> images) {
  images_.reserve(images.size());
  for (auto& image : images) {
    if (image.empty()) throw std::invalid_argument("set-valued map images must be nonempty");
    images_.push_back(make_point_set(std::move(image)));
  }
}

SetValuedMap SetValuedMap::from_function(const std::vector<PointIndex>& f) {
  std::vector<std::vector<PointIndex>> images;
  images.reserve(f.size());
  for (PointIndex y : f) images.push_back({y});
  return SetValuedMap(std::move(images));
}

bool SetValuedMap::contains(PointIndex x, PointIndex y) const {
  return std::binary_search(images_[x].begin(), images_[x].end(), y);
}

bool SetValuedMap::is_single_valued() const {
  return std::all_of(images_.begin(), images_.end(), [](const PointSet& s) { return s.size() == 1; });
}

void check_map(const ConeMetricSpace& cms, const SetValuedMap& map) {
  if (map.size() != cms.size()) throw std::invalid_argument("map must have one image per point");
  for (const auto& image : map.images()) cms.check_set(image);
}

Potential phi_T(const ConeMetricSpace& cms, const SetValuedMap& map) {
  check_map(cms, map);
  Potential phi;
  phi.values.reserve(cms.size());
  for (PointIndex x = 0; x < cms.size(); ++x) phi.values.push_back(dist_point_to_set(cms, x, map(x)));
  return phi;
}

namespace {

void check_operator(const ConeMetricSpace& cms, const LinearMap& op, const char* role) {
  const auto m = static_cast<Eigen::Index>(cms.space().dim());
  if (op.rows() != m || op.cols() != m) {
    throw std::invalid_argument(std::string(role) + " must be an m x m operator");
  }
}

/// Scans all ordered pairs and records lhs ⋠ rhs.
template <typename Lhs, typename Rhs>
ClassifierReport scan_pairs(const ConeMetricSpace& cms, std::string condition, bool skip_diagonal, Lhs lhs_of,
                            Rhs rhs_of) {
  ClassifierReport report;
  report.condition = std::move(condition);
  const std::size_t n = cms.size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (skip_diagonal && x == y) continue;
      ConeVector lhs = lhs_of(x, y);
      ConeVector rhs = rhs_of(x, y);
      if (!cms.space().leq(lhs, rhs)) report.witnesses.push_back({x, y, std::move(lhs), std::move(rhs)});
    }
  }
  report.holds = report.witnesses.empty();
  return report;
}

std::vector<std::vector<ConeVector>> hausdorff_table(const ConeMetricSpace& cms, const SetValuedMap& map) {
  const std::size_t n = cms.size();
  std::vector<std::vector<ConeVector>> h(n, std::vector<ConeVector>(n));
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x; y < n; ++y) {
      h[x][y] = hausdorff(cms, map(x), map(y));
      h[y][x] = h[x][y];
    }
  }
  return h;
}

KPlusCertificate certify_twice(const ConeMetricSpace& cms, const LinearMap& alpha) {
  check_operator(cms, alpha, "alpha");
  const LinearMap twice = 2.0 * alpha;
  if (auto cert = kplus_factor(cms.space(), twice)) return *cert;
  const auto rejection = kplus_rejection(cms.space(), twice);
  throw PreconditionError("2*alpha must belong to K+(E): " +
                          (rejection ? rejection->message : std::string("rejected")));
}

}  // namespace

ClassifierReport check_weak_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                        const KPlusCertificate& delta, const LinearMap& l) {
  check_map(cms, map);
  check_operator(cms, delta.map(), "delta");
  check_operator(cms, l, "L");
  if (!cms.space().is_positive_operator(l)) throw PreconditionError("L must be a positive linear operator");
  const auto h = hausdorff_table(cms, map);
  auto report = scan_pairs(
      cms, "weak_contraction", false, [&](PointIndex x, PointIndex y) { return h[x][y]; },
      [&](PointIndex x, PointIndex y) -> ConeVector {
        return delta.map() * cms.dist(x, y) + l * dist_point_to_set(cms, y, map(x));
      });
  report.parameters = {{"delta", delta.map()}, {"L", l}};
  report.factor = delta.factor();
  return report;
}

ClassifierReport check_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                   const KPlusCertificate& k) {
  check_map(cms, map);
  check_operator(cms, k.map(), "k");
  const auto h = hausdorff_table(cms, map);
  auto report = scan_pairs(
      cms, "contraction", false, [&](PointIndex x, PointIndex y) { return h[x][y]; },
      [&](PointIndex x, PointIndex y) -> ConeVector { return k.map() * cms.dist(x, y); });
  report.parameters = {{"k", k.map()}};
  report.factor = k.factor();
  return report;
}

ClassifierReport check_s_contraction(const ConeMetricSpace& cms, const SetValuedMap& map,
                                     const KPlusCertificate& k) {
  check_map(cms, map);
  check_operator(cms, k.map(), "k");
  ClassifierReport report;
  report.condition = "s_contraction";
  const std::size_t n = cms.size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (x == y) continue;
      ConeVector eps = k.map() * cms.dist(x, y);
      if (!s_membership(cms, eps, map(x), map(y))) {
        report.witnesses.push_back({x, y, hausdorff(cms, map(x), map(y)), std::move(eps)});
      }
    }
  }
  report.holds = report.witnesses.empty();
  report.parameters = {{"k", k.map()}};
  report.factor = k.factor();
  return report;
}

ClassifierReport check_kannan(const ConeMetricSpace& cms, const SetValuedMap& map, const LinearMap& alpha) {
  check_map(cms, map);
  const KPlusCertificate twice = certify_twice(cms, alpha);
  const auto h = hausdorff_table(cms, map);
  const Potential phi = phi_T(cms, map);
  auto report = scan_pairs(
      cms, "kannan", false, [&](PointIndex x, PointIndex y) { return h[x][y]; },
      [&](PointIndex x, PointIndex y) -> ConeVector { return alpha * (phi(x) + phi(y)); });
  report.parameters = {{"alpha", alpha}};
  report.factor = twice.factor();
  return report;
}

ClassifierReport check_chatterjea(const ConeMetricSpace& cms, const SetValuedMap& map,
                                  const LinearMap& alpha) {
  check_map(cms, map);
  const KPlusCertificate twice = certify_twice(cms, alpha);
  const auto h = hausdorff_table(cms, map);
  auto report = scan_pairs(
      cms, "chatterjea", false, [&](PointIndex x, PointIndex y) { return h[x][y]; },
      [&](PointIndex x, PointIndex y) -> ConeVector {
        return alpha * (dist_point_to_set(cms, x, map(y)) + dist_point_to_set(cms, y, map(x)));
      });
  report.parameters = {{"alpha", alpha}};
  report.factor = twice.factor();
  return report;
}

std::vector<PointSet> condition_S_selectors(const ConeMetricSpace& cms, const SetValuedMap& map, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("condition (S) needs eps > 0");
  const Potential phi = phi_T(cms, map);
  std::vector<PointSet> admissible(cms.size());
  for (PointIndex x = 0; x < cms.size(); ++x) {
    const ConeVector bound = (1.0 + eps) * phi(x);
    for (PointIndex y : map(x)) {
      if (cms.space().leq(cms.dist(x, y), bound)) admissible[x].push_back(y);
    }
  }
  return admissible;
}

std::optional<PointIndex> condition_S_failure(const std::vector<PointSet>& selectors) {
  for (PointIndex x = 0; x < selectors.size(); ++x) {
    if (selectors[x].empty()) return x;
  }
  return std::nullopt;
}

ClassifierReport check_caristi_hypothesis(const ConeMetricSpace& cms, const SetValuedMap& map,
                                          const Potential& phi, CaristiMode mode) {
  check_map(cms, map);
  check_potential(cms, phi);
  ClassifierReport report;
  report.condition = "caristi_" + to_string(mode);
  for (PointIndex x = 0; x < cms.size(); ++x) {
    std::vector<PairWitness> failing;
    for (PointIndex y : map(x)) {
      ConeVector drop = phi(x) - phi(y);
      if (!cms.space().leq(cms.dist(x, y), drop)) failing.push_back({x, y, cms.dist(x, y), std::move(drop)});
    }
    const bool ok = mode == CaristiMode::exists ? failing.size() < map(x).size() : failing.empty();
    if (!ok) {
      std::move(failing.begin(), failing.end(), std::back_inserter(report.witnesses));
    }
  }
  report.holds = report.witnesses.empty();
  return report;
}

std::string to_string(CaristiMode mode) { return mode == CaristiMode::exists ? "exists" : "forall"; }

}  // namespace conefix
