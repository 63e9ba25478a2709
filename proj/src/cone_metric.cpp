#include "conefix/cone_metric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conefix {

PointSet make_point_set(std::vector<PointIndex> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

ConeMetricSpace::ConeMetricSpace(OrderedSpace space, std::vector<std::string> labels, Table dist)
    : space_(std::move(space)), labels_(std::move(labels)), dist_(std::move(dist)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("a cone metric space needs at least one point");
  if (dist_.size() != n) throw std::invalid_argument("distance table must have one row per point");
  for (const auto& row : dist_) {
    if (row.size() != n) throw std::invalid_argument("distance table must be square");
    for (const auto& d : row) {
      if (static_cast<std::size_t>(d.size()) != space_.dim()) {
        throw std::invalid_argument("distance vector dimension does not match the space");
      }
      if (!d.allFinite()) throw std::invalid_argument("distance table has non-finite entries");
    }
  }
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("point labels must be unique");
  }
}

ConeMetricSpace ConeMetricSpace::scaled_scalar(OrderedSpace space, std::vector<std::string> labels,
                                               const std::vector<std::vector<double>>& rho,
                                               const ConeVector& weight) {
  const std::size_t n = labels.size();
  if (rho.size() != n) throw std::invalid_argument("scalar metric must have one row per point");
  Table dist(n, std::vector<ConeVector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i].size() != n) throw std::invalid_argument("scalar metric must be square");
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = rho[i][j] * weight;
  }
  return ConeMetricSpace(std::move(space), std::move(labels), std::move(dist));
}

PointIndex ConeMetricSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("unknown point label '" + label + "'");
  return static_cast<PointIndex>(it - labels_.begin());
}

void ConeMetricSpace::check_set(const PointSet& set) const {
  if (set.empty()) throw std::invalid_argument("point set must be nonempty");
  for (PointIndex p : set) {
    if (p >= size()) throw std::invalid_argument("point index out of range");
  }
}

void check_potential(const ConeMetricSpace& cms, const Potential& phi) {
  if (phi.size() != cms.size()) throw std::invalid_argument("potential must have one value per point");
  for (const auto& v : phi.values) {
    if (static_cast<std::size_t>(v.size()) != cms.space().dim() || !v.allFinite()) {
      throw std::invalid_argument("potential values must be finite vectors of the space dimension");
    }
  }
}

ValidationReport validate_cone_metric(const ConeMetricSpace& cms) {
  const OrderedSpace& e = cms.space();
  const std::size_t n = cms.size();
  ValidationReport report;

  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = 0; j < n; ++j) {
      const bool zero = e.is_zero(cms.dist(i, j));
      if ((i == j) != zero) {
        ++report.identity_violations;
        if (report.identity_witnesses.size() < ValidationReport::kMaxWitnesses) {
          report.identity_witnesses.push_back({i, j});
        }
      }
    }
  }

  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = 0; j < n; ++j) {
      for (PointIndex k = 0; k < n; ++k) {
        const ConeVector rhs = cms.dist(i, k) + cms.dist(j, k);
        if (!e.leq(cms.dist(i, j), rhs)) {
          ++report.triangle_violations;
          if (report.triangle_witnesses.size() < ValidationReport::kMaxWitnesses) {
            report.triangle_witnesses.push_back({i, j, k});
          }
        }
      }
    }
  }

  if (!report.passes()) return report;

  report.derived = ValidationReport::Derived::verified;
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = 0; j < n; ++j) {
      const bool symmetric = e.equal(cms.dist(i, j), cms.dist(j, i));
      const bool nonnegative = e.in_cone(cms.dist(i, j));
      if (!symmetric || !nonnegative) {
        report.derived = ValidationReport::Derived::violated;
        if (report.derived_witnesses.size() < ValidationReport::kMaxWitnesses) {
          report.derived_witnesses.push_back({i, j});
        }
      }
    }
  }
  return report;
}

std::string ValidationReport::summary(const ConeMetricSpace& cms) const {
  std::ostringstream out;
  if (passes()) {
    out << "cone metric axioms hold";
    if (derived == Derived::verified) out << "; symmetry and nonnegativity: derived, verified";
    if (derived == Derived::violated) out << "; symmetry or nonnegativity VIOLATED";
    return out.str();
  }
  out << "cone metric axioms violated";
  if (identity_violations > 0) {
    out << "; identity axiom fails " << identity_violations << " time(s), e.g.";
    for (const auto& w : identity_witnesses) out << " (" << cms.label(w[0]) << "," << cms.label(w[1]) << ")";
  }
  if (triangle_violations > 0) {
    out << "; triangle inequality fails " << triangle_violations << " time(s), e.g.";
    for (const auto& w : triangle_witnesses) {
      out << " (" << cms.label(w[0]) << "," << cms.label(w[1]) << "," << cms.label(w[2]) << ")";
    }
  }
  return out.str();
}

ConeVector dist_point_to_set(const ConeMetricSpace& cms, PointIndex x, const PointSet& set) {
  if (set.empty()) throw std::invalid_argument("empty lattice operand");
  std::vector<ConeVector> values;
  values.reserve(set.size());
  for (PointIndex y : set) values.push_back(cms.dist(x, y));
  return cms.space().inf(values);
}

ConeVector hausdorff(const ConeMetricSpace& cms, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty lattice operand");
  std::vector<ConeVector> terms;
  terms.reserve(a.size() + b.size());
  for (PointIndex x : a) terms.push_back(dist_point_to_set(cms, x, b));
  for (PointIndex y : b) terms.push_back(dist_point_to_set(cms, y, a));
  // sup of the two directed sups equals the sup over all terms.
  return cms.space().sup(terms);
}

namespace {

bool positive_nonzero(const OrderedSpace& e, const ConeVector& eps) {
  return e.in_cone(eps) && !e.is_zero(eps);
}

bool within(const ConeMetricSpace& cms, const ConeVector& eps, PointIndex x, const PointSet& set) {
  return std::any_of(set.begin(), set.end(),
                     [&](PointIndex y) { return cms.space().leq(cms.dist(x, y), eps); });
}

}  // namespace

bool s_membership(const ConeMetricSpace& cms, const ConeVector& eps, PointIndex x, const PointSet& b) {
  if (b.empty()) throw std::invalid_argument("s-set operand must be nonempty");
  return positive_nonzero(cms.space(), eps) && within(cms, eps, x, b);
}

bool s_membership(const ConeMetricSpace& cms, const ConeVector& eps, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("s-set operand must be nonempty");
  if (!positive_nonzero(cms.space(), eps)) return false;
  return std::all_of(a.begin(), a.end(), [&](PointIndex x) { return within(cms, eps, x, b); }) &&
         std::all_of(b.begin(), b.end(), [&](PointIndex y) { return within(cms, eps, y, a); });
}

bool bronsted_leq(const ConeMetricSpace& cms, const Potential& phi, PointIndex x, PointIndex y) {
  return cms.space().leq(cms.dist(x, y), ConeVector(phi(x) - phi(y)));
}

PointSet bronsted_maximal_oracle(const ConeMetricSpace& cms, const Potential& phi, PointIndex x0) {
  check_potential(cms, phi);
  const std::size_t n = cms.size();
  PointSet maximal;
  for (PointIndex candidate = 0; candidate < n; ++candidate) {
    if (!bronsted_leq(cms, phi, x0, candidate)) continue;
    bool has_successor = false;
    for (PointIndex y = 0; y < n && !has_successor; ++y) {
      has_successor = y != candidate && bronsted_leq(cms, phi, candidate, y);
    }
    if (!has_successor) maximal.push_back(candidate);
  }
  return maximal;
}

}  // namespace conefix
