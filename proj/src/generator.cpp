#include "conefix/generator.hpp"

#include "conefix/error.hpp"
#include "conefix/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conefix {

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::random_metric: return "random_metric";
    case InstanceKind::caristi: return "caristi";
    case InstanceKind::weak_contraction: return "weak_contraction";
    case InstanceKind::takahashi: return "takahashi";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(const std::string& text) {
  for (auto kind : {InstanceKind::random_metric, InstanceKind::caristi, InstanceKind::weak_contraction,
                    InstanceKind::takahashi}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown instance kind '" + text +
                              "' (expected random_metric, caristi, weak_contraction or takahashi)");
}

OrderedSpace random_space(Rng& rng, std::size_t m) {
  const auto dim = static_cast<Eigen::Index>(m);
  if (m == 1) return OrderedSpace(Eigen::MatrixXd::Constant(1, 1, rng.uniform(0.5, 2.0)));
  if (rng.bernoulli(0.3)) return OrderedSpace::standard(m);
  for (int attempt = 0; attempt < kGenerationBudget; ++attempt) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) g(i, j) += rng.uniform(-0.6, 0.6);
    }
    for (Eigen::Index j = 0; j < dim; ++j) g.col(j) *= rng.uniform(0.5, 2.0);
    const double col = g.colwise().norm().maxCoeff();
    if (std::abs(g.determinant()) > 0.05 * std::pow(col, static_cast<double>(m))) return OrderedSpace(g);
  }
  throw PreconditionError("generation budget exhausted");
}

std::vector<std::vector<double>> random_cloud(Rng& rng, std::size_t n, std::size_t dim) {
  for (int attempt = 0; attempt < kGenerationBudget; ++attempt) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts) {
      for (auto& c : p) c = rng.uniform(0.0, 10.0);
    }
    bool separated = true;
    for (std::size_t i = 0; i < n && separated; ++i) {
      for (std::size_t j = i + 1; j < n && separated; ++j) {
        double sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) sq += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
        separated = std::sqrt(sq) >= 0.05;
      }
    }
    if (separated) return pts;
  }
  throw PreconditionError("generation budget exhausted");
}

ConeVector random_interior(Rng& rng, const OrderedSpace& space, double lo, double hi) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(space.dim()));
  for (auto& ci : c) ci = rng.uniform(lo, hi);
  return space.from_cone_coords(c);
}

MetricSpec random_table_metric(Rng& rng, const OrderedSpace& space, std::size_t n) {
  const std::size_t m = space.dim();
  MetricSpec spec;
  spec.kind = MetricSpec::Kind::table;
  spec.table.assign(n, std::vector<ConeVector>(n, space.zero()));
  const std::size_t components = rng.between(1, 3);
  for (std::size_t comp = 0; comp < components; ++comp) {
    ConeVector w;
    if (comp == 0) {
      w = random_interior(rng, space);
    } else {
      Eigen::VectorXd c(static_cast<Eigen::Index>(m));
      for (auto& ci : c) ci = rng.bernoulli(0.5) ? 0.0 : rng.uniform(0.2, 1.5);
      c(static_cast<Eigen::Index>(rng.index(m))) = rng.uniform(0.2, 1.5);
      w = space.from_cone_coords(c);
    }
    ScalarMetricSpec rho{ScalarMetricSpec::Kind::euclidean, random_cloud(rng, n, rng.between(1, 3))};
    const auto dist = rho.distances();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) spec.table[i][j] += dist[i][j] * w;
    }
  }
  return spec;
}

MetricSpec random_scaled_metric(Rng& rng, std::size_t n, const ConeVector& weight) {
  MetricSpec spec;
  spec.kind = MetricSpec::Kind::scaled_scalar;
  spec.rho = {ScalarMetricSpec::Kind::euclidean, random_cloud(rng, n, rng.between(1, 3))};
  spec.weight = weight;
  return spec;
}

double metric_scale(const ConeMetricSpace& cms) {
  double scale = 1e-3;
  for (const auto& row : cms.table()) {
    for (const auto& d : row) scale = std::max(scale, cms.space().cone_coords(d).cwiseAbs().maxCoeff());
  }
  return scale;
}

Potential random_potential(Rng& rng, const ConeMetricSpace& cms) {
  const OrderedSpace& e = cms.space();
  const std::size_t n = cms.size();
  const auto m = static_cast<Eigen::Index>(e.dim());
  const double scale = metric_scale(cms);

  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  rng.shuffle(rank);
  Eigen::VectorXd slope(m);
  for (auto& s : slope) s = rng.uniform(0.5, 2.0);
  Eigen::VectorXd offset(m);
  for (auto& o : offset) o = rng.uniform(-5.0, 5.0) * scale;
  const bool ranked = rng.bernoulli(0.6);

  Potential phi;
  for (std::size_t x = 0; x < n; ++x) {
    Eigen::VectorXd c(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      c(i) = ranked ? static_cast<double>(rank[x]) * scale * slope(i) + rng.uniform(0.0, scale)
                    : rng.uniform(0.0, 3.0 * scale);
    }
    phi.values.push_back(e.from_cone_coords(c + offset));
  }
  return phi;
}

SetValuedMap random_map(Rng& rng, std::size_t n, std::size_t max_image) {
  std::vector<std::vector<PointIndex>> images(n);
  std::vector<PointIndex> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (auto& image : images) {
    rng.shuffle(all);
    const std::size_t size = rng.between(1, std::min(max_image, n));
    image.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return SetValuedMap(std::move(images));
}

LinearMap random_kplus(Rng& rng, const OrderedSpace& space, double lo, double hi) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(space.dim()));
  for (auto& v : d) v = rng.uniform(lo, hi);
  return space.generators() * d.asDiagonal() * space.generator_inverse();
}

LinearMap random_positive(Rng& rng, const OrderedSpace& space, double scale) {
  const auto m = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXd nonneg(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) nonneg(i, j) = rng.bernoulli(0.3) ? 0.0 : rng.uniform(0.0, scale);
  }
  return space.generators() * nonneg * space.generator_inverse();
}

Instance make_instance(OrderedSpace space, std::size_t n, MetricSpec metric, std::uint64_t seed,
                       std::string description) {
  Instance inst;
  inst.space = std::move(space);
  inst.points = default_labels(n);
  inst.metric = std::move(metric);
  inst.meta.seed = seed;
  inst.meta.description = std::move(description);
  return inst;
}

Instance huang_zhang_instance(double alpha, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ConeVector w(2);
  w << 1.0, alpha;
  MetricSpec metric;
  metric.kind = MetricSpec::Kind::scaled_scalar;
  metric.rho = {ScalarMetricSpec::Kind::euclidean, random_cloud(rng, n, 1)};
  metric.weight = w;
  Instance inst = make_instance(OrderedSpace::standard(2), n, std::move(metric), seed,
                                "points on a line, d = (|x-y|, alpha |x-y|)");
  inst.meta.params["alpha"] = alpha;
  return inst;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InternalError("generated instance violates its advertised hypothesis: " + what);
}

Instance gen_random_metric(Rng& rng, std::size_t n, std::size_t m, std::uint64_t seed) {
  OrderedSpace space = random_space(rng, m);
  const ConeVector w = random_interior(rng, space);
  Instance inst = make_instance(space, n, random_scaled_metric(rng, n, w), seed, "random scaled scalar metric");
  const ConeMetricSpace cms = inst.metric_space();
  inst.maps.emplace("T", random_map(rng, n, 3));
  inst.potentials.emplace("phi", random_potential(rng, cms));
  inst.operators.emplace("k", random_kplus(rng, space, 0.05, 0.95));
  inst.operators.emplace("L", random_positive(rng, space, 1.0));
  return inst;
}

Instance gen_caristi(Rng& rng, std::size_t n, std::size_t m, std::uint64_t seed) {
  OrderedSpace space = random_space(rng, m);
  Instance inst = make_instance(space, n, random_table_metric(rng, space, n), seed,
                                "Caristi hypotheses: T (exists), T_forall (forall), f (single-valued)");
  const ConeMetricSpace cms = inst.metric_space();
  const Potential phi = random_potential(rng, cms);

  std::vector<std::vector<PointIndex>> exists(n), forall(n), f(n);
  for (PointIndex x = 0; x < n; ++x) {
    std::vector<PointIndex> above;  // strict ⪯_phi successors
    for (PointIndex y = 0; y < n; ++y) {
      if (y != x && bronsted_leq(cms, phi, x, y)) above.push_back(y);
    }
    if (above.empty()) {
      exists[x] = {x};
      forall[x] = {x};
      f[x] = {x};
    } else {
      rng.shuffle(above);
      exists[x] = {above.front()};
      forall[x].assign(above.begin(), above.begin() + static_cast<std::ptrdiff_t>(rng.between(1, above.size())));
      f[x] = {rng.bernoulli(0.2) ? x : above[rng.index(above.size())]};
    }
    const std::size_t extras = rng.between(0, 2);
    for (std::size_t e = 0; e < extras; ++e) exists[x].push_back(rng.index(n));
  }
  inst.maps.emplace("T", SetValuedMap(std::move(exists)));
  inst.maps.emplace("T_forall", SetValuedMap(std::move(forall)));
  inst.maps.emplace("f", SetValuedMap(std::move(f)));
  inst.potentials.emplace("phi", phi);

  require(check_caristi_hypothesis(cms, inst.map("T"), phi, CaristiMode::exists).holds, "T exists-mode");
  require(check_caristi_hypothesis(cms, inst.map("T_forall"), phi, CaristiMode::forall).holds, "T_forall");
  require(check_caristi_hypothesis(cms, inst.map("f"), phi, CaristiMode::forall).holds, "f");
  return inst;
}

/// Drops the image point farthest from the planted fixed point; a singleton
/// other than {target} becomes {target}.
PointSet shrink_toward(const ConeMetricSpace& cms, const PointSet& image, PointIndex target) {
  if (image.size() == 1) return {target};
  PointIndex worst = image.front();
  for (PointIndex z : image) {
    if (cms.space().lex_less(cms.dist(worst, target), cms.dist(z, target))) worst = z;
  }
  PointSet out;
  for (PointIndex z : image) {
    if (z != worst) out.push_back(z);
  }
  return out;
}

Instance gen_weak_contraction(Rng& rng, std::size_t n, std::size_t m, std::uint64_t seed) {
  for (int attempt = 0; attempt < kGenerationBudget; ++attempt) {
    OrderedSpace space = random_space(rng, m);
    Instance inst = make_instance(space, n, random_table_metric(rng, space, n), seed,
                                  "(delta, L)-weak contraction T with condition (S) at params.epsilon");
    const ConeMetricSpace cms = inst.metric_space();
    const auto dim = static_cast<Eigen::Index>(m);

    const double t = rng.uniform(0.1, 0.8);
    const LinearMap delta = t * Eigen::MatrixXd::Identity(dim, dim);
    const LinearMap l = random_positive(rng, space, rng.uniform(0.0, 2.0));
    const double eps = std::min((1.0 - t) / (2.0 * t), 0.5);
    const auto cert = kplus_factor(space, delta);
    require(cert.has_value(), "delta in K+");

    const PointIndex planted = rng.index(n);
    std::vector<std::vector<PointIndex>> images(n);
    for (PointIndex x = 0; x < n; ++x) {
      const std::size_t size = rng.between(1, std::min<std::size_t>(3, n));
      for (std::size_t k = 0; k < size; ++k) images[x].push_back(rng.index(n));
    }
    images[planted].push_back(planted);
    std::vector<PointSet> sets;
    for (auto& image : images) sets.push_back(make_point_set(std::move(image)));

    // Each shrink strictly decreases sum(|Tx|) + #{x : Tx != {planted}}, so
    // this loop ends; a constant map {planted} always passes.
    while (true) {
      const SetValuedMap map(std::vector<std::vector<PointIndex>>(sets.begin(), sets.end()));
      const ClassifierReport report = check_weak_contraction(cms, map, *cert, l);
      if (report.holds) break;
      const auto& w = report.witnesses.front();
      const PointSet done{planted};
      PointIndex p = sets[w.x].size() >= sets[w.y].size() ? w.x : w.y;
      if (sets[p] == done) p = p == w.x ? w.y : w.x;
      sets[p] = shrink_toward(cms, sets[p], planted);
    }
    auto admissible = [&](const std::vector<PointSet>& candidate) {
      const SetValuedMap map(std::vector<std::vector<PointIndex>>(candidate.begin(), candidate.end()));
      return check_weak_contraction(cms, map, *cert, l).holds &&
             !condition_S_failure(condition_S_selectors(cms, map, eps));
    };
    if (!admissible(sets)) continue;

    // Shrinking tends to leave single-valued maps; grow images back one
    // point at a time while both hypotheses keep holding.
    std::vector<PointIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (PointIndex x : order) {
      std::vector<PointIndex> candidates(order);
      rng.shuffle(candidates);
      for (PointIndex z : candidates) {
        if (std::binary_search(sets[x].begin(), sets[x].end(), z)) continue;
        std::vector<PointSet> grown = sets;
        grown[x] = make_point_set({z});
        grown[x].insert(grown[x].end(), sets[x].begin(), sets[x].end());
        grown[x] = make_point_set(std::move(grown[x]));
        if (admissible(grown)) sets = std::move(grown);
      }
    }
    SetValuedMap map(std::vector<std::vector<PointIndex>>(sets.begin(), sets.end()));

    require(map.contains(planted, planted), "planted fixed point");
    require(!brute_force_fixed_points(cms, map).members.empty(), "fixed point exists");
    require(1.0 / (1.0 + eps) > cert->factor(), "1/(1+eps) > t");
    inst.maps.emplace("T", std::move(map));
    inst.operators.emplace("delta", delta);
    inst.operators.emplace("L", l);
    inst.meta.params["epsilon"] = eps;
    inst.meta.params["t"] = t;
    inst.meta.params["attempts"] = attempt + 1;
    return inst;
  }
  throw PreconditionError("generation budget exhausted");
}

Instance gen_takahashi(Rng& rng, std::size_t n, std::size_t m, std::uint64_t seed) {
  OrderedSpace space = random_space(rng, m);
  Instance inst = make_instance(space, n, random_table_metric(rng, space, n), seed,
                                "potential phi satisfying the descent hypothesis, infimum attained");
  const ConeMetricSpace cms = inst.metric_space();
  const OrderedSpace& e = cms.space();
  const auto dim = static_cast<Eigen::Index>(m);
  const double scale = metric_scale(cms);

  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const PointIndex bottom = order.front();

  Potential phi;
  phi.values.assign(n, e.zero());
  Eigen::VectorXd base(dim);
  for (auto& b : base) b = rng.uniform(-3.0, 3.0) * scale;
  phi.values[bottom] = e.from_cone_coords(base);
  for (PointIndex x = 0; x < n; ++x) {
    if (x == bottom) continue;
    Eigen::VectorXd c(dim);
    for (auto& ci : c) ci = rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, 2.0 * scale);
    c(static_cast<Eigen::Index>(rng.index(m))) = rng.uniform(0.1, 2.0) * scale;
    phi.values[x] = e.from_cone_coords(base + c);
  }

  // Points later in `order` only ever gain successors among earlier ones,
  // whose values are already final.
  for (std::size_t k = 1; k < n; ++k) {
    const PointIndex x = order[k];
    bool has_successor = false;
    for (std::size_t j = 0; j < k && !has_successor; ++j) has_successor = bronsted_leq(cms, phi, x, order[j]);
    if (has_successor) continue;
    const PointIndex target = order[rng.index(k)];
    phi.values[x] = e.sup(phi.values[x], ConeVector(phi.values[target] + cms.dist(x, target)));
  }
  inst.potentials.emplace("phi", phi);
  inst.meta.params["bottom"] = static_cast<double>(bottom);

  const ConeVector lower = e.inf(phi.values);
  require(e.equal(lower, phi(bottom)), "infimum attained");
  for (PointIndex x = 0; x < n; ++x) {
    if (!e.strictly_less(lower, phi(x))) continue;
    bool ok = false;
    for (PointIndex y = 0; y < n && !ok; ++y) ok = y != x && bronsted_leq(cms, phi, x, y);
    require(ok, "descent hypothesis at " + cms.label(x));
  }
  return inst;
}

}  // namespace

Instance generate_instance(InstanceKind kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("generate_instance needs n >= 1 and m >= 1");
  Rng rng(seed);
  Instance inst;
  switch (kind) {
    case InstanceKind::random_metric: inst = gen_random_metric(rng, n, m, seed); break;
    case InstanceKind::caristi: inst = gen_caristi(rng, n, m, seed); break;
    case InstanceKind::weak_contraction: inst = gen_weak_contraction(rng, n, m, seed); break;
    case InstanceKind::takahashi: inst = gen_takahashi(rng, n, m, seed); break;
  }
  validate_instance(inst);
  return inst;
}

}  // namespace conefix
