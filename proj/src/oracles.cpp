#include "conefix/oracles.hpp"

#include "conefix/random.hpp"

#include <Eigen/SVD>

namespace conefix::oracle {

KPlusVerdict kplus_ray_oracle(const OrderedSpace& space, const LinearMap& map, std::uint64_t seed, int samples) {
  const std::size_t m = space.dim();
  if (!map.allFinite()) return {false, 0.0, "non-finite"};

  auto dominated_at = [&](double t) {
    for (std::size_t i = 0; i < m; ++i) {
      const ConeVector r = space.ray(i);
      if (!space.leq(map * r, t * r)) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < m; ++i) {
    if (!space.in_cone(map * space.ray(i))) return {false, 0.0, "ray " + std::to_string(i) + " leaves the cone"};
  }
  const double ceiling = 1.0 - kStrictMargin;
  if (!dominated_at(ceiling)) return {false, 0.0, "no t < 1 dominates every ray"};

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(map);
  const auto& sv = svd.singularValues();
  if (sv.minCoeff() <= 1e-10 * sv.maxCoeff() || sv.maxCoeff() == 0.0) return {false, 0.0, "not injective"};

  double lo = 0.0;
  double hi = ceiling;
  if (dominated_at(lo)) {
    hi = lo;
  } else {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dominated_at(mid) ? hi : lo) = mid;
    }
  }

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(m));
    for (auto& ci : c) ci = rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, 1.0);
    const ConeVector x = space.from_cone_coords(c);
    const ConeVector image = map * x;
    if (!space.in_cone(image) || !space.leq(image, hi * x)) {
      return {false, hi, "sampled combination violates the bound"};
    }
  }
  return {true, hi, ""};
}

}  // namespace conefix::oracle
