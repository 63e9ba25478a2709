#pragma once

#include "conefix/ordered_space.hpp"

#include <cstdint>
#include <string>

namespace conefix::oracle {

struct KPlusVerdict {
  bool member = false;
  /// Smallest t (to bisection precision) with M r ⪯ t r on every extreme ray.
  double factor = 0.0;
  std::string reason;
};

/// Decides K₊(E) membership from the defining inequalities alone:
/// θ ⪯ M r and M r ⪯ t r on every extreme ray r, t found by bisection on
/// [0, 1), injectivity from the singular values, then θ ⪯ M x ⪯ t x
/// confirmed on `samples` random nonnegative combinations of the rays.
KPlusVerdict kplus_ray_oracle(const OrderedSpace& space, const LinearMap& map, std::uint64_t seed,
                              int samples = 1000);

}  // namespace conefix::oracle
