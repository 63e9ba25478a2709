#pragma once

#include "conefix/instance.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <string>

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(CONEFIX_FIXTURE_DIR) + "/" + name; }

inline conefix::Instance load_fixture(const std::string& name, bool validate = true) {
  return conefix::load_instance(fixture(name), validate);
}

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline ref::Vec to_std(const Eigen::VectorXd& v) { return ref::Vec(v.begin(), v.end()); }

inline ref::Mat to_std(const Eigen::MatrixXd& m) {
  ref::Mat out(static_cast<std::size_t>(m.rows()), ref::Vec(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

}  // namespace testing_support
