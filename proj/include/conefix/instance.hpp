#pragma once

#include "conefix/cone_metric.hpp"
#include "conefix/mappings.hpp"
#include "conefix/ordered_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conefix {

inline constexpr int kInstanceVersion = 1;

/// Scalar metric rho, either tabulated or induced by point coordinates.
struct ScalarMetricSpec {
  enum class Kind { table, euclidean };
  Kind kind = Kind::table;
  /// n×n distances (table) or one coordinate row per point (euclidean).
  std::vector<std::vector<double>> values;

  [[nodiscard]] std::vector<std::vector<double>> distances() const;
};

/// How the cone metric is stored in the file. Kept verbatim so that saving
/// reproduces the loaded document.
struct MetricSpec {
  enum class Kind { table, scaled_scalar };
  Kind kind = Kind::table;
  ConeMetricSpace::Table table;  // kind == table
  ScalarMetricSpec rho;          // kind == scaled_scalar
  ConeVector weight;             // kind == scaled_scalar
};

struct InstanceMeta {
  std::uint64_t seed = 0;
  std::string description;
  /// Named numeric parameters, e.g. the epsilon a weak contraction was
  /// generated for.
  std::map<std::string, double> params;
};

/// Everything a run needs: the ordered space, the points and their metric,
/// and named maps, operators and potentials.
struct Instance {
  int version = kInstanceVersion;
  OrderedSpace space;
  std::vector<std::string> points;
  MetricSpec metric;
  std::map<std::string, SetValuedMap> maps;
  std::map<std::string, LinearMap> operators;
  std::map<std::string, Potential> potentials;
  InstanceMeta meta;

  [[nodiscard]] ConeMetricSpace metric_space() const;

  /// Named lookups; throw SchemaError when the name is missing.
  [[nodiscard]] const SetValuedMap& map(const std::string& name) const;
  [[nodiscard]] const LinearMap& op(const std::string& name) const;
  [[nodiscard]] const Potential& potential(const std::string& name) const;
  [[nodiscard]] double param(const std::string& name) const;
  /// Throws SchemaError for an unknown label.
  [[nodiscard]] PointIndex point(const std::string& label) const;

  /// The instance restricted to X minus {p}; nullopt if some map image would
  /// become empty or only one point is left.
  [[nodiscard]] std::optional<Instance> without_point(PointIndex p) const;
};

/// Default labels p0, p1, ...
std::vector<std::string> default_labels(std::size_t n);

/// Checks every mathematical invariant of a parsed instance: a scaled
/// scalar metric needs weight in P minus θ and rho a metric, the cone metric
/// axioms must hold, and operators and potentials must be finite.
/// Throws ValidationError with the first violation.
void validate_instance(const Instance& instance);

nlohmann::ordered_json to_json(const Instance& instance);
/// Throws SchemaError on a schema mismatch, and ValidationError (when
/// `validate` is set) on an invariant violation.
Instance instance_from_json(const nlohmann::json& doc, bool validate = true);

/// Throws ParseError when the file is not JSON, plus the errors of
/// instance_from_json.
Instance load_instance(const std::filesystem::path& path, bool validate = true);
Instance parse_instance(const std::string& text, bool validate = true);
void save_instance(const Instance& instance, const std::filesystem::path& path);
std::string dump_instance(const Instance& instance);

}  // namespace conefix
