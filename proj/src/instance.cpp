#include "conefix/instance.hpp"

#include "conefix/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace conefix {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::vector<double>> ScalarMetricSpec::distances() const {
  if (kind == Kind::table) return values;
  const std::size_t n = values.size();
  std::vector<std::vector<double>> rho(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < values[i].size(); ++k) {
        const double diff = values[i][k] - values[j][k];
        sum += diff * diff;
      }
      rho[i][j] = std::sqrt(sum);
    }
  }
  return rho;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

ConeMetricSpace Instance::metric_space() const {
  if (metric.kind == MetricSpec::Kind::table) return ConeMetricSpace(space, points, metric.table);
  return ConeMetricSpace::scaled_scalar(space, points, metric.rho.distances(), metric.weight);
}

const SetValuedMap& Instance::map(const std::string& name) const {
  const auto it = maps.find(name);
  if (it == maps.end()) throw SchemaError("instance has no map named '" + name + "'");
  return it->second;
}

const LinearMap& Instance::op(const std::string& name) const {
  const auto it = operators.find(name);
  if (it == operators.end()) throw SchemaError("instance has no operator named '" + name + "'");
  return it->second;
}

const Potential& Instance::potential(const std::string& name) const {
  const auto it = potentials.find(name);
  if (it == potentials.end()) throw SchemaError("instance has no potential named '" + name + "'");
  return it->second;
}

double Instance::param(const std::string& name) const {
  const auto it = meta.params.find(name);
  if (it == meta.params.end()) throw SchemaError("instance has no parameter named '" + name + "'");
  return it->second;
}

PointIndex Instance::point(const std::string& label) const {
  const auto it = std::find(points.begin(), points.end(), label);
  if (it == points.end()) throw SchemaError("unknown point label '" + label + "'");
  return static_cast<PointIndex>(it - points.begin());
}

std::optional<Instance> Instance::without_point(PointIndex p) const {
  const std::size_t n = points.size();
  if (n <= 1 || p >= n) return std::nullopt;
  Instance out = *this;
  out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(p));

  auto drop = [p](auto& rows) { rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(p)); };
  if (metric.kind == MetricSpec::Kind::table) {
    drop(out.metric.table);
    for (auto& row : out.metric.table) drop(row);
  } else {
    drop(out.metric.rho.values);
    if (metric.rho.kind == ScalarMetricSpec::Kind::table) {
      for (auto& row : out.metric.rho.values) drop(row);
    }
  }

  out.maps.clear();
  for (const auto& [name, map] : maps) {
    std::vector<std::vector<PointIndex>> images;
    for (PointIndex x = 0; x < n; ++x) {
      if (x == p) continue;
      std::vector<PointIndex> image;
      for (PointIndex y : map(x)) {
        if (y != p) image.push_back(y > p ? y - 1 : y);
      }
      if (image.empty()) return std::nullopt;
      images.push_back(std::move(image));
    }
    out.maps.emplace(name, SetValuedMap(std::move(images)));
  }
  for (auto& [name, phi] : out.potentials) drop(phi.values);
  return out;
}

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_fail(where, "expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, std::size_t expected, const std::string& where) {
  if (!v.is_array()) schema_fail(where, "expected an array of numbers");
  if (expected != 0 && v.size() != expected) {
    schema_fail(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ConeVector vec(const json& v, std::size_t m, const std::string& where) {
  const auto xs = numbers(v, m, where);
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

const json& array(const json& v, std::size_t expected, const std::string& where) {
  if (!v.is_array()) schema_fail(where, "expected an array");
  if (v.size() != expected) {
    schema_fail(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

Eigen::MatrixXd matrix(const json& v, std::size_t m, const std::string& where) {
  array(v, m, where);
  Eigen::MatrixXd out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = numbers(v[i], m, where + "[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < m; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return out;
}

std::size_t positive_int(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) schema_fail(where, "expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

ordered_json to_json(const ConeVector& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(x);
  return out;
}

ordered_json to_json(const Eigen::MatrixXd& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

MetricSpec parse_metric(const json& doc, std::size_t n, std::size_t m) {
  const std::string where = "metric";
  const json& kind = field(doc, "kind", where);
  if (!kind.is_string()) schema_fail(where + ".kind", "expected a string");
  MetricSpec spec;
  if (kind == "table") {
    spec.kind = MetricSpec::Kind::table;
    const json& rows = array(field(doc, "values", where), n, where + ".values");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string wi = where + ".values[" + std::to_string(i) + "]";
      const json& row = array(rows[i], n, wi);
      std::vector<ConeVector> out;
      for (std::size_t j = 0; j < n; ++j) out.push_back(vec(row[j], m, wi + "[" + std::to_string(j) + "]"));
      spec.table.push_back(std::move(out));
    }
    return spec;
  }
  if (kind == "scaled_scalar") {
    spec.kind = MetricSpec::Kind::scaled_scalar;
    spec.weight = vec(field(doc, "weight", where), m, where + ".weight");
    const json& rho = field(doc, "rho", where);
    const json& rho_kind = field(rho, "kind", where + ".rho");
    if (rho_kind == "table") {
      spec.rho.kind = ScalarMetricSpec::Kind::table;
      const json& rows = array(field(rho, "values", where + ".rho"), n, where + ".rho.values");
      for (std::size_t i = 0; i < n; ++i) {
        spec.rho.values.push_back(numbers(rows[i], n, where + ".rho.values[" + std::to_string(i) + "]"));
      }
    } else if (rho_kind == "euclidean") {
      spec.rho.kind = ScalarMetricSpec::Kind::euclidean;
      const json& rows = array(field(rho, "coords", where + ".rho"), n, where + ".rho.coords");
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i) {
        auto row = numbers(rows[i], k, where + ".rho.coords[" + std::to_string(i) + "]");
        if (i == 0) {
          k = row.size();
          if (k == 0) schema_fail(where + ".rho.coords", "coordinates must be nonempty");
        }
        spec.rho.values.push_back(std::move(row));
      }
    } else {
      schema_fail(where + ".rho.kind", "unknown scalar metric kind " + rho_kind.dump());
    }
    return spec;
  }
  schema_fail(where + ".kind", "unknown metric kind " + kind.dump());
}

void validate_scalar_metric(const std::vector<std::vector<double>>& rho, double tol) {
  const std::size_t n = rho.size();
  double scale = 1.0;
  for (const auto& row : rho) {
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("scalar metric has non-finite entries");
      scale = std::max(scale, std::abs(v));
    }
  }
  const double slack = tol * scale;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string at = " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (i == j && std::abs(rho[i][j]) > slack) throw ValidationError("scalar metric: nonzero diagonal" + at);
      if (i != j && rho[i][j] <= slack) throw ValidationError("scalar metric: nonpositive distance" + at);
      if (std::abs(rho[i][j] - rho[j][i]) > slack) throw ValidationError("scalar metric: not symmetric" + at);
      for (std::size_t k = 0; k < n; ++k) {
        if (rho[i][j] > rho[i][k] + rho[k][j] + slack) {
          throw ValidationError("scalar metric: triangle inequality fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
}

}  // namespace

void validate_instance(const Instance& instance) {
  const OrderedSpace& e = instance.space;
  if (instance.metric.kind == MetricSpec::Kind::scaled_scalar) {
    const ConeVector& w = instance.metric.weight;
    if (!w.allFinite() || !e.in_cone(w) || e.is_zero(w)) {
      throw ValidationError("scaled_scalar weight must lie in P minus {0}");
    }
    validate_scalar_metric(instance.metric.rho.distances(), e.tol());
  }
  ConeMetricSpace cms = [&] {
    try {
      return instance.metric_space();
    } catch (const std::invalid_argument& ex) {
      throw ValidationError(std::string("metric: ") + ex.what());
    }
  }();
  const ValidationReport report = validate_cone_metric(cms);
  if (!report.passes()) throw ValidationError(report.summary(cms));
  if (report.derived == ValidationReport::Derived::violated) {
    throw InternalError("axioms hold but symmetry or nonnegativity fails: " + report.summary(cms));
  }
  for (const auto& [name, op] : instance.operators) {
    if (!op.allFinite()) throw ValidationError("operator '" + name + "' has non-finite entries");
  }
  for (const auto& [name, phi] : instance.potentials) {
    for (const auto& v : phi.values) {
      if (!v.allFinite()) throw ValidationError("potential '" + name + "' has non-finite entries");
    }
  }
}

Instance instance_from_json(const json& doc, bool validate) {
  if (!doc.is_object()) schema_fail("document", "expected an object");
  const json& version = field(doc, "version", "document");
  if (!version.is_number_integer()) schema_fail("version", "expected an integer");
  if (version.get<long long>() != kInstanceVersion) {
    schema_fail("version", "unsupported schema version " + version.dump());
  }

  Instance out;
  const json& space = field(doc, "space", "document");
  const std::size_t m = positive_int(field(space, "dim", "space"), "space.dim");
  const Eigen::MatrixXd generators = matrix(field(space, "generators", "space"), m, "space.generators");
  double tol = default_tolerance();
  if (space.contains("tol")) tol = number(space["tol"], "space.tol");
  try {
    out.space = OrderedSpace(generators, tol);
  } catch (const std::invalid_argument& ex) {
    throw ValidationError(std::string("space: ") + ex.what());
  }

  const json& points = field(doc, "points", "document");
  if (!points.is_array() || points.empty()) schema_fail("points", "expected a nonempty array of labels");
  for (const auto& p : points) {
    if (!p.is_string()) schema_fail("points", "labels must be strings");
    out.points.push_back(p.get<std::string>());
  }
  const std::size_t n = out.points.size();
  {
    auto sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      schema_fail("points", "labels must be unique");
    }
  }

  out.metric = parse_metric(field(doc, "metric", "document"), n, m);

  if (doc.contains("maps")) {
    const json& maps = doc["maps"];
    if (!maps.is_object()) schema_fail("maps", "expected an object");
    for (const auto& [name, images] : maps.items()) {
      const std::string where = "maps." + name;
      array(images, n, where);
      std::vector<std::vector<PointIndex>> sets;
      for (std::size_t x = 0; x < n; ++x) {
        const json& image = images[x];
        if (!image.is_array()) schema_fail(where, "images must be arrays of labels");
        std::vector<PointIndex> set;
        for (const auto& label : image) {
          if (!label.is_string()) schema_fail(where, "images must be arrays of labels");
          set.push_back(out.point(label.get<std::string>()));
        }
        if (set.empty()) throw ValidationError(where + ": image of " + out.points[x] + " is empty");
        sets.push_back(std::move(set));
      }
      out.maps.emplace(name, SetValuedMap(std::move(sets)));
    }
  }
  if (doc.contains("operators")) {
    const json& ops = doc["operators"];
    if (!ops.is_object()) schema_fail("operators", "expected an object");
    for (const auto& [name, mat] : ops.items()) out.operators.emplace(name, matrix(mat, m, "operators." + name));
  }
  if (doc.contains("potentials")) {
    const json& pots = doc["potentials"];
    if (!pots.is_object()) schema_fail("potentials", "expected an object");
    for (const auto& [name, rows] : pots.items()) {
      const std::string where = "potentials." + name;
      array(rows, n, where);
      Potential phi;
      for (std::size_t x = 0; x < n; ++x) phi.values.push_back(vec(rows[x], m, where + "[" + std::to_string(x) + "]"));
      out.potentials.emplace(name, std::move(phi));
    }
  }
  if (doc.contains("meta")) {
    const json& meta = doc["meta"];
    if (!meta.is_object()) schema_fail("meta", "expected an object");
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned()) schema_fail("meta.seed", "expected a nonnegative integer");
      out.meta.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("description")) {
      if (!meta["description"].is_string()) schema_fail("meta.description", "expected a string");
      out.meta.description = meta["description"].get<std::string>();
    }
    if (meta.contains("params")) {
      if (!meta["params"].is_object()) schema_fail("meta.params", "expected an object");
      for (const auto& [name, v] : meta["params"].items()) out.meta.params[name] = number(v, "meta.params." + name);
    }
  }

  if (validate) validate_instance(out);
  return out;
}

ordered_json to_json(const Instance& instance) {
  ordered_json doc;
  doc["version"] = instance.version;
  doc["space"] = {{"dim", instance.space.dim()},
                  {"generators", to_json(instance.space.generators())},
                  {"tol", instance.space.tol()}};
  doc["points"] = instance.points;

  ordered_json metric;
  if (instance.metric.kind == MetricSpec::Kind::table) {
    metric["kind"] = "table";
    ordered_json rows = ordered_json::array();
    for (const auto& row : instance.metric.table) {
      ordered_json r = ordered_json::array();
      for (const auto& d : row) r.push_back(to_json(d));
      rows.push_back(std::move(r));
    }
    metric["values"] = std::move(rows);
  } else {
    metric["kind"] = "scaled_scalar";
    ordered_json rho;
    if (instance.metric.rho.kind == ScalarMetricSpec::Kind::table) {
      rho["kind"] = "table";
      rho["values"] = instance.metric.rho.values;
    } else {
      rho["kind"] = "euclidean";
      rho["coords"] = instance.metric.rho.values;
    }
    metric["rho"] = std::move(rho);
    metric["weight"] = to_json(instance.metric.weight);
  }
  doc["metric"] = std::move(metric);

  ordered_json maps = ordered_json::object();
  for (const auto& [name, map] : instance.maps) {
    ordered_json images = ordered_json::array();
    for (const auto& image : map.images()) {
      ordered_json labels = ordered_json::array();
      for (PointIndex y : image) labels.push_back(instance.points.at(y));
      images.push_back(std::move(labels));
    }
    maps[name] = std::move(images);
  }
  doc["maps"] = std::move(maps);

  ordered_json ops = ordered_json::object();
  for (const auto& [name, op] : instance.operators) ops[name] = to_json(op);
  doc["operators"] = std::move(ops);

  ordered_json pots = ordered_json::object();
  for (const auto& [name, phi] : instance.potentials) {
    ordered_json rows = ordered_json::array();
    for (const auto& v : phi.values) rows.push_back(to_json(v));
    pots[name] = std::move(rows);
  }
  doc["potentials"] = std::move(pots);

  ordered_json params = ordered_json::object();
  for (const auto& [name, v] : instance.meta.params) params[name] = v;
  doc["meta"] = {{"seed", instance.meta.seed},
                 {"description", instance.meta.description},
                 {"params", std::move(params)}};
  return doc;
}

Instance parse_instance(const std::string& text, bool validate) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  return instance_from_json(doc, validate);
}

Instance load_instance(const std::filesystem::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), validate);
}

std::string dump_instance(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ExitCode::parse, "cannot write " + path.string());
  out << dump_instance(instance);
}

}  // namespace conefix
