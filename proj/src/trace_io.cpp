#include "conefix/trace_io.hpp"

#include "conefix/error.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace conefix {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json vector_json(const ConeVector& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(x);
  return out;
}

ConeVector vector_from(const json& v, std::size_t m) {
  if (!v.is_array() || v.size() != m) throw SchemaError("trace: expected a vector of dimension " + std::to_string(m));
  ConeVector out(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (!v[i].is_number()) throw SchemaError("trace: vector entries must be numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

template <typename Enum>
Enum enum_from(const std::string& text, std::initializer_list<Enum> values) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  throw SchemaError("trace: unknown value '" + text + "'");
}

PointIndex point_from(const json& v, const ConeMetricSpace& cms) {
  if (!v.is_string()) throw SchemaError("trace: point must be a label");
  try {
    return cms.index_of(v.get<std::string>());
  } catch (const std::out_of_range& ex) {
    throw SchemaError(std::string("trace: ") + ex.what());
  }
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const ConeMetricSpace& cms, const SolveTrace& trace) {
  for (std::size_t s = 0; s < trace.iterates.size(); ++s) {
    ordered_json line;
    line["step"] = s;
    line["point"] = cms.label(trace.iterates[s]);
    if (s == 0) {
      line["d_step"] = nullptr;
      line["delta_phi"] = nullptr;
    } else {
      line["d_step"] = vector_json(trace.steps[s - 1].distance);
      line["delta_phi"] = vector_json(trace.steps[s - 1].potential_drop);
    }
    out << line.dump() << '\n';
  }
  ordered_json last;
  last["method"] = to_string(trace.method);
  last["iterations"] = trace.iterations();
  last["certificate"] = {{"kind", to_string(trace.certificate.kind)},
                         {"point", cms.label(trace.certificate.point)},
                         {"value", vector_json(trace.certificate.value)}};
  out << last.dump() << '\n';
}

std::string trace_to_jsonl(const ConeMetricSpace& cms, const SolveTrace& trace) {
  std::ostringstream out;
  write_trace_jsonl(out, cms, trace);
  return out.str();
}

namespace {

SolveTrace read_lines(std::istream& in, const ConeMetricSpace& cms) {
  const std::size_t m = cms.space().dim();
  SolveTrace trace;
  bool finished = false;
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    if (finished) throw SchemaError("trace: content after the certificate line");
    json line;
    try {
      line = json::parse(text);
    } catch (const json::parse_error& ex) {
      throw SchemaError(std::string("trace: invalid JSON line: ") + ex.what());
    }
    if (line.contains("certificate")) {
      trace.method = enum_from<Method>(line.at("method").get<std::string>(),
                                       {Method::bishop_phelps, Method::caristi, Method::takahashi,
                                        Method::weak_contraction, Method::single_valued});
      const json& cert = line["certificate"];
      trace.certificate.kind = enum_from<CertificateKind>(
          cert.at("kind").get<std::string>(),
          {CertificateKind::maximal, CertificateKind::member_of_image, CertificateKind::image_is_singleton,
           CertificateKind::attains_infimum, CertificateKind::function_fixed});
      trace.certificate.point = point_from(cert.at("point"), cms);
      trace.certificate.value = vector_from(cert.at("value"), m);
      if (line.at("iterations").get<std::size_t>() != trace.steps.size()) {
        throw SchemaError("trace: iteration count does not match the step lines");
      }
      finished = true;
      continue;
    }
    if (!line.contains("step") || line["step"].get<std::size_t>() != trace.iterates.size()) {
      throw SchemaError("trace: steps must be numbered consecutively from 0");
    }
    trace.iterates.push_back(point_from(line.at("point"), cms));
    if (trace.iterates.size() > 1) {
      trace.steps.push_back({vector_from(line.at("d_step"), m), vector_from(line.at("delta_phi"), m)});
    }
  }
  if (!finished) throw SchemaError("trace: missing certificate line");
  if (trace.iterates.empty()) throw SchemaError("trace: no iterates");
  return trace;
}

}  // namespace

SolveTrace read_trace_jsonl(std::istream& in, const ConeMetricSpace& cms) {
  try {
    return read_lines(in, cms);
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("trace: ") + ex.what());
  }
}

}  // namespace conefix
