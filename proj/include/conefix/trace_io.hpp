#pragma once

#include "conefix/cone_metric.hpp"
#include "conefix/solvers.hpp"

#include <iosfwd>
#include <string>

namespace conefix {

/// Writes a trace as JSON lines: one object {step, point, d_step, delta_phi}
/// per iterate (d_step and delta_phi describe the step into that iterate and
/// are null for the start), then one object carrying the method, the
/// iteration count and the certificate.
void write_trace_jsonl(std::ostream& out, const ConeMetricSpace& cms, const SolveTrace& trace);
std::string trace_to_jsonl(const ConeMetricSpace& cms, const SolveTrace& trace);

/// Parses the format above. The potential is not part of the format, so the
/// returned trace has an empty one. Throws SchemaError on malformed input.
SolveTrace read_trace_jsonl(std::istream& in, const ConeMetricSpace& cms);

}  // namespace conefix
