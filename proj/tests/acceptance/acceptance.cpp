// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exits nonzero if any criterion fails.

#include "conefix/generator.hpp"
#include "conefix/instance.hpp"
#include "conefix/property_suite.hpp"
#include "conefix/solvers.hpp"

#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace conefix;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome suite(const std::string& name, std::size_t trials, double time_limit = 0.0) {
  const SuiteReport report = run_property_suite(name, trials, kSeed);
  std::ostringstream detail;
  detail << name << ": " << report.trials << " trials, " << report.failures.size() << " failures, "
         << report.elapsed_seconds << " s";
  bool pass = report.passed();
  if (time_limit > 0.0) {
    detail << " (limit " << time_limit << " s)";
    pass = pass && report.elapsed_seconds < time_limit;
  }
  if (!report.passed()) {
    const SuiteFailure& first = report.failures.front();
    detail << "; first failure (trial " << first.trial << "): " << first.message;
  }
  return {pass, detail.str()};
}

Outcome both(Outcome a, Outcome b) { return {a.pass && b.pass, a.detail + "; " + b.detail}; }

Outcome huang_zhang_family() {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (std::uint64_t cloud = 0; cloud < 10; ++cloud) {
      const Instance inst = huang_zhang_instance(alpha, 2 + cloud % 7, derive_seed(kSeed, cloud));
      const ConeMetricSpace cms = inst.metric_space();
      const ValidationReport report = validate_cone_metric(cms);
      ++checked;
      if (!report.passes()) {
        ++failed;
        if (first.empty()) first = report.summary(cms);
      }
    }
  }
  std::string detail = std::to_string(checked) + " scaled-scalar spaces, " + std::to_string(failed) + " invalid";
  if (!first.empty()) detail += "; " + first;
  return {failed == 0, detail};
}

Outcome line_fixture() {
  const Instance inst = load_instance(std::string(CONEFIX_FIXTURE_DIR) + "/line.json");
  const ConeMetricSpace cms = inst.metric_space();
  const auto delta = kplus_factor(inst.space, inst.op("delta"));
  if (!delta) return {false, "delta is not in K+"};
  const SolveTrace trace = weak_contraction_solve(cms, inst.map("T"), *delta, inst.op("L"), 0.1, inst.point("p2"));
  std::string labels;
  for (PointIndex p : trace.iterates) labels += (labels.empty() ? "" : ",") + cms.label(p);
  const PointIndex star = trace.certificate.point;
  const bool pass = labels == "p2,p1,p0" && trace.certificate.kind == CertificateKind::member_of_image &&
                    cms.label(star) == "p0" && inst.map("T").contains(star, star) &&
                    check_trace(cms, trace, &inst.map("T")).empty();
  return {pass, "trace [" + labels + "], certificate " + to_string(trace.certificate.kind) + " at " + cms.label(star)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axioms imply symmetry and d >= 0", [] { return suite("remark_r2", 500, 5.0); }},
      {"a <= b << c implies a << c", [] { return suite("remark_r1", 50); }},
      {"Bronsted order is a partial order", [] { return suite("bronsted_order", 200); }},
      {"climb reaches a maximal element", [] { return suite("theorem_t1", 200); }},
      {"Caristi fixed points", [] { return both(suite("theorem_t2_exists", 200), suite("theorem_t2_forall", 50)); }},
      {"infimum of phi attained", [] { return suite("theorem_t3", 100); }},
      {"weak contraction fixed points", [] { return suite("theorem_t4", 100); }},
      {"phi_T inequality", [] { return suite("prop_p1", 100); }},
      {"s-contractions are contractions", [] { return suite("remark_r6", 100); }},
      {"K+ agrees with the ray oracle", [] { return suite("kplus", 1000); }},
      {"scaled scalar metrics (1, alpha)", huang_zhang_family},
      {"line fixture trace", line_fixture},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& ex) {
      outcome = {false, std::string("exception: ") + ex.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %2zu  %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
