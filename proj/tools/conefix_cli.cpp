#include "conefix/error.hpp"
#include "conefix/generator.hpp"
#include "conefix/instance.hpp"
#include "conefix/mappings.hpp"
#include "conefix/property_suite.hpp"
#include "conefix/solvers.hpp"
#include "conefix/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace conefix;
using nlohmann::ordered_json;

namespace {

ordered_json vec_json(const ConeVector& v) { return std::vector<double>(v.begin(), v.end()); }

ordered_json report_json(const ConeMetricSpace& cms, const ClassifierReport& report) {
  ordered_json out;
  out["condition"] = report.condition;
  out["holds"] = report.holds;
  if (report.factor) out["factor"] = *report.factor;
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"x", cms.label(w.x)}, {"y", cms.label(w.y)}, {"lhs", vec_json(w.lhs)}, {"rhs", vec_json(w.rhs)}});
  }
  out["witnesses"] = std::move(witnesses);
  return out;
}

/// Operator by name. An explicitly requested operator must exist; a default
/// name that is absent yields nullopt.
std::optional<LinearMap> lookup_op(const Instance& inst, const std::string& name, bool explicit_name) {
  if (inst.operators.count(name)) return inst.operators.at(name);
  if (explicit_name) return inst.op(name);  // throws SchemaError
  return std::nullopt;
}

struct ClassifyArgs {
  std::string file;
  std::string map = "T";
  std::string delta = "delta";
  std::string l = "L";
  std::string alpha = "alpha";
  std::string k = "k";
};

int run_classify(const ClassifyArgs& args, const CLI::App& cmd) {
  const Instance inst = load_instance(args.file);
  const ConeMetricSpace cms = inst.metric_space();
  const SetValuedMap& map = inst.map(args.map);
  check_map(cms, map);
  const OrderedSpace& e = inst.space;
  const auto m = static_cast<Eigen::Index>(e.dim());

  auto emit = [](const ordered_json& line) { std::cout << line.dump() << '\n'; };
  auto skipped = [&](const std::string& condition, const std::string& why) {
    emit({{"condition", condition}, {"skipped", why}});
  };
  auto certify = [&](const LinearMap& op, const std::string& role) -> std::optional<KPlusCertificate> {
    if (auto cert = kplus_factor(e, op)) return cert;
    const auto rejection = kplus_rejection(e, op);
    throw PreconditionError(role + " is not in K+: " + (rejection ? rejection->message : "rejected"));
  };
  auto guarded = [&](const std::string& condition, auto&& body) {
    try {
      emit(report_json(cms, body()));
    } catch (const PreconditionError& ex) {
      emit({{"condition", condition}, {"holds", false}, {"precondition", ex.what()}});
    }
  };

  const auto delta = lookup_op(inst, args.delta, cmd.count("--delta") > 0);
  const auto l = lookup_op(inst, args.l, cmd.count("--L") > 0);
  const auto k = lookup_op(inst, args.k, cmd.count("--k") > 0);
  const auto alpha = lookup_op(inst, args.alpha, cmd.count("--alpha") > 0);

  if (k) guarded("contraction", [&] { return check_contraction(cms, map, *certify(*k, "k")); });
  else if (delta) guarded("contraction", [&] { return check_contraction(cms, map, *certify(*delta, "delta")); });
  else skipped("contraction", "no operator '" + args.k + "' or '" + args.delta + "'");

  if (delta) {
    const LinearMap lop = l ? *l : LinearMap(LinearMap::Zero(m, m));
    guarded("weak_contraction", [&] { return check_weak_contraction(cms, map, *certify(*delta, "delta"), lop); });
  } else {
    skipped("weak_contraction", "no operator '" + args.delta + "'");
  }

  if (k) guarded("s_contraction", [&] { return check_s_contraction(cms, map, *certify(*k, "k")); });
  else skipped("s_contraction", "no operator '" + args.k + "'");

  if (alpha) {
    guarded("kannan", [&] { return check_kannan(cms, map, *alpha); });
    guarded("chatterjea", [&] { return check_chatterjea(cms, map, *alpha); });
  } else {
    skipped("kannan", "no operator '" + args.alpha + "'");
    skipped("chatterjea", "no operator '" + args.alpha + "'");
  }
  return 0;
}

struct SolveArgs {
  std::string file;
  std::string method;
  std::string map = "T";
  std::string phi = "phi";
  std::string x0;
  std::optional<double> epsilon;
  std::string mode = "exists";
  std::string delta = "delta";
  std::string l = "L";
};

int run_solve(const SolveArgs& args) {
  const Instance inst = load_instance(args.file);
  const ConeMetricSpace cms = inst.metric_space();
  const PointIndex x0 = args.x0.empty() ? 0 : inst.point(args.x0);
  SolveTrace trace;
  if (args.method == "bishop-phelps") {
    trace = bishop_phelps_climb(cms, inst.potential(args.phi), x0);
  } else if (args.method == "caristi") {
    const SetValuedMap& map = inst.map(args.map);
    check_map(cms, map);
    trace = caristi_solve(cms, map, inst.potential(args.phi), args.mode == "forall" ? CaristiMode::forall : CaristiMode::exists, x0);
  } else if (args.method == "takahashi") {
    trace = takahashi_solve(cms, inst.potential(args.phi), x0);
  } else if (args.method == "single") {
    const SetValuedMap& map = inst.map(args.map);
    check_map(cms, map);
    if (!map.is_single_valued()) throw PreconditionError("map '" + args.map + "' is not single-valued");
    std::vector<PointIndex> f;
    for (const auto& image : map.images()) f.push_back(image.front());
    trace = single_valued_solve(cms, f, inst.potential(args.phi), x0);
  } else {
    const SetValuedMap& map = inst.map(args.map);
    check_map(cms, map);
    const double eps = args.epsilon ? *args.epsilon : inst.param("epsilon");
    const auto delta = kplus_factor(inst.space, inst.op(args.delta));
    if (!delta) throw PreconditionError("operator '" + args.delta + "' is not in K+");
    const auto m = static_cast<Eigen::Index>(inst.space.dim());
    const LinearMap l = inst.operators.count(args.l) ? inst.op(args.l) : LinearMap(LinearMap::Zero(m, m));
    trace = weak_contraction_solve(cms, map, *delta, l, eps, x0);
  }
  write_trace_jsonl(std::cout, cms, trace);
  return 0;
}

struct GenArgs {
  std::string kind;
  std::size_t n = 5;
  std::size_t m = 2;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  InstanceKind kind{};
  try {
    kind = parse_instance_kind(args.kind);
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(ex.what());
  }
  const Instance inst = generate_instance(kind, args.n, args.m, args.seed);
  if (args.out.empty()) std::cout << dump_instance(inst);
  else save_instance(inst, args.out);
  return 0;
}

struct CheckArgs {
  std::string suite;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

int run_check_cmd(const CheckArgs& args) {
  const PropertySuite* suite = nullptr;
  try {
    suite = &find_suite(args.suite);
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(ex.what());
  }
  const SuiteReport report = run_property_suite(*suite, args.trials, args.seed, args.workers);
  std::cout << to_json(report).dump(2) << '\n';
  std::cerr << report.suite << ": " << report.trials << " trials, " << report.failures.size() << " failures, "
            << report.elapsed_seconds << " s\n";
  return report.passed() ? 0 : static_cast<int>(ExitCode::internal);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed points of set-valued maps on finite cone metric spaces"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check an instance file against the schema and the cone metric axioms");
  validate->add_option("file", validate_file)->required();

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Report which contraction conditions a map satisfies");
  classify->add_option("file", classify_args.file)->required();
  classify->add_option("--map", classify_args.map, "map name")->capture_default_str();
  classify->add_option("--delta", classify_args.delta, "operator for the weak contraction")->capture_default_str();
  classify->add_option("--L", classify_args.l, "positive operator L (zero if absent)")->capture_default_str();
  classify->add_option("--alpha", classify_args.alpha, "operator for Kannan and Chatterjea")->capture_default_str();
  classify->add_option("--k", classify_args.k, "operator for contraction and s-contraction")->capture_default_str();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run a solver and print its trace as JSON lines");
  solve->add_option("file", solve_args.file)->required();
  solve->add_option("--method", solve_args.method)
      ->required()
      ->check(CLI::IsMember({"bishop-phelps", "caristi", "takahashi", "weak", "single"}));
  solve->add_option("--map", solve_args.map)->capture_default_str();
  solve->add_option("--phi", solve_args.phi)->capture_default_str();
  solve->add_option("--x0", solve_args.x0, "start label (default: first point)");
  solve->add_option("--epsilon", solve_args.epsilon, "condition (S) level (default: params.epsilon)");
  solve->add_option("--mode", solve_args.mode)->check(CLI::IsMember({"exists", "forall"}))->capture_default_str();
  solve->add_option("--delta", solve_args.delta)->capture_default_str();
  solve->add_option("--L", solve_args.l, "zero if absent")->capture_default_str();

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--kind", gen_args.kind, "random_metric, caristi, weak_contraction or takahashi")->required();
  gen->add_option("--n", gen_args.n)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_args.m)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed)->capture_default_str();
  gen->add_option("--out", gen_args.out, "output file (default: stdout)");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("--suite", check_args.suite)->required();
  check->add_option("--trials", check_args.trials)->capture_default_str();
  check->add_option("--seed", check_args.seed)->capture_default_str();
  check->add_option("--workers", check_args.workers)->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::schema);
  }

  try {
    if (validate->parsed()) {
      const Instance inst = load_instance(validate_file);
      std::cout << "valid: " << inst.points.size() << " points in dimension " << inst.space.dim() << '\n';
      return 0;
    }
    if (classify->parsed()) return run_classify(classify_args, *classify);
    if (solve->parsed()) return run_solve(solve_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (check->parsed()) return run_check_cmd(check_args);
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return static_cast<int>(ex.code());
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return static_cast<int>(ExitCode::precondition);
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << '\n';
    return static_cast<int>(ExitCode::internal);
  }
  return 0;
}
