#include "conefix/error.hpp"
#include "conefix/generator.hpp"
#include "conefix/instance.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace conefix;
using testing_support::fixture;
using testing_support::load_fixture;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

nlohmann::json minimal_doc() {
  return nlohmann::json::parse(R"({
    "version": 1,
    "space": {"dim": 1, "generators": [[1.0]], "tol": 1e-9},
    "points": ["a", "b"],
    "metric": {"kind": "table", "values": [[[0.0], [1.0]], [[1.0], [0.0]]]},
    "maps": {}, "operators": {}, "potentials": {},
    "meta": {"seed": 0, "description": "", "params": {}}
  })");
}

template <typename E>
void expect_error(const nlohmann::json& doc, ExitCode code) {
  try {
    (void)instance_from_json(doc);
    FAIL() << "no error for " << doc.dump();
  } catch (const E& ex) {
    EXPECT_EQ(ex.code(), code) << ex.what();
  }
}

}  // namespace

TEST(Instance, FixturesRoundTrip) {
  for (const char* name : {"line.json", "incomparable.json"}) {
    const Instance inst = load_fixture(name);
    EXPECT_EQ(nlohmann::json(to_json(inst)), read_json(fixture(name))) << name;
    EXPECT_EQ(dump_instance(parse_instance(dump_instance(inst))), dump_instance(inst));
  }
}

TEST(Instance, GeneratedRoundTripThroughFile) {
  const auto path = std::filesystem::temp_directory_path() / "conefix_roundtrip.json";
  for (auto kind : {InstanceKind::random_metric, InstanceKind::caristi, InstanceKind::weak_contraction,
                    InstanceKind::takahashi}) {
    const Instance inst = generate_instance(kind, 5, 3, 42);
    save_instance(inst, path);
    const Instance again = load_instance(path);
    EXPECT_EQ(dump_instance(again), dump_instance(inst)) << to_string(kind);
    EXPECT_EQ(again.maps, inst.maps);
  }
  std::filesystem::remove(path);
}

TEST(Instance, ErrorKinds) {
  EXPECT_THROW(load_fixture("not_json.json"), ParseError);
  EXPECT_THROW(load_fixture("does_not_exist.json"), ParseError);
  EXPECT_THROW(load_fixture("unknown_kind.json"), SchemaError);
  EXPECT_THROW(load_fixture("broken_triangle.json"), ValidationError);
  EXPECT_NO_THROW(load_fixture("broken_triangle.json", false));
}

TEST(Instance, SchemaViolations) {
  auto doc = minimal_doc();
  doc.erase("points");
  expect_error<SchemaError>(doc, ExitCode::schema);

  doc = minimal_doc();
  doc["version"] = 2;
  expect_error<SchemaError>(doc, ExitCode::schema);

  doc = minimal_doc();
  doc["metric"]["values"][0].erase(1);
  expect_error<SchemaError>(doc, ExitCode::schema);

  doc = minimal_doc();
  doc["maps"]["T"] = {{"a"}, {"z"}};
  expect_error<SchemaError>(doc, ExitCode::schema);

  doc = minimal_doc();
  doc["potentials"]["phi"] = {{1.0}};
  expect_error<SchemaError>(doc, ExitCode::schema);

  doc = minimal_doc();
  doc["space"]["generators"] = "identity";
  expect_error<SchemaError>(doc, ExitCode::schema);
}

TEST(Instance, ValidationViolations) {
  auto doc = minimal_doc();
  doc["space"]["generators"] = {{0.0}};
  expect_error<ValidationError>(doc, ExitCode::validation);

  doc = minimal_doc();
  doc["maps"]["T"] = {{"a"}, nlohmann::json::array()};
  expect_error<ValidationError>(doc, ExitCode::validation);

  doc = minimal_doc();
  doc["metric"]["values"][0][1] = {2.0};  // asymmetric, breaks the triangle inequality
  expect_error<ValidationError>(doc, ExitCode::validation);

  doc = minimal_doc();
  doc["metric"] = nlohmann::json::parse(
      R"({"kind": "scaled_scalar", "rho": {"kind": "table", "values": [[0, 1], [1, 0]]}, "weight": [-1.0]})");
  expect_error<ValidationError>(doc, ExitCode::validation);
}

TEST(Instance, NamedLookups) {
  const Instance inst = load_fixture("line.json");
  EXPECT_EQ(inst.point("p1"), 1u);
  EXPECT_DOUBLE_EQ(inst.param("epsilon"), 0.1);
  EXPECT_THROW((void)inst.point("nowhere"), SchemaError);
  EXPECT_THROW((void)inst.map("missing"), SchemaError);
  EXPECT_THROW((void)inst.op("missing"), SchemaError);
  EXPECT_THROW((void)inst.potential("missing"), SchemaError);
  EXPECT_THROW((void)inst.param("missing"), SchemaError);
}

TEST(Instance, WithoutPoint) {
  const Instance inst = load_fixture("line.json");
  // Removing p0 would leave T p1 = {p0} empty, removing p2 would empty f p0.
  EXPECT_FALSE(inst.without_point(0));
  EXPECT_FALSE(inst.without_point(2));
  const auto smaller = inst.without_point(1);
  ASSERT_TRUE(smaller);
  EXPECT_EQ(smaller->points, (std::vector<std::string>{"p0", "p2"}));
  EXPECT_TRUE(smaller->metric_space().dist(0, 1).isApprox(inst.metric_space().dist(0, 2)));
  EXPECT_EQ(smaller->map("T")(1), (PointSet{0}));
  EXPECT_EQ(smaller->potential("phi").size(), 2u);
  EXPECT_TRUE(smaller->potential("phi")(1).isZero());
}
