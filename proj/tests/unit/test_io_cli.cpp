#include <cstdio>
#include <fstream>

#include "affine/cli.hpp"
#include "fixtures.hpp"

using namespace fx;

namespace {

std::string data(const char* name) { return std::string(AFFINE_DATA_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "affine");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  int code = cli::main(static_cast<int>(argv.size()), argv.data());
  std::string out = testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  return {code, out};
}

io::Json cli_json(std::vector<std::string> args) {
  args.push_back("--json");
  CliRun r = cli(std::move(args));
  return io::Json::parse(r.out);
}

TEST(Io, StructureRoundTrip) {
  auto m = algebra({"1/2", "1/3", "1/6"}).to_structure({{"c", 5}});
  auto back = io::structure_from_json(io::structure_to_json(m));
  EXPECT_EQ(back.labels(), m.labels());
  EXPECT_EQ(back.metric(), m.metric());
  EXPECT_EQ(back.constants(), m.constants());
  EXPECT_EQ(back.function("meet").values, m.function("meet").values);
  EXPECT_EQ(back.relation("mu").values, m.relation("mu").values);
  EXPECT_EQ(io::structure_to_json(back).dump(), io::structure_to_json(m).dump());
}

TEST(Io, LoadsBuiltinsAndFiles) {
  EXPECT_EQ(io::load_structure("pra22").size(), 4u);
  EXPECT_EQ(io::load_structure("pra2").size(), 2u);
  EXPECT_EQ(io::load_structure("pra:1/2,1/4,1/4").size(), 8u);
  auto file = io::load_structure(data("pra3.json"));
  EXPECT_EQ(file.metric(), algebra({"1/2", "1/3", "1/6"}).to_structure().metric());
  EXPECT_THROW(io::load_structure(data("missing.json")), Error);
}

TEST(Io, RejectsBadSchema) {
  auto j = io::structure_to_json(pra2());
  j["metric"][0][1] = "1/3";
  auto m = io::structure_from_json(j);
  EXPECT_FALSE(validate_structure(m).ok());
  auto k = io::structure_to_json(pra2());
  k.erase("metric");
  EXPECT_THROW(io::structure_from_json(k), Error);
}

TEST(Io, Family) {
  auto m = pra22();
  auto F = io::load_family(data("pra.family"), m.signature());
  EXPECT_EQ(F->vars, std::vector<std::string>{"x"});
  ASSERT_EQ(F->formulas.size(), 2u);
  EXPECT_EQ(render(F->formulas[1]), "mu(comp(x))");
  auto two = io::parse_family("vars: x y\nd(x, y)\n\n# skip\nmu(y)\n", m.signature());
  EXPECT_EQ(two->vars, (std::vector<std::string>{"x", "y"}));
  EXPECT_THROW(io::parse_family("mu(x) +\n", m.signature()), ParseError);
}

TEST(Io, PredicateAndFunctionTables) {
  auto p = io::predicate_from_json(io::Json::parse(io::read_file(data("negative.predicate.json"))), 4);
  EXPECT_EQ(p.values, qs({"0", "-1/2", "1/2", "0"}));
  auto dense = io::predicate_from_json(io::Json::parse(io::read_file(data("atom.predicate.json"))), 4);
  EXPECT_EQ(dense.values, distance_predicate(pra22(), 1, {1}).values);
  EXPECT_EQ(io::predicate_from_json(io::predicate_to_json(dense), 4).values, dense.values);

  auto fn = io::function_from_json(io::Json::parse(io::read_file(data("cycle3.function.json"))), 3);
  EXPECT_EQ(fn.values, (std::vector<std::size_t>{1, 2, 0}));
  auto again = io::function_from_json(io::function_to_json(fn), 3);
  EXPECT_EQ(again.values, fn.values);
  EXPECT_EQ(again.lambda, fn.lambda);
}

TEST(Io, Tuples) {
  auto m = pra22();
  EXPECT_EQ(io::parse_tuple("01,11", m), (Tuple{2, 3}));
  EXPECT_EQ(io::parse_tuple_set("10;01", m, 1), (TupleSet{1, 2}));
  EXPECT_THROW(io::parse_tuple_set("10,01", m, 1), Error);
}

TEST(Cli, EvalExample) {
  CliRun r = cli({"eval", "--structure", "pra22", "--formula", "sup x. mu(x)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1/1"), std::string::npos);
}

TEST(Cli, DistanceAxiomsFailureExitsOne) {
  CliRun r = cli({"defcheck", "distance-axioms", "--structure", "pra22", "--predicate", data("negative.predicate.json")});
  EXPECT_EQ(r.code, 1);
  auto j = cli_json({"defcheck", "distance-axioms", "--structure", "pra22", "--predicate",
                     data("negative.predicate.json")});
  EXPECT_EQ(j["nonnegative"], false);
  EXPECT_EQ(j["negative_at"][0], "10");
}

TEST(Cli, UltrameanVerify) {
  std::vector<std::string> args{"ultramean", "verify", "--structure", "pra2", "--structure", "pra2", "--mu", "1/2,1/2",
                                "--formula", "mu(x)", "--raw", "x=1,0"};
  EXPECT_EQ(cli(args).code, 0);
  auto j = cli_json(args);
  EXPECT_EQ(j["quotient_value"], "1/2");
  EXPECT_EQ(j["integral_value"], "1/2");
}

TEST(Cli, ExitCodesFollowReports) {
  EXPECT_EQ(cli({"pra", "definable", "--mu", "1/2,1/2", "--set", "00,10,11"}).code, 1);
  EXPECT_EQ(cli({"pra", "definable", "--mu", "1/2,1/2", "--set", "00,10"}).code, 0);
  EXPECT_EQ(cli({"types", "satisfiable", "--structure", "pra2", "--condition", "mu(x) <= 0", "--condition",
                 "1 <= mu(x)"}).code,
            1);
  EXPECT_EQ(cli({"defcheck", "invariant-type", "--structure", data("cycle3.json"), "--function",
                 data("cycle3.function.json"), "--formula", "R(x)"}).code,
            0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"eval", "--structure", data("missing.json"), "--formula", "1"}).code, 2);
  EXPECT_EQ(cli({"eval", "--structure", "pra22", "--formula", "mu(x"}).code, 2);
  EXPECT_EQ(cli({"pra", "build", "--mu", "1/2,1/2,1/2"}).code, 2);
  EXPECT_EQ(cli({"ultramean", "build", "--structure", "pra:1/4,1/4,1/4,1/4", "--structure",
                 "pra:1/4,1/4,1/4,1/4", "--mu", "1/2,1/2", "--cap", "16"}).code,
            2);
}

TEST(Cli, StructuredOutputRoundTrips) {
  auto j = cli_json({"ultramean", "build", "--structure", "pra2", "--structure", "pra2", "--mu", "1/2,1/2"});
  auto m = io::structure_from_json(j["structure"]);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_TRUE(validate_structure(m).ok());

  auto hull = cli_json({"types", "hull", "--structure", "pra22", "--family", data("pra.family")});
  ASSERT_EQ(hull["vertices"].size(), 3u);
  EXPECT_EQ(io::json_rational(hull["vertices"][1][0]), q("1/2"));
}

}  // namespace
