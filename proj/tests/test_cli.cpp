#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hillspec/cli.hpp"
#include "hillspec/corpus.hpp"
#include "hillspec/errors.hpp"
#include "hillspec/io.hpp"

using namespace hillspec;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hillspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hillspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("zero.cfg", R"({"kind": "coeffs", "coeffs": {}})");
    write("mathieu.cfg", R"({"kind": "coeffs", "coeffs": {"1": [1, 0], "-1": [1, 0]}})");
    write("const5.cfg", R"({"kind": "coeffs", "coeffs": {"0": [5, 0]}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_F(CliTest, SpectrumOfZero) {
  const auto r = invoke({"spectrum", "--potential", path("zero.cfg"), "--count", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# config=", 0), 0u);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 11u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"kind", "index", "lambda", "residual"}));
  const double pi2 = M_PI * M_PI;
  const double expect[] = {0, 4 * pi2, 4 * pi2, 16 * pi2, 16 * pi2};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(t[i + 1][0], "periodic");
    EXPECT_NEAR(std::stod(t[i + 1][2]), expect[i], 1e-9);
  }
  EXPECT_EQ(t[6][0], "antiperiodic");
}

TEST_F(CliTest, MissingPotential) {
  const auto r = invoke({"spectrum", "--potential", path("missing.cfg")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot read potential file"), std::string::npos);
}

TEST_F(CliTest, MalformedPotential) {
  EXPECT_EQ(invoke({"coeffs", "--potential", write("bad.cfg", "{not json")}).code, 1);
  EXPECT_EQ(invoke({"coeffs", "--potential", write("bad2.cfg", R"({"kind": "other"})")}).code, 1);
  EXPECT_EQ(invoke({"coeffs", "--potential", write("bad3.cfg", R"({"kind": "samples", "samples": [1,2,3]})")}).code, 1);
  EXPECT_EQ(invoke({"coeffs", "--potential", write("bad4.cfg", R"({"kind": "coeffs", "coeffs": {"1": [1, 0]}})")}).code, 1);
}

TEST_F(CliTest, UnknownFlagAndSubcommand) {
  EXPECT_EQ(invoke({"spectrum", "--potential", path("zero.cfg"), "--bogus", "1"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, ValidationLeavesNoOutput) {
  const std::string out = path("never.csv");
  for (auto args : std::vector<std::vector<std::string>>{
           {"spectrum", "--potential", path("zero.cfg"), "--tol", "-1", "--out", out},
           {"spectrum", "--potential", path("zero.cfg"), "--count", "0", "--out", out},
           {"asym", "--potential", path("zero.cfg"), "--m-range", "9:3", "--out", out},
           {"asym", "--potential", path("zero.cfg"), "--m-range", "abc", "--out", out},
           {"galerkin", "--potential", path("zero.cfg"), "--parity", "sideways", "--out", out},
           {"spectrum", "--potential", path("missing.cfg"), "--out", out}}) {
    EXPECT_EQ(invoke(args).code, 1);
    EXPECT_FALSE(fs::exists(out));
  }
  EXPECT_TRUE(fs::is_empty(dir_ / "") || !fs::exists(out));
}

TEST_F(CliTest, Thm1OnMathieu) {
  const auto r = invoke({"verify", "thm1", "--potential", path("mathieu.cfg"), "--n-max", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["implication"], "holds");
  EXPECT_EQ(doc["harness"], "thm1");
  EXPECT_EQ(doc["config"]["n_max"], 64);
  EXPECT_NE(r.err.find("implication:  holds"), std::string::npos);
}

TEST_F(CliTest, Thm2Outcomes) {
  auto r = invoke({"verify", "thm2", "--potential", path("zero.cfg"), "--n0", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["conclusion"], "consistent with q = 0");
  for (const char* name : {"mathieu.cfg", "const5.cfg"}) {
    r = invoke({"verify", "thm2", "--potential", path(name), "--n0", "16"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["membership_holds"], false);
    EXPECT_EQ(doc["conclusion"], "no conclusion");
  }
}

TEST_F(CliTest, OutFileRouting) {
  const auto r = invoke({"verify", "thm1", "--potential", path("zero.cfg"), "--n-max", "32", "--out", path("v.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("implication"), std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(dir_ / "v.json"));
  EXPECT_EQ(doc["config_hash"].get<std::string>().size(), 16u);
}

TEST_F(CliTest, Determinism) {
  for (auto cmd : std::vector<std::vector<std::string>>{
           {"spectrum", "--potential", path("mathieu.cfg"), "--count", "12"},
           {"gaps", "--potential", path("mathieu.cfg"), "--count", "12"},
           {"asym", "--potential", path("mathieu.cfg"), "--m-range", "8:20"},
           {"galerkin", "--potential", path("mathieu.cfg"), "--parity", "antiperiodic"},
           {"verify", "thm1", "--potential", path("mathieu.cfg"), "--n-max", "32"}}) {
    cmd.insert(cmd.end(), {"--out", path("run.out")});
    ASSERT_EQ(invoke(cmd).code, 0);
    const std::string first = slurp(dir_ / "run.out");
    fs::remove(dir_ / "run.out");
    ASSERT_EQ(invoke(cmd).code, 0);
    EXPECT_EQ(first, slurp(dir_ / "run.out")) << cmd[0];
    EXPECT_FALSE(first.empty());
  }
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  const auto a = invoke({"spectrum", "--potential", path("mathieu.cfg"), "--count", "16", "--threads", "1"});
  const auto b = invoke({"spectrum", "--potential", path("mathieu.cfg"), "--count", "16", "--threads", "3"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(rows(a.out), rows(b.out));
}

TEST_F(CliTest, AsymReportColumns) {
  const auto r = invoke({"asym", "--potential", path("mathieu.cfg"), "--m-range", "8:12", "--variant", "eigenvalue"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t[0].size(), 10u);
  EXPECT_EQ(t[0][0], "m");
  EXPECT_EQ(t[0][9], "budget");
}

TEST_F(CliTest, Coeffs) {
  const auto r = invoke({"coeffs", "--potential", path("mathieu.cfg")});
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[3][0], "1");
  EXPECT_EQ(std::stod(t[3][1]), 1.0);
}

TEST_F(CliTest, CorpusDeterministic) {
  ASSERT_EQ(invoke({"corpus", "--out", path("c1"), "--seed", "7"}).code, 0);
  ASSERT_EQ(invoke({"corpus", "--out", path("c2"), "--seed", "7"}).code, 0);
  ASSERT_EQ(invoke({"corpus", "--out", path("c3"), "--seed", "8"}).code, 0);
  const auto manifest = slurp(dir_ / "c1" / "manifest.txt");
  EXPECT_FALSE(manifest.empty());
  bool any_differs = false;
  for (const auto& e : fs::directory_iterator(dir_ / "c1")) {
    const auto name = e.path().filename();
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "c2" / name)) << name;
    any_differs = any_differs || slurp(e.path()) != slurp(dir_ / "c3" / name);
  }
  EXPECT_TRUE(any_differs);
  EXPECT_EQ(load_potential(dir_ / "c1" / "zero.cfg").potential, FourierPotential{});
}

TEST_F(CliTest, CorpusFilesMatchBuiltins) {
  ASSERT_EQ(invoke({"corpus", "--out", path("c")}).code, 0);
  for (const auto& e : builtin_corpus(1)) {
    const auto loaded = load_potential(dir_ / "c" / (e.name + ".cfg")).potential;
    ASSERT_EQ(loaded.degree(), e.potential.degree()) << e.name;
    for (int m = -loaded.degree(); m <= loaded.degree(); ++m) {
      EXPECT_NEAR(std::abs(loaded.coefficient(m) - e.potential.coefficient(m)), 0.0, 1e-12) << e.name;
    }
  }
}

TEST(RunConfig, RoundTripAndHash) {
  cli::RunConfig c;
  c.command = "asym";
  c.potential_path = "p.cfg";
  c.parity = Parity::antiperiodic;
  c.m_lo = 3;
  c.m_hi = 17;
  c.refine_tol = 1.2345678901234e-11;
  c.seed = 42;
  const auto back = cli::RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.hash(), c.hash());
  auto d = c;
  d.m_hi = 18;
  EXPECT_NE(d.hash(), c.hash());
  d = c;
  d.cluster_tol = 0.0;
  EXPECT_THROW(d.validate(), DomainError);
}

TEST(Io, FormatAndHash) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  for (double x : {0.1, -3.0e-17, 1e300, M_PI}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Io, SamplesDocumentRoundTrip) {
  std::vector<double> s(16);
  for (int j = 0; j < 16; ++j) s[j] = 2 * std::cos(2 * M_PI * j / 16.0) + 0.5;
  const auto f = parse_potential(samples_document(s));
  EXPECT_EQ(f.kind, "samples");
  EXPECT_NEAR(f.potential.mean(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(f.potential.coefficient(1) - 1.0), 0.0, 1e-14);
  const auto g = parse_potential(coeffs_document(f.potential));
  EXPECT_EQ(g.kind, "coeffs");
  EXPECT_EQ(g.potential, f.potential);
}
