#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include "spinlab/cli/config.hpp"
#include "spinlab/cli/output.hpp"
#include "spinlab/cli/run.hpp"
#include "spinlab/core/error.hpp"

using namespace spinlab;
using namespace spinlab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// Fresh scratch directory under the build tree's temp area.
class Scratch {
 public:
  explicit Scratch(const std::string& tag)
      : path_(fs::temp_directory_path() / ("spinlab-test-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
  }
  ~Scratch() { fs::remove_all(path_); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Grid, InclusiveRangesAndLists) {
  EXPECT_EQ(parse_int_grid(Json("6:12:2"), "sizes"), (std::vector<int>{6, 8, 10, 12}));
  const auto l = parse_real_grid(Json("0:2:0.1"), "lambda");
  ASSERT_EQ(l.size(), 21u);
  EXPECT_DOUBLE_EQ(l.back(), 2.0);
  EXPECT_EQ(parse_real_grid(Json(1.5), "x"), std::vector<double>{1.5});
  EXPECT_EQ(parse_real_grid(Json::parse("[0.5, 0.25]"), "x"), (std::vector<double>{0.5, 0.25}));
  EXPECT_THROW(parse_real_grid(Json("1:0:0.1"), "x"), ValidationError);
  EXPECT_THROW(parse_real_grid(Json("0:1:0"), "x"), ValidationError);
  EXPECT_THROW(parse_real_grid(Json("a:b"), "x"), ValidationError);
  EXPECT_THROW(parse_int_grid(Json("1:4:0.5"), "x"), ValidationError);
}

TEST(Config, DefaultsOverridesAndUnknownKeys) {
  const JobConfig job = make_job("flow", Json::object(), {"n=6", "model.bc=periodic", "steps=10"});
  EXPECT_EQ(job.document["n"], 6);
  EXPECT_EQ(job.document["steps"], 10);
  EXPECT_EQ(job.document["model"]["name"], "tfim");
  EXPECT_EQ(job.document["model"]["bc"], "periodic");
  EXPECT_DOUBLE_EQ(job.document["gamma_fraction"].get<double>(), 0.9);

  // Overrides win over the config document.
  const JobConfig over = make_job("flow", Json::parse(R"({"n": 4})"), {"n=5"});
  EXPECT_EQ(over.document["n"], 5);

  Json doc = Json::object();
  apply_override(doc, "a.b.c=text");
  EXPECT_EQ(doc["a"]["b"]["c"], "text");
  apply_override(doc, "a.b.d=[1,2]");
  EXPECT_TRUE(doc["a"]["b"]["d"].is_array());
  EXPECT_THROW(apply_override(doc, "novalue"), ValidationError);

  EXPECT_THROW(make_job("flow", Json::parse(R"({"stepz": 3})")), ValidationError);
  EXPECT_THROW(make_job("flow", Json::object(), {"model.colour=red"}), ValidationError);
  EXPECT_THROW(make_job("no-such-command", Json::object()), ValidationError);
  EXPECT_THROW(make_job("flow", Json::parse(R"({"subcommand": "gap-scan"})")), ValidationError);
  EXPECT_NO_THROW(make_job("flow", Json::parse(R"({"subcommand": "flow"})")));
}

TEST(Config, BuildModelAndPatch) {
  EXPECT_EQ(build_model(Json::parse(R"({"name": "tfim"})"), 5).geometry.n_sites(), 5u);
  EXPECT_THROW(build_model(Json::parse(R"({"name": "potts"})"), 5), ValidationError);
  EXPECT_EQ(build_patch(Json::parse(R"({"m": 2, "delta": null})")).m, std::optional<std::size_t>(2));
  EXPECT_THROW(build_patch(Json::parse(R"({"m": 0, "delta": null})")), ValidationError);
}

TEST(Output, RealFormattingRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng) * std::pow(10.0, (i % 40) - 20);
    const std::string s = format_real(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_cell(Cell{std::string("a,b")}), "\"a,b\"");
  EXPECT_EQ(format_cell(Cell{7LL}), "7");
}

TEST(Output, CsvCarriesConfigEcho) {
  const JobConfig job = make_job("topo-degeneracy", Json::object());
  const ResultTable t{"t", {"x", "y"}, {{1.0, std::string("s")}}};
  const std::string csv = render_csv(t, job);
  EXPECT_EQ(csv.rfind("# ", 0), 0u);
  EXPECT_NE(csv.find("\"subcommand\""), std::string::npos);
  EXPECT_NE(csv.find("x,y\n1,s\n"), std::string::npos);
}

TEST(Run, TorusDegeneracyAndFiles) {
  Scratch dir("torus");
  const JobConfig job = make_job("topo-degeneracy", Json::parse(R"({"surfaces": ["torus:2x2"]})"));
  ASSERT_EQ(run(job, dir.path()), kSuccess);
  const Json result = Json::parse(slurp(dir.path() / "result.json"));
  EXPECT_EQ(result["result"]["degeneracy"], 4);
  const Json prov = Json::parse(slurp(dir.path() / "run.json"));
  EXPECT_EQ(prov["status"], "ok");
  EXPECT_TRUE(fs::exists(dir.path() / "topo_degeneracy.csv"));
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  Scratch a("det-a"), b("det-b");
  const JobConfig job = make_job("entropy-scan", Json::parse(R"({"n": 8, "lambda": 1.3})"));
  ASSERT_EQ(run(job, a.path()), kSuccess);
  ASSERT_EQ(run(job, b.path()), kSuccess);
  EXPECT_EQ(slurp(a.path() / "entropy_scan.csv"), slurp(b.path() / "entropy_scan.csv"));
  EXPECT_EQ(slurp(a.path() / "result.json"), slurp(b.path() / "result.json"));
}

TEST(Run, GapClosingMapsToNumericalExit) {
  Scratch dir("gap");
  const JobConfig job = make_job(
      "flow", Json::parse(R"({"n": 8, "lambda0": 0.5, "lambda1": 1.5, "gamma": 0.5, "steps": 40})"));
  ASSERT_EQ(run(job, dir.path()), kNumerical);
  const Json err = Json::parse(slurp(dir.path() / "error.json"));
  EXPECT_EQ(err["error"], "gap closed along path");
  EXPECT_EQ(err["exit_code"], 3);
  EXPECT_GE(err["lambda"].get<double>(), 0.5);
  EXPECT_LT(err["patch_gap"].get<double>(), 0.5);
  EXPECT_EQ(Json::parse(slurp(dir.path() / "run.json"))["status"], "error");
}

TEST(Run, ValidationErrorsMapToExitTwo) {
  EXPECT_EQ(run(make_job("topo-degeneracy", Json::parse(R"({"surfaces": ["sphere:3"]})")), std::nullopt),
            kValidation);
  EXPECT_EQ(run(make_job("flow", Json::object(), {"steps=0"}), std::nullopt), kValidation);
  EXPECT_EQ(run(make_job("lr-cone", Json::object(), {"a_site=40"}), std::nullopt), kValidation);
}

TEST(Run, GapScanRowCount) {
  const JobConfig job = make_job("gap-scan", Json::object(), {"sizes=4:10:2", "lambda=0:2:0.2"});
  const RunOutput out = execute(job);
  ASSERT_EQ(out.tables.size(), 1u);
  EXPECT_EQ(out.tables[0].rows.size(), 44u);
  EXPECT_EQ(out.record["rows"], 44);
}

TEST(MainEntry, ParsesArguments) {
  Scratch dir("main");
  std::string out = dir.path().string();
  std::vector<std::string> args = {"spinlab", "topo-degeneracy", "--out", out, "--override",
                                   "surfaces=[\"genus:2\"]"};
  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  EXPECT_EQ(main_entry(static_cast<int>(argv.size()), argv.data()), kSuccess);
  EXPECT_EQ(Json::parse(slurp(dir.path() / "result.json"))["result"]["degeneracy"], 16);

  std::vector<std::string> bad = {"spinlab", "not-a-command"};
  std::vector<char*> bad_argv;
  for (auto& s : bad) bad_argv.push_back(s.data());
  EXPECT_EQ(main_entry(static_cast<int>(bad_argv.size()), bad_argv.data()), kValidation);
}
