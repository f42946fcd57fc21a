#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "carleman/cli.hpp"
#include "carleman/config.hpp"
#include "carleman/report.hpp"
#include "doctest.h"

using namespace carleman;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "carleman");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("key=value config with sections and comments") {
  std::istringstream in("# comment\nseq = gevrey:2\n; other\n[grid]\nn = 512\n\nk_hi=6\n");
  const auto kv = parse_key_values(in);
  CHECK(kv.at("seq") == "gevrey:2");
  CHECK(kv.at("grid.n") == "512");
  RunConfig cfg;
  apply_key_values(cfg, kv);
  CHECK(cfg.sequences == std::vector<std::string>{"gevrey:2"});
  CHECK(cfg.n == 512);
  CHECK(cfg.k_hi == 6);
  RunConfig bad;
  CHECK_THROWS_AS(apply_key_values(bad, {{"nonsense", "1"}}), ConfigError);
  CHECK_THROWS_AS(apply_key_values(bad, {{"n", "abc"}}), ConfigError);
}

TEST_CASE("boxes, windows and sequence specs") {
  const Box b = parse_box("pi/4:7pi/4");
  CHECK(b.axes[0].lo == doctest::Approx(std::numbers::pi / 4));
  CHECK(b.axes[0].hi == doctest::Approx(7 * std::numbers::pi / 4));
  CHECK(parse_box("1:2,3:4").dim == 2);
  CHECK(parse_window("3:70") == IndexWindow{3, 70});
  CHECK_THROWS(parse_window("9:2"));
  CHECK(parse_sequence("gevrey:1.5", 100).name() == "G^1.5");
  CHECK(parse_sequence("logfam:1,1", 100).name() == "N^{1,1}");
  CHECK(parse_sequence("qfam:2", 100).name() == "L^2");
  CHECK_THROWS(parse_sequence("bessel:2", 100));
  const auto j = sequence_from_json(R"({"name": "t", "family": "table", "log_m": [0, 0, 1, 3, 6]})");
  CHECK(j.k_max() == 4);
  CHECK(j.log_m(3) == 3.0);
  RunConfig cfg;
  cfg.dim = 2;
  CHECK(cfg.grid_size() == 256);
  CHECK(cfg.inner_box().margin_inside(cfg.outer_box()) == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("number formatting") {
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(NAN) == "null");
  CHECK(format_double(INFINITY) == "null");
  Json j;
  j["b"] = 2.5;
  j["a"] = Json::array({1, 2, 3});
  const std::string s = render_json(j);
  CHECK(s.find("\"b\"") < s.find("\"a\""));
  CHECK(s.find("[1, 2, 3]") != std::string::npos);
}

TEST_CASE("check, ladder and compare subcommands") {
  const Run c = run({"check", "--seq", "gevrey:1", "--window", "1:10000"});
  CHECK(c.code == kExitOk);
  const Json cj = Json::parse(c.out);
  CHECK(cj["admissible"] == true);

  const Run l = run({"ladder", "--seq", "gevrey:1", "--k", "4", "--sigma", "2", "--jmax", "10"});
  CHECK(l.code == kExitOk);
  const Json lj = Json::parse(l.out);
  CHECK(lj["indices"][0] == 4);
  CHECK(lj["indices"][1] == 9);

  const Run m = run({"compare", "--a", "gevrey:1", "--b", "logfam:1,1"});
  CHECK(m.code == kExitOk);
  CHECK(Json::parse(m.out)["verdict"] == "strict_m_before_n");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"verify-eq19", "--seq", "gevrey:1", "--n", "256", "--samples", "5", "--seed", "3"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Run o = run({"omega", "--seq", "gevrey:1", "--t-max", "10", "--points", "10"});
  CHECK(o.code == kExitOk);
  CHECK(o.out == run({"omega", "--seq", "gevrey:1", "--t-max", "10", "--points", "10"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"check", "--seq", "bessel:1"}).code == kExitUsage);
  CHECK(run({"check", "--seq", "gevrey:1", "--window", "5:1"}).code == kExitUsage);
  const Run e = run({"ladder", "--seq", "gevrey:1", "--k", "1", "--sigma", "1.05", "--jmax", "3"});
  CHECK(e.code == kExitNumerical);
  CHECK_FALSE(e.err.empty());
}

TEST_CASE("reports are written to the requested directory") {
  const auto dir = std::filesystem::temp_directory_path() / "carleman_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Run r = run({"verify-lemma6", "--seq", "gevrey:1", "--n", "1024", "--k-hi", "4", "--out", dir.string()});
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "report.json"));
  std::ifstream csv(dir / "rows.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k,sample,left,right,ratio,log_left,log_right,skipped");
  std::filesystem::remove_all(dir);
}
