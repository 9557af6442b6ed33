#include <filesystem>
#include <fstream>
#include <sstream>

#include "catlab/errors.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace catlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cat_lab_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("format_double is shortest round-trip and locale free") {
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(2744.0) == "2744");
  CHECK(std::stod(cli::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("parse_a_schedule") {
  CHECK(cli::parse_a_schedule("const:1.5", 0.5, 2) == ASchedule{schedule::Constant{1.5}});
  CHECK(cli::parse_a_schedule("asc", 0.5, 2) == ASchedule{schedule::LinearAscending{0.5, 2}});
  CHECK(cli::parse_a_schedule("desc", 0.5, 2) == ASchedule{schedule::LinearDescending{2, 0.5}});
  CHECK(cli::parse_a_schedule("asc:0.7:1.2", 0.5, 2) ==
        ASchedule{schedule::LinearAscending{0.7, 1.2}});
  CHECK(cli::parse_a_schedule("strat:0.5,1,1.5:10", 0.5, 2) ==
        ASchedule{schedule::Stratified{{0.5, 1.0, 1.5}, 10}});
  CHECK(cli::parse_a_schedule("explicit:1,0.5", 0.5, 2) == ASchedule{schedule::Explicit{{1, 0.5}}});
  CHECK(cli::parse_a_schedule("cubic", 0.5, 2) == ASchedule{schedule::CubicDivergent{}});
  CHECK_THROWS_AS(cli::parse_a_schedule("const", 0.5, 2), InvalidInput);
  CHECK_THROWS_AS(cli::parse_a_schedule("const:x", 0.5, 2), InvalidInput);
  CHECK_THROWS_AS(cli::parse_a_schedule("strat:1:0", 0.5, 2), InvalidInput);
  CHECK_THROWS_AS(cli::parse_a_schedule("zigzag", 0.5, 2), InvalidInput);
  // describe() output parses back to the same schedule
  const ASchedule s = schedule::LinearAscending{0.123456789, 1.987654321};
  CHECK(cli::parse_a_schedule(describe(s), 0.5, 2) == s);
}

TEST_CASE("thread cap from the environment") {
  CHECK(cli::resolve_threads(0, nullptr) == 0);
  CHECK(cli::resolve_threads(8, "2") == 2);
  CHECK(cli::resolve_threads(0, "3") == 3);
  CHECK(cli::resolve_threads(1, "3") == 1);
  CHECK(cli::resolve_threads(4, "0") == 4);
  CHECK(cli::resolve_threads(4, "lots") == 4);
}

TEST_CASE("usage errors and help") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"simulate", "--bogus"}).code == 2);
  CHECK(invoke({"simulate", "--model", "4pl"}).code == 2);
  CHECK(invoke({"simulate", "--a-schedule", "wobble"}).code == 2);
  CHECK(invoke({"simulate", "--a-schedule", "const:3"}).code == 2);
  CHECK(invoke({"simulate", "--n-items", "20", "--checkpoints", "10,30"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"simulate", "--config", "/nonexistent.json"}).code == 2);
}

TEST_CASE("diverge") {
  const auto dir = scratch("diverge");
  const auto r = invoke({"diverge", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("n0 = 13\n") != std::string::npos);
  CHECK(r.out.find("log P(A) = -") != std::string::npos);
  const auto trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("k,a,b,y,theta_hat,bound_a13,below_theta_minus_1\n", 0) == 0);
  CHECK(count_lines(trace) == 201);
  CHECK(trace.find('\r') == std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  for (const char* key : {"command", "config", "seed", "version"}) CHECK(manifest.contains(key));

  CHECK(invoke({"diverge", "--theta0", "-2.0", "--out", dir.string()}).code == 2);
  CHECK(invoke({"diverge", "--n0", "12", "--out", dir.string()}).code == 2);
  CHECK(invoke({"diverge", "--horizon", "50", "--out", dir.string()}).code == 0);
  CHECK(count_lines(slurp(dir / "trace.csv")) == 51);
}

TEST_CASE("simulate writes deterministic outputs and a replayable manifest") {
  const auto a = scratch("sim_a"), b = scratch("sim_b"), c = scratch("sim_c");
  const std::vector<std::string> base{"simulate", "--n-items", "60", "--replications", "50",
                                      "--seed", "9", "--threads", "2"};
  auto args = base;
  args.insert(args.end(), {"--out", a.string(), "--svg"});
  REQUIRE(invoke(args).code == 0);
  args = base;
  args.insert(args.end(), {"--out", b.string()});
  REQUIRE(invoke(args).code == 0);
  const auto summary = slurp(a / "summary.csv");
  CHECK(summary == slurp(b / "summary.csv"));
  CHECK(summary.rfind("n,bias,variance,mse,info_ratio,std_err_var,ks_stat,fallback_count\n", 0) == 0);
  CHECK(count_lines(summary) == 4);  // header + 25, 50, 60
  CHECK(count_of(slurp(a / "mse.svg"), "<polyline") == 1);

  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["config"]["checkpoints"] == "25,50,60");
  REQUIRE(invoke({"simulate", "--config", (a / "manifest.json").string(), "--out", c.string()}).code == 0);
  CHECK(slurp(c / "summary.csv") == summary);
}

TEST_CASE("command-line flags override the config file") {
  const auto dir = scratch("override");
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"n-items": 30, "replications": 20, "checkpoints": [10, 30], "model": "rasch"})";
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--replications", "25", "--out",
               (dir / "o").string()})
              .code == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "o" / "manifest.json"));
  CHECK(manifest["config"]["replications"] == 25);
  CHECK(manifest["config"]["n-items"] == 30);
  CHECK(manifest["config"]["checkpoints"] == "10,30");
}

TEST_CASE("3-PL simulate reports information-standardized columns, no info ratio") {
  const auto dir = scratch("sim3pl");
  REQUIRE(invoke({"simulate", "--model", "3pl", "--c", "0.2", "--a-schedule", "const:1.0",
               "--n-items", "40", "--replications", "30", "--out", dir.string()})
              .code == 0);
  std::istringstream csv(slurp(dir / "summary.csv"));
  std::string header, row;
  std::getline(csv, header);
  while (std::getline(csv, row)) {
    CHECK(row.find(",,") != std::string::npos);  // empty info_ratio
  }
}

TEST_CASE("simulate with a finite bank") {
  const auto dir = scratch("bank_sim");
  {
    std::ofstream f(dir / "bank.csv");
    f << "a,b\n";
    for (int i = 0; i < 41; ++i) f << "1," << (i - 20) * 0.1 << "\n";
  }
  CHECK(invoke({"simulate", "--bank", (dir / "bank.csv").string(), "--n-items", "30",
             "--replications", "10", "--out", (dir / "o").string()})
            .code == 0);
  CHECK(invoke({"simulate", "--bank", (dir / "bank.csv").string(), "--n-items", "50",
             "--replications", "10", "--out", (dir / "o").string()})
            .code == 3);
  std::ofstream(dir / "bad.csv") << "a,b\n1,0\n0,1\n";
  const auto r = invoke({"simulate", "--bank", (dir / "bad.csv").string(), "--n-items", "2",
                      "--checkpoints", "2", "--out", (dir / "o").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("bank inspect") {
  const auto dir = scratch("bank");
  std::ofstream(dir / "good.csv") << "a,b,c\n1.0,-0.5,0.2\n1.5,0,0\n0.8,1.25,0.1\n";
  std::ofstream(dir / "zero_a.csv") << "a,b,c\n1,0,0\n0,1,0\n";
  std::ofstream(dir / "no_c.csv") << "a,b\n1.2,0.3\n";

  auto r = invoke({"bank", "inspect", (dir / "good.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "items: 3\na: [0.8, 1.5]\nb: [-0.5, 1.25]\nc: [0, 0.2]\n");
  r = invoke({"bank", "inspect", (dir / "zero_a.csv").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 3:") != std::string::npos);
  r = invoke({"bank", "inspect", (dir / "no_c.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("c: [0, 0]") != std::string::npos);
  CHECK(invoke({"bank", "inspect", (dir / "missing.csv").string()}).code == 3);
  CHECK(invoke({"bank"}).code == 2);
}

TEST_CASE("mse-compare writes paired tables and an overlay plot") {
  const auto dir = scratch("mse");
  const std::vector<std::string> args{"mse-compare", "--replications", "200", "--svg",
                                      "--out",       dir.string()};
  REQUIRE(invoke(args).code == 0);
  const auto asc = slurp(dir / "mse_ascending.csv");
  CHECK(count_lines(asc) == 6);
  CHECK(count_lines(slurp(dir / "mse_descending.csv")) == 6);
  const auto svg = slurp(dir / "mse_compare.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(count_of(svg, "<polyline") == 2);
  CHECK(svg.find("ascending a") != std::string::npos);
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(dir / "mse_ascending.csv") == asc);
}
