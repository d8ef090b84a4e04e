#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracperc/serialize.hpp"
#include "fracperc/svg.hpp"
#include "fracperc_cli/cli.hpp"

using namespace fracperc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) { return std::string(FRACPERC_TEST_TMP) + "/" + name; }

}  // namespace

TEST_SUITE("cli-reporting") {

TEST_CASE("analyze reports the diagonal thresholds") {
  auto r = run({"analyze", "menger", "--dir", "1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"1/6\"") != std::string::npos);
  CHECK(r.out.find("\"(288)^(-1/3)\"") != std::string::npos);
  auto j = Json::parse(r.out);
  CHECK(j["type_system"]["nu"] == Json::array({"1/5", "3/5", "1/5"}));
}

TEST_CASE("analyze of the scaled axis projection and the Sierpinski diagonal") {
  auto r = run({"analyze", "menger", "--dir", "1,0,0", "--scale", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"1/4\"") != std::string::npos);
  CHECK(r.out.find("scaled-by-3") != std::string::npos);
  auto s = run({"analyze", "sierpinski", "--dir", "1,-1"});
  CHECK(s.code == 0);
  CHECK(s.out.find("\"1/2\"") != std::string::npos);
  CHECK(s.out.find("\"(18)^(-1/3)\"") != std::string::npos);
}

TEST_CASE("project emits a line IFS that round-trips") {
  auto r = run({"project", "menger", "--dir", "1,1,1"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  std::vector<std::int64_t> mult;
  for (const auto& t : j["translations"]) mult.push_back(t[1].get<std::int64_t>());
  CHECK(mult == std::vector<std::int64_t>{1, 3, 3, 6, 3, 3, 1});
  auto doc = ifs_from_json(j);
  auto line = std::get<LineIFS>(doc);
  CHECK(to_json(line) == j);

  const std::string path = temp_path("diag.json");
  CHECK(run({"project", "menger", "--dir", "1,1,1", "--out", path}).code == 0);
  auto from_file = run({"analyze", "--ifs", path});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.find("\"(288)^(-1/3)\"") != std::string::npos);
}

TEST_CASE("round trip of random line systems") {
  for (std::int64_t k = 1; k <= 30; ++k) {
    std::vector<std::int64_t> raw{0, 2 * k, k, k, 3};
    auto ifs = normalize(3, raw);
    auto back = std::get<LineIFS>(ifs_from_json(Json::parse(to_json(ifs).dump())));
    CHECK(back == ifs);
  }
}

TEST_CASE("golden outputs are byte-stable") {
  auto r = run({"analyze", "menger", "--dir", "1,1,1"});
  CHECK(r.out == slurp(std::string(FRACPERC_GOLDEN_DIR) + "/analyze_menger_111.json"));
  auto p = run({"project", "sierpinski", "--dir", "1,-1"});
  CHECK(p.out == slurp(std::string(FRACPERC_GOLDEN_DIR) + "/project_sierpinski_1m1.json"));
  auto s = run({"simulate", "menger", "--dir", "1,1,1", "--p", "0.16", "--depth", "5", "--replicas", "10", "--seed", "42"});
  CHECK(s.out == slurp(std::string(FRACPERC_GOLDEN_DIR) + "/simulate_menger_111.csv"));
  CHECK(run({"analyze", "menger", "--dir", "1,1,1"}).out == r.out);
}

TEST_CASE("pressure command") {
  auto r = run({"pressure", "menger", "--dir", "1,1,1", "--t", "0", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "t,n,value,method,std_error\n0.0,4,1.0,exact-enumeration,0.0\n");
  auto l = run({"pressure", "menger", "--dir", "1,1,1", "--t", "1", "--n", "3", "--lyapunov-n", "20",
                "--lyapunov-samples", "50"});
  CHECK(l.code == 0);
  auto j = Json::parse(l.out);
  CHECK(j["lyapunov"].contains("w_hat"));
  CHECK(j["lyapunov"].contains("bound_logML"));
}

TEST_CASE("verify-slice command") {
  auto r = run({"verify-slice", "--step", "1/100"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["step"] == "1/100");
  CHECK(j["minimum"].is_string());
  CHECK(j["argmin"].size() == 3);
  CHECK(r.err.find("grid points") != std::string::npos);
}

TEST_CASE("simulate command formats") {
  auto csv = run({"simulate", "sierpinski", "--dir", "1,0", "--p", "0.7", "--depth", "4", "--replicas", "5"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("replica,retained_count,proj_measure,longest_run,extinct_level\n", 0) == 0);
  auto iface = run({"simulate", "--interface", "--p", "0.3", "--depth", "10", "--replicas", "50", "--format", "json"});
  CHECK(iface.code == 0);
  CHECK(Json::parse(iface.out)["mean_offspring"].get<double>() == doctest::Approx(0.72));
}

TEST_CASE("exit codes") {
  CHECK(run({"analyze", "menger"}).code == cli::InputFailure);  // lattice without --dir
  CHECK(run({"analyze", "--ifs", "/nonexistent/file.json"}).code == cli::InputFailure);
  CHECK(run({"analyze", "menger", "--dir", "1,1"}).code == cli::InputFailure);
  CHECK(run({"bogus"}).code == cli::InputFailure);
  CHECK(run({"verify-slice", "--step", "abc"}).code == cli::InputFailure);
  CHECK(run({"analyze", "menger", "--dir", "1,1,1", "--format", "xml"}).code == cli::InputFailure);
  CHECK(run({"--help"}).code == cli::Ok);

  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"kind":"line","L":3,"translations":[[0,1]]})";
  CHECK(run({"analyze", "--ifs", bad}).code == cli::InputFailure);
  std::ofstream(bad) << R"({"kind":"line","L":3,"translations":"oops"})";
  CHECK(run({"analyze", "--ifs", bad}).code == cli::InputFailure);
  std::ofstream(bad) << "{not json";
  CHECK(run({"analyze", "--ifs", bad}).code == cli::InputFailure);
}

TEST_CASE("divisibility repair is a warning, not an error") {
  const std::string path = temp_path("odd.json");
  std::ofstream(path) << R"({"kind":"line","L":3,"translations":[[0,1],[1,1],[3,1]]})";
  auto r = run({"analyze", "--ifs", path});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.out.find("conjugated by factor 2") != std::string::npos);
}

TEST_CASE("band chart is a pure function of the report") {
  auto r = run({"analyze", "menger", "--dir", "1,1,1"});
  auto report = Json::parse(r.out)["report"];
  auto svg = render_band_chart(report);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("(288)^(-1/3)") != std::string::npos);
  CHECK(svg.find("1/6") != std::string::npos);
  CHECK(svg == render_band_chart(report));
  CHECK_THROWS(render_band_chart(Json::object()));

  const std::string path = temp_path("chart.svg");
  CHECK(run({"analyze", "menger", "--dir", "1,1,1", "--svg", path}).code == 0);
  CHECK(slurp(path) == svg);
}

}  // TEST_SUITE
