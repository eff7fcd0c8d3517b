// Integration tests that run the qf binary.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qf/table.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + QF_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::size_t from = 0;
    while (true) {
      const auto comma = line.find(',', from);
      fields.push_back(line.substr(from, comma - from));
      if (comma == std::string::npos) break;
      from = comma + 1;
    }
    out.push_back(std::move(fields));
  }
  return out;
}

double num(const std::string& s) { return *qf::parse_number(s); }

std::string header(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

TEST(Cli, BandsExample) {
  const auto r = run("bands --ratio 1 --range 0:6.2832:0.01 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "beta,half_trace,in_band");
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 629u);
  const auto& at = t[79];  // beta = 0.79
  EXPECT_NEAR(num(at[1]), std::sqrt(2.0), 1e-4);
  EXPECT_EQ(at[2], "0");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, BandsKickFreeIsCosine) {
  const auto r = run("bands --ratio 0 --range 0:3.1416:0.1");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : rows(r.out)) {
    EXPECT_NEAR(num(row[1]), std::cos(num(row[0])), 1e-11);
    EXPECT_EQ(row[2], "1");
  }
}

TEST(Cli, BandEdges) {
  using std::numbers::pi;
  auto r = run("band-edges --ratio 1 --periods 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "kind,lower,center,upper");
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[1][0], "band");
  EXPECT_NEAR(num(t[1][1]), pi / 2, 1e-10);
  EXPECT_NEAR(num(t[1][2]), 3 * pi / 4, 1e-10);
  EXPECT_NEAR(num(t[3][2]), 7 * pi / 4, 1e-10);

  r = run("band-edges --ratio 0 --periods 1");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : rows(r.out)) {
    if (row[0] == "gap") {
      EXPECT_EQ(row[1], row[3]);
      const double m = std::round(num(row[1]) / pi);
      EXPECT_NEAR(num(row[1]), m * pi, 1e-9);
    }
  }

  r = run("band-edges --ratio 5 --periods 2");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : rows(r.out)) {
    if (row[0] != "band") continue;
    for (int k : {1, 3}) {
      const double e = num(row[static_cast<std::size_t>(k)]);
      const double h = std::cos(e) + 5.0 * std::sin(e);
      if (h > 0 && std::abs(std::sin(e / 2)) > 1e-3) {
        EXPECT_NEAR(std::tan(e / 2), 5.0, 1e-7);
      } else if (h < 0 && std::abs(std::cos(e / 2)) > 1e-3) {
        EXPECT_NEAR(1.0 / std::tan(e / 2), -5.0, 1e-7);
      }
    }
  }
}

TEST(Cli, FibonacciScan) {
  auto r = run("fibonacci-scan --range 0:20:0.001");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out),
            "omega_T,invariant,in_band_1,in_band_2,overlap,commutative,quasi_floquet");
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 20001u);
  std::vector<double> hits;
  for (const auto& row : t) {
    if (row[5] == "1") hits.push_back(num(row[0]));
    if (row[6] == "1") {
      EXPECT_EQ(row[4], "1");
    }
  }
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_NEAR(hits[0], 5.0832, 6e-4);
  EXPECT_NEAR(hits[1], 10.1664, 6e-4);
  EXPECT_NEAR(hits[2], 15.2496, 6e-4);

  r = run("fibonacci-scan --u 0 --range 0:10:0.01");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : rows(r.out)) EXPECT_NEAR(num(row[1]), 1.0, 1e-12);
}

TEST(Cli, Orbit) {
  auto r = run("orbit -n 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(header(r.out), "step,letter,x,p,Q");
  ASSERT_EQ(rows(r.out).size(), 1u);

  r = run("orbit -n 200");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 201u);
  const double q0 = num(t[0][4]);
  for (const auto& row : t) {
    EXPECT_LE(std::abs(num(row[4]) - q0), 1e-6 * q0);
    if (row[0] != "0") {
      EXPECT_TRUE(row[1] == "1" || row[1] == "2");
    }
  }

  r = run("orbit --u 40 --t1 0.05 --t2 0.05 -n 100000");
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(rows(r.out).empty());
}

TEST(Cli, Words) {
  auto r = run("words -n 4");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0][1], "y1");
  EXPECT_EQ(t[0][2], "1");
  EXPECT_EQ(t[4][1], "y1 y2 y2 y1 y2");
  EXPECT_EQ(t[4][2], "5");
  r = run("words -n 15");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(rows(r.out).back()[2], "987");
}

TEST(Cli, TraceRec) {
  for (const auto& [start, inv] :
       std::vector<std::pair<std::string, std::string>>{
           {"--x0 1 --y0 1 --z0 1", "1"}, {"--x0 0 --y0 0 --z0 0", "-1"}}) {
    const auto r = run("trace-rec " + start + " -n 50");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 51u);
    for (const auto& row : t) EXPECT_EQ(row[4], inv);
  }
  const auto r = run("trace-rec --x0 2 --y0 2 --z0 2 -n 20");
  ASSERT_EQ(r.code, 3);
  for (const auto& row : rows(r.out)) {
    EXPECT_NEAR(num(row[4]), -9.0, 1e-9 * std::pow(std::abs(num(row[3])), 3));
  }
  const auto first = rows(r.out);
  ASSERT_GE(first.size(), 3u);
  EXPECT_EQ(first[0][4], "-9");
  EXPECT_EQ(first[1][4], "-9");
}

TEST(Cli, JsonOutputAndEnvironmentDefault) {
  const auto csv = run("words -n 3");
  const auto json = run("words -n 3 --format json");
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[3]["word_text"], "y2 y1 y2");
  EXPECT_EQ(j[3]["length"], 3);
  const auto env = run("words -n 3", "QF_DEFAULT_FORMAT=json");
  EXPECT_EQ(env.out, json.out);
  const auto override = run("words -n 3 --format csv", "QF_DEFAULT_FORMAT=json");
  EXPECT_EQ(override.out, csv.out);
  EXPECT_EQ(run("words -n 3", "QF_DEFAULT_FORMAT=xml").code, 1);
}

TEST(Cli, OutputFile) {
  const auto dir = std::filesystem::temp_directory_path() / "qf_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "words.csv";
  const auto r = run("words -n 5 -o " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), run("words -n 5").out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  EXPECT_EQ(run("bands --range 0:-1:0.1").code, 1);
  EXPECT_EQ(run("bands --ratio abc").code, 1);
  EXPECT_EQ(run("bands --format xml").code, 1);
  EXPECT_EQ(run("band-edges --periods 0").code, 1);
  EXPECT_EQ(run("words -n 31").code, 1);
  EXPECT_EQ(run("orbit --m -1").code, 1);
  EXPECT_EQ(run("bands --help").code, 0);
  EXPECT_EQ(run("words -n 2 -o /nonexistent-dir/out.csv").code, 2);
  EXPECT_EQ(run("trace-rec --x0 2 --y0 2 --z0 2").code, 3);
}

TEST(Cli, Determinism) {
  const std::vector<std::string> commands = {
      "bands --ratio 0.7 --range 0:12:0.01",
      "band-edges --ratio 3 --periods 4",
      "fibonacci-scan --range 0:20:0.01",
      "fibonacci-scan --range 0:20:0.01 --format json",
      "orbit -n 500",
      "orbit --t1 0.8 -n 300",
      "words -n 12",
      "trace-rec --x0 0.3 --y0 -0.4 --z0 0.9 -n 1000",
      "trace-rec --x0 2 --y0 2 --z0 2 -n 50"};
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.code, b.code) << c;
    EXPECT_EQ(a.out, b.out) << c;
    EXPECT_FALSE(a.out.empty()) << c;
  }
}

}  // namespace
