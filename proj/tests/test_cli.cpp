#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef GJW_CLI_PATH
#define GJW_CLI_PATH "gjw"
#endif

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GJW_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gjw_cli_" + std::to_string(::getpid()) + "_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool all_finite(const nlohmann::json& j) {
  if (j.is_number()) return std::isfinite(j.get<double>());
  if (j.is_structured())
    for (const auto& v : j)
      if (!all_finite(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("graph command") {
  auto r = run("graph --family wheel --n 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("|E| = 12") != std::string::npos);
  r = run("graph --product \"cartesian(path(7),path(2))\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("|E| = 19") != std::string::npos);
  r = run("graph --family path --n 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("|V| = 1") != std::string::npos);
  CHECK(r.out.find("|E| = 0") != std::string::npos);
  CHECK(r.out.find("connected = true") != std::string::npos);
  CHECK(run("graph --family octopus --n 3").code == 2);
  CHECK(run("graph --family cycle --n 2").code == 2);
  CHECK(run("graph --family path --n 3 --product \"path(3)\"").code == 2);
}

TEST_CASE("graph exports") {
  const auto r = run("graph --family path --n 3 --dot -");
  CHECK(r.out.find("0 -- 1;") != std::string::npos);
  const std::string el = temp("edges.txt");
  CHECK(run("graph --family cycle --n 4 --write-edge-list " + el).code == 0);
  CHECK(slurp(el) == "n 4\n0 1\n0 3\n1 2\n2 3\n");
  const auto back = run("graph --edge-list " + el);
  CHECK(back.out.find("|E| = 4") != std::string::npos);
  std::filesystem::remove(el);
}

TEST_CASE("model command") {
  auto r = run("model --family complete --n 3 --pair exponential --g 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("v2c=3 v3c=1") != std::string::npos);
  CHECK(r.out.find("e0 = -4") != std::string::npos);
  CHECK(r.out.find("delta: 3 terms") != std::string::npos);
  CHECK(r.out.find("coefficient=2") != std::string::npos);

  r = run("model --family path --n 2 --pair-expr \"abs(x)^g\" --param g=2");
  CHECK(r.code == 0);
  CHECK(r.out.find("edge 0-1") != std::string::npos);
  CHECK(r.out.find("three-body: 0 wedges") != std::string::npos);

  const std::string el = temp("weighted.txt");
  std::ofstream(el) << "n 3\n0 1 2\n1 2 0.5\n";
  r = run("model --edge-list " + el + " --pair power --g 2 --report -");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["model"]["simple"] == false);
  CHECK(j["terms"]["two_body"]["terms"][0]["p"] == 2.0);
  std::filesystem::remove(el);

  CHECK(run("model --family complete --n 3 --pair-expr \"abs(x)^q\"").code == 2);
}

TEST_CASE("verify command") {
  const std::string csv = temp("rows.csv");
  auto r = run("verify --family complete --n 6 --pair power --g 2 --samples 50 --seed 1 --csv " + csv);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "verify");
  CHECK(j["verification"]["calogero_cancellation"] == true);
  CHECK(j["verification"]["passed"] == true);
  CHECK(all_finite(j));
  std::istringstream rows(slurp(csv));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "seed,x0,x1,x2,x3,x4,x5,residual,h");
  int count = 0;
  while (std::getline(rows, line)) ++count;
  CHECK(count == 50);
  std::filesystem::remove(csv);

  r = run("verify --family cycle --n 5 --pair sinh --g 2 --ell 1 --seed 2");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verification"]["max_scaled_residual"].get<double>() <= 1e-5);

  CHECK(run("verify --family complete --n 3 --pair exponential --g 1 --seed 1 --e0 0.5").code == 1);
  CHECK(run("verify --family complete --n 3 --pair power --g 2").code == 2);
}

TEST_CASE("spectrum command") {
  auto r = run("spectrum --family complete --n 2 --pair power --g 2 --omega 1 --tail 1e-8");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["spectrum"]["eigenvalues"][0].get<double>()) <= 5e-3);
  CHECK(j["spectrum"]["overlap"].get<double>() >= 0.999);
  CHECK(run("spectrum --family complete --n 3 --pair power --g 2 --omega 1 --points 128").code == 2);
  r = run("spectrum --family empty --n 1 --pair power --g 2 --omega 1 --tail 1e-8");
  CHECK(r.code == 0);
  CHECK(std::fabs(nlohmann::json::parse(r.out)["spectrum"]["eigenvalues"][0].get<double>()) <= 1e-3);
  CHECK(run("spectrum --family complete --n 2 --pair exponential --g -1 --omega 1").code == 2);
}

TEST_CASE("config file, flags win") {
  const std::string cfg = temp("run.toml");
  std::ofstream(cfg) << "[verify]\nfamily = \"complete\"\nn = 4\npair = \"power\"\ng = 2\nseed = 3\nsamples = 10\n";
  auto a = run("--config " + cfg + " verify");
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["verification"]["samples"] == 10);
  auto b = run("--config " + cfg + " verify --samples 12");
  CHECK(nlohmann::json::parse(b.out)["verification"]["samples"] == 12);
  std::filesystem::remove(cfg);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string args = "verify --family star --n 5 --pair gaussian --g -0.3 --seed 9";
  CHECK(run(args + " --threads 1").out == run(args + " --threads 3").out);
}
