#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mono::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mono_cli_" + name)).string();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"centroid", "--no-such-flag"}).code == 2);
  CHECK(run({"centroid", "--space", "elliptic"}).code == 2);
  CHECK(run({"centroid", "--jobs", "0"}).code == 2);
  CHECK(run({"export-mesh", "--quiet"}).code == 2);  // --out is required
  CHECK(run({"centroid", "--config", "/nonexistent/cfg"}).code == 2);
  // Out-of-domain parameters are usage errors too.
  CHECK(run({"build", "--quiet", "--c", "1.5"}).code == 2);
}

TEST_CASE("help documents every flag") {
  const Result top = run({"--help"});
  CHECK(top.code == 0);
  for (const char* sub : {"build", "certify", "centroid", "equilibria", "verify2d", "sweep", "export-mesh"}) {
    CHECK(top.out.find(sub) != std::string::npos);
  }
  const Result cert = run({"certify", "--help"});
  CHECK(cert.code == 0);
  for (const char* flag : {"--d", "--R", "--eps", "--space", "--jobs", "--n-theta", "--no-richardson"}) {
    CHECK(cert.out.find(flag) != std::string::npos);
  }
  const Result ex = run({"export-mesh", "--help"});
  for (const char* flag : {"--rings", "--segments", "--out", "--embedded-out", "--body", "--axes"}) {
    CHECK(ex.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("centroid of a Euclidean ball is the origin") {
  const Result r = run({"centroid", "--quiet", "--space", "euclidean", "--body", "ball", "--R", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& x : j["centroid"]) CHECK(std::fabs(x.get<double>()) < 1e-14);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args = {"equilibria", "--quiet", "--space", "spherical", "--body", "perturbed",
                                         "--seed", "4", "--amplitude", "0.03", "--grid", "24"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "3"});
  CHECK(run(jobs).out == a.out);
}

TEST_CASE("config file fills flags and explicit flags win") {
  const std::string cfg = tmp_path("cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# battery settings\nspace = hyperbolic\nn = 3\nseed=11\nquiet=true\n";
  }
  const Result from_cfg = run({"verify2d", "--config", cfg});
  REQUIRE(from_cfg.code == 0);
  const auto j = nlohmann::json::parse(from_cfg.out);
  CHECK(j["n"] == 3);
  CHECK(j["bodies"][0]["seed"] == 11);
  CHECK(j["space"].get<std::string>().find("hyperbolic") != std::string::npos);

  const Result over = run({"verify2d", "--config", cfg, "--n", "2", "--space", "euclidean"});
  REQUIRE(over.code == 0);
  const auto k = nlohmann::json::parse(over.out);
  CHECK(k["n"] == 2);
  CHECK(k["space"].get<std::string>().find("euclidean") != std::string::npos);
  {
    std::ofstream f(cfg);
    f << "not a pair\n";
  }
  CHECK(run({"verify2d", "--config", cfg}).code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("verify2d hyperbolic battery") {
  const Result r = run({"verify2d", "--quiet", "--space", "hyperbolic", "--n", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["failures"] == 0);
}

TEST_CASE("certify reports its verdict through the exit code") {
  const Result ok = run({"certify", "--quiet", "--space", "spherical", "--R", "1", "--d", "0.002", "--eps", "0.05"});
  CHECK(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["passed"] == true);
  CHECK(j["census"]["S"] == 1);
  CHECK(j["census"]["U"] == 1);
  CHECK(j["census"]["H"] == 0);

  // At d = 0.02 the body is not convex, and the certificate says so.
  const Result bad = run({"certify", "--quiet", "--space", "spherical", "--R", "1", "--d", "0.02", "--eps", "0.05"});
  CHECK(bad.code == 1);
  const auto k = nlohmann::json::parse(bad.out);
  CHECK(k["passed"] == false);
  CHECK(k["pass"]["C"] == false);
  CHECK(k["census"]["S"] == 1);
  CHECK(k["census"]["U"] == 1);
}

TEST_CASE("sweep and export write their files") {
  const std::string csv = tmp_path("sweep.csv"), obj = tmp_path("mesh.obj");
  const Result s = run({"sweep", "--quiet", "--space", "spherical", "--c", "0.5,1", "--d", "0,0.02", "--out", csv,
                        "--n-theta", "24", "--n-phi", "32", "--n-r", "16"});
  CHECK(s.code == 0);
  CHECK(run({"sweep", "--quiet", "--n-phi", "16"}).code == 2);
  std::ifstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 5);

  const Result e = run({"export-mesh", "--quiet", "--space", "euclidean", "--body", "ellipsoid", "--axes", "2,1.5,1",
                        "--rings", "8", "--segments", "12", "--out", obj});
  CHECK(e.code == 0);
  CHECK(std::filesystem::exists(obj));
  CHECK(run({"export-mesh", "--quiet", "--space", "euclidean", "--body", "ball", "--out", "/nonexistent/dir/m.obj"})
            .code == 1);
  std::remove(csv.c_str());
  std::remove(obj.c_str());
}
