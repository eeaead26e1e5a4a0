#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpa/cli.hpp"
#include "wpa/parallel.hpp"
#include "wpa/serialize.hpp"

using namespace wpa;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wpa_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("criterion exit codes") {
  auto fail = run({"criterion", "--family", "disc", "--x0", "2", "--rho", "1.2", "--alpha", "0.5"});
  CHECK(fail.code == 1);
  auto j = json::parse(fail.out);
  CHECK(j["min_density"].get<double>() < 0.0);
  CHECK(run({"criterion", "--family", "disc", "--x0", "2", "--rho", "1.2", "--alpha", "0.3"}).code == 0);
  CHECK(run({"criterion", "--family", "disc", "--x0", "0.5", "--alpha", "0.3"}).code == 2);
  CHECK(run({"criterion", "--family", "blob", "--alpha", "0.3"}).code == 2);
  CHECK(run({"criterion", "--family", "disc"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("report keys and values") {
  auto seg = json::parse(run({"report", "--family", "segment", "--x0", "4"}).out);
  CHECK(seg["alpha_k_closed_form"].get<double>() == doctest::Approx(1.0));
  for (const char* k : {"alpha_k_closed_form", "alpha_k_limit", "m_k_closed_form", "m_k_numeric",
                        "solynin_bound_at_minus1", "dist_minus1_numeric"})
    CHECK(seg.contains(k));
  auto disc = json::parse(run({"report", "--family", "disc", "--x0", "3"}).out);
  CHECK(disc["m_k_closed_form"].get<double>() == doctest::Approx(2.0));
  auto arc = json::parse(run({"report", "--family", "arc", "--theta0", "3.14159265"}).out);
  CHECK(arc["m_k_closed_form"].is_null());
  CHECK(arc["dist_minus1_paper_formula"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(arc["dist_minus1_numeric"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("region grid output") {
  auto path = scratch("region.csv");
  auto svg = scratch("region.svg");
  auto r = run({"region", "--family", "segment", "--x0", "3", "--sigma", "1", "--tau", "2", "--grid", "100",
                "--out", path.string(), "--svg", svg.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "x,y,member");
  int rows = 0, members = 0;
  while (std::getline(f, line)) {
    ++rows;
    members += line.back() == '1';
  }
  CHECK(rows == 10000);
  CHECK(members > 0);
  CHECK(std::filesystem::file_size(svg) > 0);
  CHECK(run({"region", "--grid", "2001"}).code == 2);
  CHECK(run({"region", "--grid", "10", "--out", "/nonexistent-dir/x.csv"}).code == 2);
}

TEST_CASE("outputs are independent of the thread count") {
  std::vector<std::string> args = {"region", "--family", "arc", "--theta0", "2", "--grid", "80"};
  set_max_threads(1);
  auto a = run(args);
  auto fa = run({"fit", "--family", "segment", "--x0", "4", "--n-list", "2,4,8"});
  set_max_threads(4);
  auto b = run(args);
  auto fb = run({"fit", "--family", "segment", "--x0", "4", "--n-list", "2,4,8"});
  set_max_threads(0);
  CHECK(a.out == b.out);
  CHECK(fa.out == fb.out);
}

TEST_CASE("fit and construct") {
  auto fit = run({"fit", "--family", "segment", "--x0", "4", "--n", "2", "--target", "0,0,3,-1"});
  CHECK(fit.code == 0);
  CHECK(json::parse(fit.out)["sup_residual"].get<double>() < 1e-8);
  CHECK(run({"fit", "--family", "segment", "--x0", "4", "--n", "1", "--tol", "1e-12"}).code == 1);
  auto con = run({"construct", "--family", "segment", "--x0", "3", "--sigma", "1", "--tau", "2", "--eps", "0.1",
                  "--B", "10"});
  CHECK(con.code == 0);
  auto j = json::parse(con.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j.contains("n_used"));
}

TEST_CASE("config file with flag override") {
  auto path = scratch("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"command": "criterion", "family": "disc", "x0": 2, "rho": 1.2, "alpha": 0.5})";
  }
  CHECK(run({"--config", path.string()}).code == 1);
  CHECK(run({"criterion", "--config", path.string(), "--alpha", "0.3"}).code == 0);
  CHECK(run({"criterion", "--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("verify subset") {
  auto r = run({"verify", "--only", "pi-identities"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pi-identities") != std::string::npos);
  CHECK(r.out.find("r-root") == std::string::npos);
  CHECK(run({"verify", "--only", "nonsense"}).code == 2);
}
