#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmd/cli.hpp"

using namespace gmd;
using Catch::Matchers::WithinAbs;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gmdscale_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_text(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> fields(const std::string& csv) {
  std::map<std::string, std::string> out;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    out[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("estimate command") {
  const auto data = write_text("small.csv", "1\n2\n4\n");
  auto r = run({"estimate", "--data", data, "--n-total", "6", "--strategy", "s3"});
  REQUIRE(r.code == cli::kOk);
  auto f = fields(r.out);
  CHECK_THAT(std::stod(f["point"]), WithinAbs(2.0, 1e-12));
  CHECK(f["target"] == "G");
  CHECK_THAT(std::stod(f["jackknife_s_sq"]), WithinAbs(2.0 / 3.0, 1e-12));
  CHECK(f["alpha_hat"] == "NA");

  r = run({"estimate", "--data", data, "--n-total", "6", "--strategy", "s1", "--model", "normal"});
  REQUIRE(r.code == cli::kOk);
  f = fields(r.out);
  CHECK_THAT(std::stod(f["point"]), WithinAbs(2.0 * std::sqrt(M_PI) / 2.0, 1e-12));

  const auto header = write_text("header.csv", "x\n1\n2\n4\n5\n");
  r = run({"estimate", "--data", header, "--header", "--n-total", "20", "--strategy", "s3"});
  REQUIRE(r.code == cli::kOk);
  CHECK(fields(r.out)["alpha_hat"] != "NA");
}

TEST_CASE("approx command") {
  auto r = run({"approx", "--method", "normal", "--q", "0.01,0.5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.rfind("q,row_label,value,stderr,excluded_count\n", 0) == 0);
  CHECK(r.out.find("0.01,normal,-2.326") != std::string::npos);

  const auto data = write_text("sample.csv", "0.3\n1.9\n2.2\n3.1\n4.0\n5.5\n7.2\n8.8\n");
  const std::vector<std::string> boot{"approx", "--method", "bootstrap", "--data", data,
                                      "--n-total", "24", "--seed", "5", "--resamples", "2000"};
  auto one = boot;
  one.insert(one.end(), {"--workers", "1"});
  auto four = boot;
  four.insert(four.end(), {"--workers", "4"});
  const auto a = run(one), b = run(four);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);

  r = run({"approx", "--method", "edgeworth", "--data", data, "--n-total", "24"});
  CHECK(r.code == cli::kOk);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  const auto data = write_text("small.csv", "1\n2\n4\n");
  auto r = run({"estimate", "--data", data, "--n-total", "6", "--bogus"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(run({"approx", "--method", "normal", "--q", "1.5"}).code == cli::kUsage);
  CHECK(run({"approx", "--method", "magic"}).code == cli::kUsage);

  r = run({"estimate", "--data", scratch("missing.csv").string(), "--n-total", "6"});
  CHECK(r.code == cli::kData);
  CHECK(r.err.find('\n') == r.err.size() - 1);
  const auto bad = write_text("bad.csv", "1\nabc\n3\n");
  CHECK(run({"estimate", "--data", bad, "--n-total", "6"}).code == cli::kData);
  CHECK(run({"estimate", "--data", data, "--n-total", "3"}).code == cli::kData);

  const auto flat = write_text("flat.csv", "3\n3\n3\n3\n");
  CHECK(run({"approx", "--method", "edgeworth", "--data", flat, "--n-total", "10"}).code ==
        cli::kNumerical);

  for (const char* sub : {"estimate", "approx", "simulate", "reproduce"}) {
    r = run({sub, "--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("--") != std::string::npos);
  }
}

TEST_CASE("simulate and reproduce") {
  const nlohmann::json cfg = {
      {"study", "approximation"},
      {"kind", "gmd"},
      {"scenario", {{"base", {{"family", "normal"}, {"sigma_sq", 1.0}}}, {"N", 120}}},
      {"n", 20},
      {"replications", 6},
      {"mc_reference_R", 1000},
      {"bootstrap_resamples", 300}};
  const auto cfg_path = write_text("study.json", cfg.dump());
  const auto out_dir = scratch("sim").string();
  auto r = run({"simulate", "--config", cfg_path, "--out", out_dir, "--seed", "3"});
  REQUIRE(r.code == cli::kOk);
  const auto csv = slurp(std::filesystem::path(out_dir) / "approximation.csv");
  CHECK(csv.find("F_inv") != std::string::npos);
  CHECK(csv.find("Ftilde_inv") != std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(std::filesystem::path(out_dir) / "manifest.json"));
  CHECK(manifest.at("seed") == 3);
  CHECK(manifest.at("config").at("n") == 20);
  CHECK(manifest.contains("wall_time_seconds"));

  const auto broken = write_text("broken.json", "{ not json");
  CHECK(run({"simulate", "--config", broken, "--out", out_dir, "--seed", "1"}).code ==
        cli::kUsage);

  const std::vector<std::string> base{"reproduce", "--table", "t4", "--scale", "desk",
                                      "--seed", "9", "--replications", "4", "--mc-r", "1000",
                                      "--resamples", "200"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", scratch("ra").string(), "--workers", "1"});
  b.insert(b.end(), {"--out", scratch("rb").string(), "--workers", "3"});
  REQUIRE(run(a).code == cli::kOk);
  REQUIRE(run(b).code == cli::kOk);
  CHECK(slurp(scratch("ra") / "t4.csv") == slurp(scratch("rb") / "t4.csv"));

  CHECK(run({"reproduce", "--table", "t11", "--out", out_dir, "--seed", "1"}).code ==
        cli::kUsage);
}
