#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msmono/cli.hpp"

using namespace msmono;
namespace fs = std::filesystem;

namespace {

const char* kTipJson = R"({"kind": "crack_tip"})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "msmono_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig scan_config(const std::string& out) {
  RunConfig c;
  c.command = "scan";
  c.model_source = kTipJson;
  c.center = {1, 0};
  c.r_steps = 400;
  c.out_path = out;
  return c;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("scan of the crack tip from (1, 0)") {
  std::ostringstream log;
  const fs::path out = scratch("scan.csv");
  REQUIRE(run(scan_config(out.string()), log) == kExitPass);
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 401);
  CHECK(lines[0] == kScanCsvHeader);
  const ScanRow last = parse_scan_csv_line(lines.back());
  CHECK(last.r == doctest::Approx(50.0));
  CHECK(std::abs(std::min(last.F, 1.5) - 1.5) < 1e-3);
  CHECK(std::abs(last.F - 1.5) < 0.011);
  const std::string text = slurp(out);
  CHECK(text.find("# verdict monotone pass") != std::string::npos);
  CHECK(text.find("\"quad_order\":16") != std::string::npos);
  CHECK(text.find("\"fourier_modes\":64") != std::string::npos);
  CHECK(text.find("\"cert_n\":4096") != std::string::npos);
  CHECK(text.find("\"directions\":720") != std::string::npos);
}

TEST_CASE("scan rows round trip at 17 digits") {
  const fs::path out = scratch("roundtrip.csv");
  std::ostringstream log;
  RunConfig c = scan_config(out.string());
  c.center = {0, 0.5};
  c.r_steps = 64;
  REQUIRE(run(c, log) == kExitPass);
  const auto lines = data_lines(slurp(out));
  const auto rep = scan(CrackTip{}, {0, 0.5}, radius_grid(0.05, 50, 64), [] {
    DiagnosticsSpec s;
    s.quad.rel_tolerance = 1e-7;
    return s;
  }());
  REQUIRE(lines.size() == rep.rows.size() + 1);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const ScanRow& want = rep.rows[i];
    const ScanRow got = parse_scan_csv_line(lines[i + 1]);
    CHECK(got.r == want.r);
    CHECK(got.skipped_tangential == !want.usable());
    if (!want.usable()) continue;
    CHECK(got.F == want.F);
    CHECK(got.E == want.E);
    CHECK(got.E_dir == want.E_dir);
    CHECK(got.jump_count == want.jump_count);
    CHECK(got.D1 == want.D1);
    CHECK(got.D2 == want.D2);
    CHECK(got.dlms_residual == want.dlms_residual);
    CHECK(got.circle_tau == want.circle_tau);
    CHECK(got.circle_nu == want.circle_nu);
  }
}

TEST_CASE("JSON output wraps config, rows and verdicts") {
  const fs::path out = scratch("dlms.json");
  RunConfig c;
  c.command = "dlms";
  c.model_source = kTipJson;
  c.center = {-0.4, 0.7};
  c.r_steps = 12;
  c.out_format = "json";
  c.out_path = out.string();
  std::ostringstream log;
  REQUIRE(run(c, log) == kExitPass);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc.at("config").at("command") == "dlms");
  CHECK(doc.at("rows").size() == 12);
  CHECK(doc.at("verdicts").at("dlms").at("pass") == true);
}

TEST_CASE("every command runs") {
  const fs::path out = scratch("any.csv");
  std::ostringstream log;
  for (const std::string cmd : {"prop31", "slice", "sharpness", "competitor", "equilibrium"}) {
    RunConfig c;
    c.command = cmd;
    c.model_source = kTipJson;
    c.r_steps = 6;
    c.bumps = 4;
    c.out_path = out.string();
    CAPTURE(cmd);
    CHECK(run(c, log) == kExitPass);
    CHECK(data_lines(slurp(out)).size() > 1);
  }
}

TEST_CASE("twopoint with a claim subset and landscape") {
  const fs::path out = scratch("twopoint.csv"), land = scratch("landscape.csv");
  RunConfig c;
  c.command = "twopoint";
  c.cert_n = 1024;
  c.claims = {1, 3};
  c.out_path = out.string();
  c.landscape_path = land.string();
  std::ostringstream log;
  REQUIRE(run(c, log) == kExitPass);
  const auto rows = data_lines(slurp(out));
  CHECK(rows.size() == 3);
  const auto landscape = data_lines(slurp(land));
  CHECK(landscape[0] == "phi_tilde,alpha1,alpha2,f");
  CHECK(landscape.size() > 1000);
}

TEST_CASE("configuration errors exit 2") {
  std::ostringstream log;
  RunConfig c = scan_config(scratch("bad.csv").string());
  c.model_source = R"({"kind": "crack_tip", "tip": [0, "x"]})";
  CHECK(run(c, log) == kExitConfig);
  CHECK(log.str().find("tip") != std::string::npos);

  c = scan_config(scratch("bad.csv").string());
  c.model_source = "{\"kind\": \n \"crack_tip\",}";
  log.str("");
  CHECK(run(c, log) == kExitConfig);
  CHECK(log.str().find("line 2") != std::string::npos);

  c = scan_config("");
  c.r_min = 2.0;
  c.r_max = 1.0;
  CHECK(run(c, log) == kExitConfig);
  c = scan_config("");
  c.r_steps = 1;
  CHECK(run(c, log) == kExitConfig);
  c = scan_config("");
  c.command = "nope";
  CHECK(run(c, log) == kExitConfig);
  c = scan_config("");
  c.model_source.clear();
  CHECK(run(c, log) == kExitConfig);
}

TEST_CASE("verdict failures exit 1") {
  // One Fourier mode cannot represent a cubic trace, so the truncated extension
  // undercuts the field's own energy and the minimality check fails.
  RunConfig c;
  c.command = "competitor";
  c.model_source = R"({"kind": "smooth_harmonic", "coefficients": [[0, 0], [1, 0], [0, 0], [0.5, 0]]})";
  c.fourier_K = 1;
  c.r_min = 0.5;
  c.r_max = 2.0;
  c.r_steps = 3;
  c.out_path = scratch("fail.csv").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitVerdictFail);
  CHECK(log.str().find("minimality") != std::string::npos);
  c.fourier_K = 8;
  CHECK(run(c, log) == kExitPass);
}

TEST_CASE("identical configs give identical bytes") {
  const fs::path a = scratch("det_a.csv"), b = scratch("det_b.csv");
  for (const std::string cmd : {"scan", "equilibrium"}) {
    RunConfig c = scan_config(a.string());
    c.command = cmd;
    c.r_steps = 40;
    c.seed = 12345;
    std::ostringstream log;
    REQUIRE(run(c, log) == kExitPass);
    c.out_path = b.string();
    REQUIRE(run(c, log) == kExitPass);
    CHECK(slurp(a) == slurp(b));
  }
}
