#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "goldilocks/kernels.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "goldilocks_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out_file = work_dir() / "stdout.txt";
  const fs::path err_file = work_dir() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + GOLDILOCKS_BIN + " " +
                          args + " > " + out_file.string() + " 2> " +
                          err_file.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string slurp_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("missing column " + name);
  }
};

CsvTable parse_csv(const fs::path& p) {
  CsvTable t;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = cells;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("curve: golden-file regression for the pinned config") {
  const fs::path out = work_dir() / "curve_golden.csv";
  const fs::path cfg = fs::path(GOLDILOCKS_GOLDEN_DIR) / "curve_pinned.cfg";
  const auto r = run_cli("curve --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string golden = slurp_file(fs::path(GOLDILOCKS_GOLDEN_DIR) / "curve_pinned.csv");
  REQUIRE(!golden.empty());
  CHECK(slurp_file(out) == golden);

  // independent value audit of the frozen bytes
  const CsvTable t = parse_csv(out);
  const auto ic = t.col("dx_over_lambda");
  const auto ire = t.col("re_kernel");
  const auto iim = t.col("im_kernel");
  for (const auto& row : t.rows) {
    if (row[t.col("mode")] != "directional") continue;
    const double z = 2.0 * std::numbers::pi * std::stod(row[ic]);
    const auto k = goldilocks::closed_form_kernel(z);
    CHECK(std::stod(row[ire]) == doctest::Approx(k.value.real()).epsilon(1e-12));
    CHECK(std::stod(row[iim]) == doctest::Approx(k.value.imag()).epsilon(1e-12));
  }
}

TEST_CASE("curve: limits and schema") {
  const fs::path out = work_dir() / "curve.csv";
  const auto r = run_cli(
      "curve --out " + out.string() +
      " --mode both --method closed_form");
  REQUIRE(r.exit_code == 0);
  const CsvTable t = parse_csv(out);
  CHECK(t.header == std::vector<std::string>{"dx_over_lambda", "z", "mode",
                                             "re_kernel", "im_kernel", "method",
                                             "err_estimate", "status"});
  const auto idx = t.col("dx_over_lambda");
  const auto ire = t.col("re_kernel");
  const auto iim = t.col("im_kernel");
  const auto imode = t.col("mode");
  const auto istat = t.col("status");
  bool seen_small = false, seen_large = false, seen_iso = false;
  for (const auto& row : t.rows) {
    CHECK(row[istat] == "ok");
    const double dxol = std::stod(row[idx]);
    const double z = 2.0 * std::numbers::pi * dxol;
    const double re = std::stod(row[ire]);
    const double im = std::stod(row[iim]);
    if (row[imode] == "isotropic") {
      CHECK(std::abs(im) < 1e-10);
      seen_iso = true;
      continue;
    }
    if (z < 5e-2) {
      CHECK(im == doctest::Approx(-(2.0 / 3.0) * z).epsilon(1e-2));
      CHECK(re == doctest::Approx((7.0 / 15.0) * z * z).epsilon(1e-2));
      seen_small = true;
    }
    if (z > 300.0) {
      CHECK(std::abs(re - 2.0 / 3.0) < 0.02);
      CHECK(std::abs(im) < 0.02);
      seen_large = true;
    }
  }
  CHECK(seen_small);
  CHECK(seen_large);
  CHECK(seen_iso);
}

TEST_CASE("curve: single zero row for the {0} grid") {
  const fs::path out = work_dir() / "curve0.csv";
  const fs::path cfg = work_dir() / "curve0.cfg";
  std::ofstream(cfg) << "dx_over_lambda = 0\n";
  const auto r = run_cli("curve --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const CsvTable t = parse_csv(out);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::stod(t.rows[0][t.col("re_kernel")]) == 0.0);
  CHECK(std::stod(t.rows[0][t.col("im_kernel")]) == 0.0);
}

TEST_CASE("curve: row order is grid order regardless of thread count") {
  const fs::path c1 = work_dir() / "c1.csv";
  const fs::path c4 = work_dir() / "c4.csv";
  const fs::path cfg = work_dir() / "cthreads.cfg";
  std::ofstream(cfg) << "dx_over_lambda = log(1e-2, 5, 64)\nmode = both\n";
  REQUIRE(run_cli("curve --config " + cfg.string() + " --threads 1 --out " +
                  c1.string())
              .exit_code == 0);
  REQUIRE(run_cli("curve --config " + cfg.string() + " --threads 4 --out " +
                  c4.string())
              .exit_code == 0);
  const std::string b1 = slurp_file(c1);
  CHECK(!b1.empty());
  CHECK(b1 == slurp_file(c4));
}

TEST_CASE("signal-map: zero start column, bounds, SVG emission") {
  const fs::path out = work_dir() / "sm.csv";
  const fs::path svg = work_dir() / "sm.svg";
  const fs::path cfg = work_dir() / "sm.cfg";
  std::ofstream(cfg) << "dx_over_lambda = log(1e-2, 2, 40)\n"
                        "t_grid = \"lin(0, 5, 11) s\"\n"
                        "svg = " << svg.string() << "\n";
  const auto r = run_cli("signal-map --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const CsvTable t = parse_csv(out);
  const auto it = t.col("t_s");
  const auto is = t.col("signal");
  const auto ia = t.col("A");
  for (const auto& row : t.rows) {
    const double s = std::stod(row[is]);
    CHECK(std::abs(s) <= 1.0);
    CHECK(std::stod(row[ia]) <= 1.0);
    if (std::stod(row[it]) == 0.0) CHECK(s == 0.0);
  }
  const std::string svg_text = slurp_file(svg);
  CHECK(svg_text.rfind("<svg", 0) == 0);
  CHECK(svg_text.find("<rect") != std::string::npos);
}

TEST_CASE("photon-eff: bands with interior peaks") {
  const fs::path out = work_dir() / "pe.csv";
  const auto r = run_cli("photon-eff --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const CsvTable t = parse_csv(out);
  const auto iap = t.col("A_p_m2");
  const auto ieta = t.col("eta");
  const auto idx = t.col("dx_over_lambda");
  std::vector<std::string> aps;
  for (const auto& row : t.rows) {
    const double eta = std::stod(row[ieta]);
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0);
    if (aps.empty() || aps.back() != row[iap]) aps.push_back(row[iap]);
  }
  (void)idx;
  CHECK(aps.size() == 3);
  for (const auto& ap : aps) {
    std::vector<double> eta;
    for (const auto& row : t.rows) {
      if (row[iap] == ap) eta.push_back(std::stod(row[ieta]));
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      if (eta[i] > eta[best]) best = i;
    }
    CHECK(best > 0);
    CHECK(best < eta.size() - 1);
    CHECK(eta[best] > eta.front() + 1e-3);
    CHECK(eta[best] > eta.back() + 1e-3);
  }

  SUBCASE("zero separation leaks nothing") {
    const fs::path cfg = work_dir() / "pe0.cfg";
    const fs::path out0 = work_dir() / "pe0.csv";
    std::ofstream(cfg) << "dx_over_lambda = lin(0, 0.2, 5)\n";
    REQUIRE(run_cli("photon-eff --config " + cfg.string() + " --out " +
                    out0.string())
                .exit_code == 0);
    const CsvTable t0 = parse_csv(out0);
    for (const auto& row : t0.rows) {
      if (std::stod(row[t0.col("dx_over_lambda")]) == 0.0) {
        CHECK(std::stod(row[t0.col("eta")]) == 0.0);
      }
    }
  }
}

TEST_CASE("ion: JSON report with order-of-magnitude numbers") {
  const auto r = run_cli("ion");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const double pref = j["prefactor_m2"].get<double>();
  const double rate = j["detection_rate_per_s"].get<double>();
  CHECK(pref / 1e-14 > 0.2);
  CHECK(pref / 1e-14 < 5.0);
  CHECK(rate > 0.2);
  CHECK(rate < 5.0);
  CHECK(j["optimal"]["dx_star_over_lambda"].get<double>() ==
        doctest::Approx(0.176).epsilon(0.02));

  // Z'^2 scaling of the coupling
  const fs::path cfg = work_dir() / "ion.cfg";
  std::ofstream(cfg) << "Zp = 2\n";
  const auto r2 = run_cli("ion --config " + cfg.string());
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.out);
  CHECK(j2["prefactor_m2"].get<double>() == doctest::Approx(4.0 * pref).epsilon(1e-12));
}

TEST_CASE("optimize: directional band, isotropic no-optimum, j-independence") {
  const auto r = run_cli("optimize");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const double dxol = j["dx_star_over_lambda"].get<double>();
  CHECK(dxol >= 0.15);
  CHECK(dxol <= 0.30);
  CHECK(j["window"]["z_lo"].get<double>() < j["z_star"].get<double>());
  CHECK(j["window"]["z_hi"].get<double>() > j["z_star"].get<double>());

  const auto iso = run_cli("optimize --mode isotropic");
  CHECK(iso.exit_code == 2);
  const json je = json::parse(iso.out);
  CHECK(je["error"]["code"] == "no_optimum");

  const fs::path cfg = work_dir() / "opt4.cfg";
  std::ofstream(cfg) << "j = 4\ng_si = 1e-27\n";
  const auto r4 = run_cli("optimize --config " + cfg.string());
  REQUIRE(r4.exit_code == 0);
  const json j4 = json::parse(r4.out);
  CHECK(j4["dx_star_over_lambda"].get<double>() == doctest::Approx(dxol).epsilon(1e-9));

  const auto sig = run_cli("optimize --config /dev/null", "GOLDILOCKS_CRITERION=signal_threshold");
  REQUIRE(sig.exit_code == 0);
  const json js = json::parse(sig.out);
  CHECK(js["window"]["z_lo"].get<double>() < js["z_star"].get<double>());
  CHECK(js["window"]["z_hi"].get<double>() > js["z_star"].get<double>());
}

TEST_CASE("validate: pass, determinism, env override, tamper") {
  const fs::path a = work_dir() / "v1.txt";
  const fs::path b = work_dir() / "v2.txt";
  const auto t0 = std::chrono::steady_clock::now();
  REQUIRE(run_cli("validate --out " + a.string()).exit_code == 0);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(elapsed < 60.0);  // default sample counts stay within budget
  REQUIRE(run_cli("validate --out " + b.string()).exit_code == 0);
  const std::string ra = slurp_file(a);
  CHECK(ra == slurp_file(b));
  CHECK(ra.find("RESULT PASS") != std::string::npos);

  const auto seeded = run_cli("validate --seed 777");
  CHECK(seeded.out.find("seed=777") != std::string::npos);
  const auto env_seeded = run_cli("validate", "GOLDILOCKS_SEED=888");
  CHECK(env_seeded.out.find("seed=888") != std::string::npos);

  const auto tampered = run_cli("validate", "GOLDILOCKS_TAMPER=small_z_re_coeff");
  CHECK(tampered.exit_code == 3);
  CHECK(tampered.out.find("FAIL small_z_law") != std::string::npos);

  const auto as_json = run_cli("validate --seed 4242", "GOLDILOCKS_FORMAT=json");
  REQUIRE(as_json.exit_code == 0);
  const json jv = json::parse(as_json.out);
  CHECK(jv["pass"].get<bool>());
  CHECK(jv["checks"].size() >= 12);
}

TEST_CASE("config and usage errors exit with code 1") {
  const fs::path cfg = work_dir() / "bad.cfg";
  std::ofstream(cfg) << "not_a_key = 1\n";
  CHECK(run_cli("curve --config " + cfg.string()).exit_code == 1);

  std::ofstream(cfg) << "lambda = \"1064 kg\"\n";  // wrong dimension
  CHECK(run_cli("signal-map --config " + cfg.string()).exit_code == 1);

  std::ofstream(cfg) << "t_grid = lin(0, 5, 11)\n";  // missing time unit
  CHECK(run_cli("signal-map --config " + cfg.string()).exit_code == 1);

  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("curve --method nope").exit_code == 1);
  CHECK(run_cli("curve --out /no/such/dir/out.csv").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}
