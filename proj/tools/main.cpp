// confpoly command-line front end: curve / boundary / verify / sample.
// Every command is a pure function of its effective config; identical flags
// produce identical output bytes. Numeric CSV fields carry 17 significant
// digits. Exit codes: 0 ok, 1 usage, 2 verification failure, 3 sampler
// exhaustion.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "confpoly/crofton.hpp"
#include "confpoly/geometry.hpp"
#include "confpoly/knotproxy.hpp"
#include "confpoly/measures.hpp"
#include "confpoly/moduli.hpp"
#include "confpoly/verify.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output path: " << path << "\n";
    return 1;
  }
  out << content;
  return out ? 0 : 1;
}

const char* method_token(confpoly::EstimateMethod m) {
  return m == confpoly::EstimateMethod::kQuadrature ? "quadrature" : "mc";
}

struct RunConfig {
  int n = 4;
  double r = std::nan("");
  double r_min = std::nan("");
  double r_max = std::nan("");
  int steps = 21;
  long samples = 100000;
  uint64_t seed = 0;
  int grid_size = 512;
  std::string method = "quadrature";
  std::string suite = "all";
  double sample_scale = 1.0;
  std::string out;
  std::string format = "csv";

  bool has_r = false, has_r_min = false, has_r_max = false;
};

// Leading `# key=value` comment block (CSV) / "config" object (JSON) so every
// artifact records the effective configuration it came from.
struct ConfigEcho {
  std::vector<std::pair<std::string, std::string>> kv;

  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void add(const std::string& k, double v) { add(k, g17(v)); }
  void add(const std::string& k, long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, int v) { add(k, std::to_string(v)); }
  void add(const std::string& k, uint64_t v) { add(k, std::to_string(v)); }

  std::string csv() const {
    std::string s;
    for (const auto& [k, v] : kv) s += "# " + k + "=" + v + "\n";
    return s;
  }
  ordered_json json() const {
    ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
  }
};

// ------------------------------------------------------------------ curve --

int run_curve(const RunConfig& cfg) {
  double lo = cfg.has_r_min ? cfg.r_min : 1.0;
  double hi = cfg.has_r_max ? cfg.r_max : 2.0;
  if (cfg.steps < 1) {
    std::cerr << "error: --steps must be at least 1\n";
    return 1;
  }
  if (!(lo >= 1.0 && hi <= 2.0 && lo <= hi)) {
    std::cerr << "error: curve needs 1 <= r-min <= r-max <= 2\n";
    return 1;
  }
  if (cfg.method != "quadrature" && cfg.method != "mc") {
    std::cerr << "error: --method must be quadrature or mc\n";
    return 1;
  }
  std::vector<double> grid;
  if (cfg.steps == 1) {
    grid.push_back(lo);
  } else {
    for (int i = 0; i < cfg.steps; ++i) {
      grid.push_back(lo + (hi - lo) * i / (cfg.steps - 1));
    }
  }

  confpoly::ScanResult scan = confpoly::monotonicity_scan(grid);
  std::vector<confpoly::Estimate> rows = scan.curve.kappa_bar;
  if (cfg.method == "mc") {
    for (size_t i = 0; i < grid.size(); ++i) {
      rows[i] = confpoly::kappa_bar(grid[i], confpoly::EstimateMethod::kMonteCarlo,
                                    cfg.samples, cfg.seed + i);
    }
  }
  const char* verdict = scan.monotone ? "PASS" : "FAIL";

  ConfigEcho echo;
  echo.add("command", std::string("curve"));
  echo.add("r-min", lo);
  echo.add("r-max", hi);
  echo.add("steps", cfg.steps);
  echo.add("method", cfg.method);
  if (cfg.method == "mc") {
    echo.add("samples", cfg.samples);
    echo.add("seed", cfg.seed);
  }
  echo.add("format", cfg.format);

  std::string body;
  if (cfg.format == "csv") {
    body = echo.csv();
    body += "r,kappa_bar,method,std_error,area,kappa_B,crofton_residual\n";
    for (size_t i = 0; i < grid.size(); ++i) {
      body += g17(grid[i]) + "," + g17(rows[i].value) + "," +
              method_token(rows[i].method) + "," + g17(rows[i].std_error) + "," +
              g17(scan.curve.area[i]) + "," + g17(scan.curve.kappa_boundary[i]) +
              "," + g17(scan.curve.crofton_residual[i]) + "\n";
    }
    body += std::string("verdict,") + verdict + "\n";
  } else {
    ordered_json j;
    j["config"] = echo.json();
    j["rows"] = ordered_json::array();
    for (size_t i = 0; i < grid.size(); ++i) {
      ordered_json row;
      row["r"] = grid[i];
      row["kappa_bar"] = rows[i].value;
      row["method"] = method_token(rows[i].method);
      row["std_error"] = rows[i].std_error;
      row["area"] = scan.curve.area[i];
      row["kappa_B"] = scan.curve.kappa_boundary[i];
      row["crofton_residual"] = scan.curve.crofton_residual[i];
      j["rows"].push_back(row);
    }
    j["verdict"] = verdict;
    body = j.dump(2) + "\n";
  }
  int rc = write_output(cfg.out, body);
  if (rc != 0) return rc;
  return scan.monotone ? 0 : 2;
}

// --------------------------------------------------------------- boundary --

int run_boundary(const RunConfig& cfg) {
  if (!cfg.has_r) {
    std::cerr << "error: boundary requires --r\n";
    return 1;
  }
  if (!(cfg.r > 1.0 && cfg.r < 2.0)) {
    std::cerr << "error: boundary measures need r in (1, 2)\n";
    return 1;
  }
  bool mu_regime = cfg.r < confpoly::kRegimeSplit;

  ConfigEcho echo;
  echo.add("command", std::string("boundary"));
  echo.add("r", cfg.r);
  echo.add("grid-size", cfg.grid_size);
  echo.add("measures", std::string(mu_regime ? "mu" : "nu"));
  echo.add("format", cfg.format);

  std::string body;
  try {
    if (mu_regime) {
      confpoly::MuGrids mb = confpoly::mu_B_grid(cfg.r, cfg.grid_size);
      confpoly::MuGrids mi = confpoly::mu_I_grid(cfg.r, cfg.grid_size, mb.alpha);
      if (cfg.format == "csv") {
        body = echo.csv();
        body += "arc,param,mu_B,mu_I\n";
        for (size_t k = 0; k < mb.ell_arc.params.size(); ++k) {
          body += "ell," + g17(mb.ell_arc.params[k]) + "," +
                  g17(mb.ell_arc.density[k]) + "," + g17(mi.ell_arc.density[k]) +
                  "\n";
        }
        for (size_t k = 0; k < mb.theta_arc.params.size(); ++k) {
          body += "theta," + g17(mb.theta_arc.params[k]) + "," +
                  g17(mb.theta_arc.density[k]) + "," +
                  g17(mi.theta_arc.density[k]) + "\n";
        }
        body += "alpha," + g17(mb.alpha) + "\n";
      } else {
        ordered_json j;
        j["config"] = echo.json();
        j["rows"] = ordered_json::array();
        auto emit = [&j](const char* arc, const confpoly::DensityGrid& b,
                         const confpoly::DensityGrid& i) {
          for (size_t k = 0; k < b.params.size(); ++k) {
            ordered_json row;
            row["arc"] = arc;
            row["param"] = b.params[k];
            row["mu_B"] = b.density[k];
            row["mu_I"] = i.density[k];
            j["rows"].push_back(row);
          }
        };
        emit("ell", mb.ell_arc, mi.ell_arc);
        emit("theta", mb.theta_arc, mi.theta_arc);
        j["alpha"] = mb.alpha;
        body = j.dump(2) + "\n";
      }
    } else {
      confpoly::NuGrids nu = confpoly::nu_grids(cfg.r, cfg.grid_size);
      if (cfg.format == "csv") {
        body = echo.csv();
        body += "arc,param,nu_B,nu_I\n";
        for (size_t k = 0; k < nu.nu_B.params.size(); ++k) {
          body += "dominant," + g17(nu.nu_B.params[k]) + "," +
                  g17(nu.nu_B.density[k]) + "," + g17(nu.nu_I.density[k]) + "\n";
        }
      } else {
        ordered_json j;
        j["config"] = echo.json();
        j["rows"] = ordered_json::array();
        for (size_t k = 0; k < nu.nu_B.params.size(); ++k) {
          ordered_json row;
          row["arc"] = "dominant";
          row["param"] = nu.nu_B.params[k];
          row["nu_B"] = nu.nu_B.density[k];
          row["nu_I"] = nu.nu_I.density[k];
          j["rows"].push_back(row);
        }
        body = j.dump(2) + "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return write_output(cfg.out, body);
}

// ----------------------------------------------------------------- verify --

int run_verify(const RunConfig& cfg) {
  const auto& names = confpoly::cli_suite_names();
  bool known = false;
  for (const auto& s : names) known = known || s == cfg.suite;
  if (!known) {
    std::string all;
    for (const auto& s : names) all += (all.empty() ? "" : ", ") + s;
    std::cerr << "error: unknown suite '" << cfg.suite << "' (expected one of "
              << all << ")\n";
    return 1;
  }

  confpoly::SuiteResult result =
      confpoly::run_suite(cfg.suite, cfg.seed, cfg.sample_scale);

  ConfigEcho echo;
  echo.add("command", std::string("verify"));
  echo.add("suite", cfg.suite);
  echo.add("seed", cfg.seed);
  echo.add("sample-scale", cfg.sample_scale);
  echo.add("format", cfg.format);

  std::string body;
  if (cfg.format == "csv") {
    body = echo.csv();
    body += "name,tolerance,margin,pass\n";
    for (const auto& c : result.checks) {
      body += c.name + "," + g17(c.tolerance) + "," + g17(c.margin) + "," +
              (c.pass ? "PASS" : "FAIL") + "\n";
    }
    body += std::string("verdict,") + (result.all_pass() ? "PASS" : "FAIL") + "\n";
  } else {
    ordered_json j;
    j["config"] = echo.json();
    j["checks"] = ordered_json::array();
    for (const auto& c : result.checks) {
      ordered_json row;
      row["name"] = c.name;
      row["tolerance"] = c.tolerance;
      row["margin"] = c.margin;
      row["pass"] = c.pass;
      row["detail"] = c.detail;
      j["checks"].push_back(row);
    }
    j["all_pass"] = result.all_pass();
    body = j.dump(2) + "\n";
  }
  int rc = write_output(cfg.out, body);
  if (rc != 0) return rc;
  return result.all_pass() ? 0 : 2;
}

// ----------------------------------------------------------------- sample --

int run_sample(const RunConfig& cfg) {
  if (cfg.n < 4) {
    std::cerr << "error: sample needs --n >= 4\n";
    return 1;
  }
  if (cfg.samples < 1) {
    std::cerr << "error: --samples must be positive\n";
    return 1;
  }
  double half_n = cfg.n / 2.0;
  double window_lo = 0.0;
  double window_hi = cfg.has_r ? cfg.r : half_n;
  if (cfg.has_r_min || cfg.has_r_max) {
    if (cfg.has_r) {
      std::cerr << "error: use either --r or the --r-min/--r-max window\n";
      return 1;
    }
    window_lo = cfg.has_r_min ? cfg.r_min : 0.0;
    window_hi = cfg.has_r_max ? cfg.r_max : half_n;
    if (!(window_lo >= 0.0 && window_lo <= window_hi && window_hi <= half_n)) {
      std::cerr << "error: need 0 <= r-min <= r-max <= n/2\n";
      return 1;
    }
  }
  if (window_hi <= 0.0 || window_hi > half_n) {
    std::cerr << "error: need 0 < r <= n/2\n";
    return 1;
  }

  ConfigEcho echo;
  echo.add("command", std::string("sample"));
  echo.add("n", cfg.n);
  if (cfg.has_r || !(cfg.has_r_min || cfg.has_r_max)) {
    echo.add("r", window_hi);
  } else {
    echo.add("r-min", window_lo);
    echo.add("r-max", window_hi);
  }
  echo.add("samples", cfg.samples);
  echo.add("seed", cfg.seed);
  echo.add("format", cfg.format);

  struct Row {
    confpoly::ActionAngle aa;
    double curvature = 0.0;
    double diameter = 0.0;
  };
  std::vector<Row> rows;
  rows.reserve(cfg.samples);

  const long kWindowBudget = 1'000'000;  // proposals per accepted row
  try {
    // The thin shell next to the maximal diameter n/2 has vanishing volume;
    // for even n it is reached directly through the shell sampler instead of
    // rejection from the full confined set.
    bool shell_fast_path = cfg.has_r_min && cfg.n % 2 == 0 &&
                           window_lo >= half_n - 0.25 && window_lo < half_n;
    if (shell_fast_path) {
      confpoly::ShellSampler sampler(cfg.n, half_n - window_lo, cfg.seed);
      for (long i = 0; i < cfg.samples; ++i) {
        long tries = 0;
        for (;;) {
          if (++tries > kWindowBudget) {
            throw confpoly::SamplerExhausted(
                "diameter window rejected every proposal; widen the window");
          }
          confpoly::Polygon p = sampler.next();
          double diam = confpoly::diameter(p);
          if (diam > window_hi) continue;  // only when r-max < n/2
          rows.push_back({sampler.last_coords(), confpoly::total_curvature(p), diam});
          break;
        }
      }
    } else {
      confpoly::ConfinedSampler sampler({cfg.n, window_hi}, cfg.seed);
      for (long i = 0; i < cfg.samples; ++i) {
        long tries = 0;
        for (;;) {
          if (++tries > kWindowBudget) {
            throw confpoly::SamplerExhausted(
                "diameter window rejected every proposal; widen the window");
          }
          confpoly::Polygon p = sampler.next();
          double diam = confpoly::diameter(p);
          if (diam < window_lo) continue;
          rows.push_back({sampler.last_coords(), confpoly::total_curvature(p), diam});
          break;
        }
      }
    }
  } catch (const confpoly::SamplerExhausted& e) {
    std::cerr << "error: sampler exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string body;
  int m = cfg.n - 3;
  if (cfg.format == "csv") {
    body = echo.csv();
    body += "index";
    for (int k = 0; k < m; ++k) body += ",ell" + std::to_string(k + 3);
    for (int k = 0; k < m; ++k) body += ",theta" + std::to_string(k + 3);
    body += ",curvature,diameter,accepted\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      body += std::to_string(i);
      for (int k = 0; k < m; ++k) body += "," + g17(rows[i].aa.ells[k]);
      for (int k = 0; k < m; ++k) body += "," + g17(rows[i].aa.thetas[k]);
      body += "," + g17(rows[i].curvature) + "," + g17(rows[i].diameter) + ",1\n";
    }
  } else {
    ordered_json j;
    j["config"] = echo.json();
    j["rows"] = ordered_json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      ordered_json row;
      row["index"] = i;
      row["ells"] = rows[i].aa.ells;
      row["thetas"] = rows[i].aa.thetas;
      row["curvature"] = rows[i].curvature;
      row["diameter"] = rows[i].diameter;
      row["accepted"] = true;
      j["rows"].push_back(row);
    }
    body = j.dump(2) + "\n";
  }
  return write_output(cfg.out, body);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"confined equilateral polygon toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file");

  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed")->envname("CONFPOLY_SEED");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample budget")
        ->envname("CONFPOLY_SAMPLES");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* curve = app.add_subcommand("curve", "Mean-curvature scan over r");
  curve->add_option("--r-min", cfg.r_min, "Scan start (default 1.0)");
  curve->add_option("--r-max", cfg.r_max, "Scan end (default 2.0)");
  curve->add_option("--steps", cfg.steps, "Grid points (default 21)");
  curve->add_option("--method", cfg.method, "quadrature | mc")
      ->check(CLI::IsMember({"quadrature", "mc"}));
  add_common(curve);

  CLI::App* boundary =
      app.add_subcommand("boundary", "Boundary measure densities at one r");
  boundary->add_option("--r", cfg.r, "Confinement radius in (1,2)");
  boundary->add_option("--grid-size", cfg.grid_size, "Points per arc")
      ->envname("CONFPOLY_GRID_SIZE");
  add_common(boundary);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite,
                     "lemmas | dominance | crofton | alpha | knotproxy | all");
  verify->add_option("--sample-scale", cfg.sample_scale,
                     "Multiplier on Monte Carlo budgets")
      ->envname("CONFPOLY_SAMPLE_SCALE");
  add_common(verify);

  CLI::App* sample = app.add_subcommand("sample", "Draw confined polygons");
  sample->add_option("--n", cfg.n, "Number of edges (>= 4)");
  sample->add_option("--r", cfg.r, "Diameter bound");
  sample->add_option("--r-min", cfg.r_min, "Diameter window lower end");
  sample->add_option("--r-max", cfg.r_max, "Diameter window upper end");
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.has_r = boundary->count("--r") > 0 || sample->count("--r") > 0;
  cfg.has_r_min = curve->count("--r-min") > 0 || sample->count("--r-min") > 0;
  cfg.has_r_max = curve->count("--r-max") > 0 || sample->count("--r-max") > 0;

  try {
    if (curve->parsed()) return run_curve(cfg);
    if (boundary->parsed()) return run_boundary(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (sample->parsed()) return run_sample(cfg);
  } catch (const confpoly::SamplerExhausted& e) {
    std::cerr << "error: sampler exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
