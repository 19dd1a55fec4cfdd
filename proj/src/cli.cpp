#include "spdeht/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <istream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "spdeht/sld.hpp"

namespace spdeht::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void entry_error(const ConfigEntry& entry, const std::string& message) {
  if (entry.line > 0) {
    throw ConfigError("config line " + std::to_string(entry.line) + ": " + message);
  }
  throw ConfigError(message);
}

double parse_real(const ConfigEntry& entry) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(entry.value.c_str(), &end);
  if (end == entry.value.c_str() || *end != '\0' || errno == ERANGE) {
    entry_error(entry, "field '" + entry.key + "': expected a real number, got '" +
                           entry.value + "'");
  }
  return v;
}

long long parse_integer(const ConfigEntry& entry, long long lo, long long hi) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(entry.value.c_str(), &end, 10);
  if (end == entry.value.c_str() || *end != '\0' || errno == ERANGE || v < lo || v > hi) {
    entry_error(entry, "field '" + entry.key + "': expected an integer in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "], got '" +
                           entry.value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const ConfigEntry& entry) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(entry.value.c_str(), &end, 10);
  if (end == entry.value.c_str() || *end != '\0' || errno == ERANGE) {
    entry_error(entry, "field '" + entry.key + "': expected an unsigned integer, got '" +
                           entry.value + "'");
  }
  return v;
}

std::vector<double> parse_sweep(const ConfigEntry& entry) {
  std::vector<double> values;
  std::string item;
  std::istringstream stream(entry.value);
  while (std::getline(stream, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) entry_error(entry, "field 'sweep': empty element in '" + entry.value + "'");
    values.push_back(parse_real({entry.key, t, entry.line}));
  }
  if (values.empty()) entry_error(entry, "field 'sweep': no values in '" + entry.value + "'");
  return values;
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
  std::vector<ConfigEntry> entries;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    entries.push_back({key, trim(t.substr(eq + 1)), lineno});
  }
  return entries;
}

void apply_entry(RunConfig& cfg, const ConfigEntry& entry) {
  const std::string& k = entry.key;
  if (k == "theta") cfg.theta = parse_real(entry);
  else if (k == "theta0") cfg.theta0 = parse_real(entry);
  else if (k == "theta1") cfg.theta1 = parse_real(entry);
  else if (k == "sigma") cfg.sigma = parse_real(entry);
  else if (k == "beta") cfg.beta = parse_real(entry);
  else if (k == "gamma") cfg.gamma = parse_real(entry);
  else if (k == "dim") cfg.dim = static_cast<int>(parse_integer(entry, 1, 1000000));
  else if (k == "varpi") cfg.varpi = parse_real(entry);
  else if (k == "eigen-model") cfg.eigen_model = entry.value;
  else if (k == "length") cfg.length = parse_real(entry);
  else if (k == "n-modes") cfg.n_modes = static_cast<std::size_t>(parse_integer(entry, 1, 100000000));
  else if (k == "horizon") cfg.horizon = parse_real(entry);
  else if (k == "steps-per-unit") cfg.steps_per_unit = static_cast<int>(parse_integer(entry, 1, 100000000));
  else if (k == "alpha") cfg.alpha = parse_real(entry);
  else if (k == "delta") cfg.delta = parse_real(entry);
  else if (k == "regime") cfg.regime = entry.value;
  else if (k == "reps") cfg.reps = static_cast<std::size_t>(parse_integer(entry, 1, 1000000000));
  else if (k == "seed") cfg.seed = parse_u64(entry);
  else if (k == "sweep") cfg.sweep = parse_sweep(entry);
  else if (k == "out") cfg.out = entry.value;
  else if (k == "format") cfg.format = entry.value;
  else if (k == "threshold-offset") cfg.threshold_offset = parse_real(entry);
  else if (k == "eps-min") cfg.eps_min = parse_real(entry);
  else if (k == "eps-max") cfg.eps_max = parse_real(entry);
  else if (k == "table-points") cfg.table_points = static_cast<std::size_t>(parse_integer(entry, 2, 1000000));
  else entry_error(entry, "unknown key '" + k + "'");
}

std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (cfg.theta) kv.emplace_back("theta", fmt17(*cfg.theta));
  if (cfg.theta0) kv.emplace_back("theta0", fmt17(*cfg.theta0));
  if (cfg.theta1) kv.emplace_back("theta1", fmt17(*cfg.theta1));
  kv.emplace_back("sigma", fmt17(cfg.sigma));
  kv.emplace_back("beta", fmt17(cfg.beta));
  kv.emplace_back("gamma", fmt17(cfg.gamma));
  kv.emplace_back("dim", std::to_string(cfg.dim));
  kv.emplace_back("varpi", fmt17(cfg.varpi));
  kv.emplace_back("eigen-model", cfg.eigen_model);
  kv.emplace_back("length", fmt17(cfg.length));
  if (cfg.n_modes) kv.emplace_back("n-modes", std::to_string(*cfg.n_modes));
  if (cfg.horizon) kv.emplace_back("horizon", fmt17(*cfg.horizon));
  kv.emplace_back("steps-per-unit", std::to_string(cfg.steps_per_unit));
  kv.emplace_back("alpha", fmt17(cfg.alpha));
  kv.emplace_back("delta", fmt17(cfg.delta));
  kv.emplace_back("regime", cfg.regime);
  kv.emplace_back("reps", std::to_string(cfg.reps));
  kv.emplace_back("seed", std::to_string(cfg.seed));
  if (!cfg.sweep.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
      if (i) joined += ',';
      joined += fmt17(cfg.sweep[i]);
    }
    kv.emplace_back("sweep", joined);
  }
  kv.emplace_back("out", cfg.out);
  kv.emplace_back("format", cfg.format);
  kv.emplace_back("threshold-offset", fmt17(cfg.threshold_offset));
  if (cfg.eps_min) kv.emplace_back("eps-min", fmt17(*cfg.eps_min));
  if (cfg.eps_max) kv.emplace_back("eps-max", fmt17(*cfg.eps_max));
  kv.emplace_back("table-points", std::to_string(cfg.table_points));
  return kv;
}

std::vector<ConfigEntry> read_report_header(std::istream& in) {
  std::vector<ConfigEntry> entries;
  std::string line;
  int lineno = 0;
  while (in.peek() == '#' && std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(1));
    const auto eq = t.find('=');
    if (eq == std::string::npos) continue;
    entries.push_back({trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lineno});
  }
  return entries;
}

namespace {

[[noreturn]] void missing_field(const char* name) {
  throw ConfigError(std::string("missing required field '") + name + "'");
}

double require(const std::optional<double>& field, const char* name) {
  if (!field) missing_field(name);
  return *field;
}

void check(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

EigenvalueModel build_model(const RunConfig& cfg) {
  if (cfg.eigen_model == "interval") {
    check(cfg.length > 0.0, "field 'length': must be positive");
    return ExactInterval1D{cfg.length};
  }
  if (cfg.eigen_model == "powerlaw") {
    check(cfg.varpi > 0.0, "field 'varpi': must be positive");
    check(cfg.dim >= 1, "field 'dim': must be a positive integer");
    return PowerLaw{cfg.varpi, cfg.dim};
  }
  throw ConfigError("field 'eigen-model': expected 'interval' or 'powerlaw', got '" +
                    cfg.eigen_model + "'");
}

SpectralBasis build_basis(const RunConfig& cfg) {
  if (!cfg.n_modes) missing_field("n-modes");
  const EigenvalueModel model = build_model(cfg);
  check(cfg.beta > 0.0, "field 'beta': must be positive");
  check(cfg.gamma >= 0.0, "field 'gamma': must be nonnegative");
  check(2.0 * cfg.gamma > static_cast<double>(model_dim(model)),
        "fields 'gamma'/'dim': need 2*gamma > dim");
  return make_basis(model, *cfg.n_modes, cfg.beta, cfg.gamma);
}

ModelSpec build_model_spec(const RunConfig& cfg, double theta) {
  const double horizon = require(cfg.horizon, "horizon");
  check(theta > 0.0, "field 'theta': must be positive");
  check(cfg.sigma != 0.0 && std::isfinite(cfg.sigma), "field 'sigma': must be finite and nonzero");
  check(cfg.steps_per_unit >= 1, "field 'steps-per-unit': must be a positive integer");
  check(horizon > 0.0, "field 'horizon': must be positive");
  const double steps = horizon * cfg.steps_per_unit;
  check(std::abs(steps - std::llround(steps)) <= 1e-6 && std::llround(steps) >= 1,
        "fields 'horizon'/'steps-per-unit': horizon must cover a whole number of steps");
  return ModelSpec(theta, cfg.sigma, build_basis(cfg), horizon, cfg.steps_per_unit);
}

Regime build_regime(const RunConfig& cfg) {
  if (cfg.regime == "large-t") return Regime::LargeT;
  if (cfg.regime == "large-n") return Regime::LargeN;
  throw ConfigError("field 'regime': expected 'large-t' or 'large-n', got '" + cfg.regime + "'");
}

TestSpec build_test_spec(const RunConfig& cfg, double log_threshold_offset) {
  const double theta0 = require(cfg.theta0, "theta0");
  const double theta1 = require(cfg.theta1, "theta1");
  check(theta0 > 0.0, "field 'theta0': must be positive");
  check(theta1 > theta0, "fields 'theta0'/'theta1': need theta1 > theta0");
  check(cfg.alpha > 0.0 && cfg.alpha < 1.0, "field 'alpha': must lie strictly inside (0,1)");
  check(std::isfinite(cfg.delta), "field 'delta': must be finite");
  return TestSpec(build_regime(cfg), cfg.alpha, cfg.delta, HypothesisPair(theta0, theta1),
                  log_threshold_offset);
}

McPlan build_plan(const RunConfig& cfg, double log_threshold_offset) {
  TestSpec test = build_test_spec(cfg, log_threshold_offset);
  const ModelSpec spec = build_model_spec(cfg, test.hyp.theta0);
  check(cfg.reps >= 1, "field 'reps': must be at least 1");
  for (std::size_t i = 1; i < cfg.sweep.size(); ++i) {
    check(cfg.sweep[i] > cfg.sweep[i - 1], "field 'sweep': values must be strictly increasing");
  }
  return McPlan{spec, test, cfg.reps, cfg.seed, cfg.sweep};
}

namespace {

template <class Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return 0;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  fn(file);
  if (!file.good()) throw std::runtime_error("write failed: " + path);
  return 0;
}

std::string check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("field 'format': expected 'csv' or 'json', got '" + cfg.format + "'");
  }
  return cfg.format;
}

void write_config_header(std::ostream& out, const RunConfig& cfg) {
  for (const auto& [k, v] : to_key_values(cfg)) out << "# " << k << "=" << v << "\n";
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : to_key_values(cfg)) j[k] = v;
  return j;
}

void write_report_csv(std::ostream& out, const McReport& report, const RunConfig& cfg,
                      const std::string& param_name) {
  write_config_header(out, cfg);
  std::set<std::string> keys;
  for (const auto& pt : report.points) {
    for (const auto& [k, v] : pt.extra) keys.insert(k);
  }
  out << param_name << ",estimate,standard_error";
  for (const auto& k : keys) out << ',' << k;
  out << "\n";
  for (const auto& pt : report.points) {
    out << fmt17(pt.param) << ',' << fmt17(pt.estimate) << ',' << fmt17(pt.standard_error);
    for (const auto& k : keys) {
      out << ',';
      const auto it = pt.extra.find(k);
      if (it != pt.extra.end()) out << fmt17(it->second);
    }
    out << "\n";
  }
}

void write_report_json(std::ostream& out, const McReport& report, const RunConfig& cfg,
                       const std::string& param_name) {
  nlohmann::json j;
  j["config"] = config_json(cfg);
  j["points"] = nlohmann::json::array();
  for (const auto& pt : report.points) {
    nlohmann::json p;
    p[param_name] = pt.param;
    p["estimate"] = pt.estimate;
    p["standard_error"] = pt.standard_error;
    for (const auto& [k, v] : pt.extra) p[k] = v;
    j["points"].push_back(std::move(p));
  }
  out << j.dump(2) << "\n";
}

int write_report(const RunConfig& cfg, const McReport& report, const std::string& param_name) {
  const std::string fmt = check_format(cfg);
  return with_output(cfg.out, [&](std::ostream& out) {
    if (fmt == "csv") write_report_csv(out, report, cfg, param_name);
    else write_report_json(out, report, cfg, param_name);
  });
}

std::string param_name_for(const RunConfig& cfg) {
  return cfg.regime == "large-n" ? "n_modes" : "horizon";
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  const double theta = require(cfg.theta, "theta");
  const ModelSpec spec = build_model_spec(cfg, theta);
  const ModeTrajectories traj = simulate(spec, cfg.seed);
  return with_output(cfg.out, [&](std::ostream& out) { write_trajectory_csv(traj, out); });
}

int cmd_test(const RunConfig& cfg) {
  const double theta = require(cfg.theta, "theta");
  const TestSpec test = build_test_spec(cfg, cfg.threshold_offset);
  const ModelSpec spec = build_model_spec(cfg, theta);
  const SufficientStats stats = simulate_stats(spec, cfg.seed);
  const TestOutcome outcome = decide(test, stats);
  nlohmann::json j;
  j["statistic"] = outcome.statistic;
  j["threshold"] = outcome.threshold;
  j["reject"] = outcome.reject;
  j["log_lr"] = outcome.log_lr;
  j["log_threshold_lr"] = outcome.log_threshold_lr;
  return with_output(cfg.out, [&](std::ostream& out) { out << j.dump() << "\n"; });
}

int cmd_type1(const RunConfig& cfg) {
  const McPlan plan = build_plan(cfg, cfg.threshold_offset);
  return write_report(cfg, estimate_error_rate(plan, Under::Null), param_name_for(cfg));
}

int cmd_power(const RunConfig& cfg) {
  const McPlan plan = build_plan(cfg, cfg.threshold_offset);
  return write_report(cfg, estimate_error_rate(plan, Under::Alternative), param_name_for(cfg));
}

int cmd_sweep(const RunConfig& cfg) {
  const McPlan plan = build_plan(cfg, cfg.threshold_offset);
  check(!plan.sweep.empty(), "field 'sweep': required for the sweep command");
  const McReport null_report = estimate_error_rate(plan, Under::Null);
  const McReport alt_report = estimate_error_rate(plan, Under::Alternative);
  const std::string fmt = check_format(cfg);
  const std::string pname = param_name_for(cfg);
  return with_output(cfg.out, [&](std::ostream& out) {
    if (fmt == "csv") {
      write_config_header(out, cfg);
      out << pname << ",type1,type1_se,power,power_se,type2\n";
      for (std::size_t i = 0; i < null_report.points.size(); ++i) {
        const auto& n = null_report.points[i];
        const auto& a = alt_report.points[i];
        out << fmt17(n.param) << ',' << fmt17(n.estimate) << ',' << fmt17(n.standard_error)
            << ',' << fmt17(a.estimate) << ',' << fmt17(a.standard_error) << ','
            << fmt17(1.0 - a.estimate) << "\n";
      }
    } else {
      nlohmann::json j;
      j["config"] = config_json(cfg);
      j["points"] = nlohmann::json::array();
      for (std::size_t i = 0; i < null_report.points.size(); ++i) {
        const auto& n = null_report.points[i];
        const auto& a = alt_report.points[i];
        nlohmann::json p;
        p[pname] = n.param;
        p["type1"] = n.estimate;
        p["type1_se"] = n.standard_error;
        p["power"] = a.estimate;
        p["power_se"] = a.standard_error;
        p["type2"] = 1.0 - a.estimate;
        j["points"].push_back(std::move(p));
      }
      out << j.dump(2) << "\n";
    }
  });
}

int cmd_sld_table(const RunConfig& cfg) {
  const double theta0 = require(cfg.theta0, "theta0");
  const double theta1 = require(cfg.theta1, "theta1");
  check(theta0 > 0.0, "field 'theta0': must be positive");
  check(theta1 > theta0, "fields 'theta0'/'theta1': need theta1 > theta0");
  check(cfg.sigma != 0.0 && std::isfinite(cfg.sigma), "field 'sigma': must be finite and nonzero");
  const double horizon = require(cfg.horizon, "horizon");
  check(horizon > 0.0, "field 'horizon': must be positive");
  const HypothesisPair hyp(theta0, theta1);
  const SpectralBasis basis = build_basis(cfg);
  const SldContext ctx = make_sld_context(hyp, basis, cfg.sigma, horizon);

  const double edge = eps_lower(hyp);
  const double eps_max = cfg.eps_max.value_or(2.0);
  const double eps_min = cfg.eps_min.value_or(edge + 0.02 * (eps_max - edge));
  check(eps_min > edge, "field 'eps-min': must exceed the CGF domain edge " + fmt17(edge));
  check(eps_max > eps_min, "fields 'eps-min'/'eps-max': need eps-min < eps-max");
  std::vector<double> eps_grid;
  for (std::size_t i = 0; i < cfg.table_points; ++i) {
    eps_grid.push_back(eps_min + (eps_max - eps_min) * static_cast<double>(i) /
                                     static_cast<double>(cfg.table_points - 1));
  }
  for (double probe : {0.0, -1.0}) {
    if (probe > eps_min && probe < eps_max) eps_grid.push_back(probe);
  }
  std::sort(eps_grid.begin(), eps_grid.end());
  eps_grid.erase(std::unique(eps_grid.begin(), eps_grid.end()), eps_grid.end());

  const double gap = theta1 - theta0;
  const double gap2 = theta1 * theta1 - theta0 * theta0;
  const double eta_lo = -0.98 * gap * ctx.M;
  const double eta_hi = 0.98 * gap * gap * ctx.M / (4.0 * theta1);
  std::vector<double> eta_grid;
  for (std::size_t i = 0; i < cfg.table_points; ++i) {
    eta_grid.push_back(eta_lo + (eta_hi - eta_lo) * static_cast<double>(i) /
                                    static_cast<double>(cfg.table_points - 1));
  }

  const std::string fmt = check_format(cfg);
  const double s2 = cfg.sigma * cfg.sigma;

  auto mode_sums = [&](double eps) {
    double l_sum = 0.0;
    double h_sum = 0.0;
    double r_sum = 0.0;
    for (double lam : basis.lambdas) {
      const double a = -eps * gap * std::pow(lam, 2.0 * basis.beta + 2.0 * basis.gamma) / s2;
      const double b = -eps * gap2 * std::pow(lam, 4.0 * basis.beta + 2.0 * basis.gamma) / (2.0 * s2);
      const auto dec = ou_decomposition(a, b, -theta1 * std::pow(lam, 2.0 * basis.beta),
                                        cfg.sigma * std::pow(lam, -basis.gamma), horizon);
      l_sum += dec.L;
      h_sum += dec.H;
      r_sum += dec.R;
    }
    return std::array<double, 3>{l_sum, h_sum, r_sum};
  };

  return with_output(cfg.out, [&](std::ostream& out) {
    if (fmt == "csv") {
      write_config_header(out, cfg);
      out << "eps,log_m,c,L,H,R\n";
      for (double eps : eps_grid) {
        const auto sums = mode_sums(eps);
        out << fmt17(eps) << ',' << fmt17(cgf_logL(ctx, eps)) << ','
            << fmt17(c_limit(hyp, ctx.M, eps)) << ',' << fmt17(sums[0]) << ','
            << fmt17(sums[1]) << ',' << fmt17(sums[2]) << "\n";
      }
      out << "\n";
      out << "eta,rate,eps_eta,variance\n";
      for (double eta : eta_grid) {
        const SaddlePoint sp = saddle_T(ctx, eta);
        out << fmt17(eta) << ',' << fmt17(rate_I(hyp, ctx.M, eta)) << ','
            << fmt17(sp.epsilon) << ',' << fmt17(sp.variance) << "\n";
      }
    } else {
      nlohmann::json j;
      j["config"] = config_json(cfg);
      j["eps_table"] = nlohmann::json::array();
      for (double eps : eps_grid) {
        const auto sums = mode_sums(eps);
        j["eps_table"].push_back({{"eps", eps},
                                  {"log_m", cgf_logL(ctx, eps)},
                                  {"c", c_limit(hyp, ctx.M, eps)},
                                  {"L", sums[0]},
                                  {"H", sums[1]},
                                  {"R", sums[2]}});
      }
      j["eta_table"] = nlohmann::json::array();
      for (double eta : eta_grid) {
        const SaddlePoint sp = saddle_T(ctx, eta);
        j["eta_table"].push_back({{"eta", eta},
                                  {"rate", rate_I(hyp, ctx.M, eta)},
                                  {"eps_eta", sp.epsilon},
                                  {"variance", sp.variance}});
      }
      out << j.dump(2) << "\n";
    }
  });
}

int cmd_compare(const RunConfig& cfg) {
  const McPlan plan_a = build_plan(cfg, 0.0);
  const McPlan plan_b = build_plan(cfg, cfg.threshold_offset);
  return write_report(cfg, compare_tests(plan_a, plan_b), "under");
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"hypothesis testing workbench for the drift of a stochastic fractional heat equation"};
  app.require_subcommand(1);

  std::vector<ConfigEntry> flag_entries;
  std::string config_path;
  static constexpr const char* kKeys[] = {
      "theta",   "theta0",        "theta1",  "sigma",  "beta",
      "gamma",   "dim",           "varpi",   "eigen-model", "length",
      "n-modes", "horizon",       "steps-per-unit", "alpha", "delta",
      "regime",  "reps",          "seed",    "sweep",  "out",
      "format",  "threshold-offset", "eps-min", "eps-max", "table-points"};

  std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> subs;
  auto attach = [&](const char* name, const char* desc, int (*fn)(const RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, desc);
    for (const char* key : kKeys) {
      const std::string k = key;
      sub->add_option("--" + k)->each([&flag_entries, k](const std::string& v) {
        flag_entries.push_back({k, v, 0});
      });
    }
    sub->add_option("--config", config_path, "flat key=value config file");
    subs.emplace_back(sub, fn);
  };
  attach("simulate", "sample mode trajectories and write them as CSV", cmd_simulate);
  attach("test", "simulate one path and print the test outcome as a JSON line", cmd_test);
  attach("type1", "estimate the Type I error rate by Monte Carlo", cmd_type1);
  attach("power", "estimate power by Monte Carlo", cmd_power);
  attach("sweep", "Type I and power along a sweep of the regime parameter", cmd_sweep);
  attach("sld-table", "tabulate the CGF, rate function, and saddle quantities", cmd_sld_table);
  attach("compare", "paired comparison of the baseline test against an offset-threshold variant",
         cmd_compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw ConfigError("cannot read config file: " + config_path);
      std::ostringstream text;
      text << file.rdbuf();
      for (const auto& entry : parse_config_text(text.str())) apply_entry(cfg, entry);
    }
    for (const auto& entry : flag_entries) apply_entry(cfg, entry);
    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) return fn(cfg);
    }
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace spdeht::cli
