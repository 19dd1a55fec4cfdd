#include "spdeht/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spdeht/normal.hpp"

namespace spdeht {

unsigned max_workers() {
  if (const char* env = std::getenv("SPDE_HYPOTEST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

// Runs body(r) for r in [0, n). Each call writes only its own output slot, so
// scheduling cannot change results.
void for_each_replicate(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(max_workers(), n);
  if (workers <= 1) {
    for (std::size_t r = 0; r < n; ++r) body(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto run = [&] {
    constexpr std::size_t chunk = 8;
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::size_t end = std::min(begin + chunk, n);
      try {
        for (std::size_t r = begin; r < end; ++r) body(r);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void validate_plan(const McPlan& plan) {
  if (plan.replicates < 1) throw std::invalid_argument("plan needs at least one replicate");
  for (std::size_t i = 1; i < plan.sweep.size(); ++i) {
    if (!(plan.sweep[i] > plan.sweep[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
}

std::vector<double> sweep_or_single(const McPlan& plan) {
  if (!plan.sweep.empty()) return plan.sweep;
  if (plan.test.regime == Regime::LargeT) return {plan.spec.horizon};
  return {static_cast<double>(plan.spec.basis.n_modes())};
}

// Model actually simulated at one sweep point: the sweep value replaces T
// (LargeT) or N (LargeN), and theta replaces the template's drift.
ModelSpec realize(const McPlan& plan, double sweep_value, double theta) {
  if (plan.test.regime == Regime::LargeT) {
    return ModelSpec(theta, plan.spec.sigma, plan.spec.basis, sweep_value,
                     plan.spec.steps_per_unit);
  }
  const auto n = static_cast<long long>(std::llround(sweep_value));
  if (n < 1 || std::abs(sweep_value - static_cast<double>(n)) > 1e-9) {
    throw std::invalid_argument("N sweep values must be positive integers");
  }
  if (static_cast<std::size_t>(n) == plan.spec.basis.n_modes()) {
    return ModelSpec(theta, plan.spec.sigma, plan.spec.basis, plan.spec.horizon,
                     plan.spec.steps_per_unit);
  }
  if (!plan.spec.basis.model) {
    throw std::invalid_argument("sweeping N requires a basis built from a model");
  }
  return ModelSpec(theta, plan.spec.sigma,
                   make_basis(*plan.spec.basis.model, static_cast<std::size_t>(n),
                              plan.spec.basis.beta, plan.spec.basis.gamma),
                   plan.spec.horizon, plan.spec.steps_per_unit);
}

struct RejectionCount {
  std::size_t rejections;
  double freq;
  double se;
};

RejectionCount count_rejections(const McPlan& plan, const ModelSpec& spec) {
  const std::size_t n = plan.replicates;
  std::vector<std::uint8_t> rej(n, 0);
  for_each_replicate(n, [&](std::size_t r) {
    const SufficientStats stats = simulate_stats(spec, replicate_seed(plan.base_seed, r));
    rej[r] = decide(plan.test, stats).reject ? 1 : 0;
  });
  std::size_t count = 0;
  for (std::size_t r = 0; r < n; ++r) count += rej[r];
  const double p = static_cast<double>(count) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {count, p, se};
}

}  // namespace

McReport estimate_error_rate(const McPlan& plan, Under under) {
  validate_plan(plan);
  const double theta =
      under == Under::Null ? plan.test.hyp.theta0 : plan.test.hyp.theta1;
  McReport report;
  for (double value : sweep_or_single(plan)) {
    const ModelSpec spec = realize(plan, value, theta);
    const RejectionCount rc = count_rejections(plan, spec);
    McPoint pt{value, rc.freq, rc.se, {}};
    pt.extra["rejections"] = static_cast<double>(rc.rejections);
    if (under == Under::Alternative) pt.extra["type2"] = 1.0 - rc.freq;
    report.points.push_back(std::move(pt));
  }
  return report;
}

McReport normality_check(const McPlan& plan, Regime regime) {
  validate_plan(plan);
  McReport report;
  for (double value : sweep_or_single(plan)) {
    const ModelSpec spec = realize(plan, value, plan.spec.theta);
    const std::size_t n = plan.replicates;
    std::vector<double> errs(n, 0.0);
    for_each_replicate(n, [&](std::size_t r) {
      const SufficientStats stats = simulate_stats(spec, replicate_seed(plan.base_seed, r));
      errs[r] = estimator_error_standardized(stats, spec.theta, regime);
    });
    double sum = 0.0;
    for (double e : errs) sum += e;
    const double mean = sum / static_cast<double>(n);
    McPoint pt{value, mean, 0.0, {}};
    if (n >= 2) {
      double ss = 0.0;
      for (double e : errs) ss += (e - mean) * (e - mean);
      const double variance = ss / static_cast<double>(n - 1);
      pt.standard_error = std::sqrt(variance / static_cast<double>(n));
      pt.extra["variance"] = variance;
    }
    std::sort(errs.begin(), errs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double cdf = normal_cdf(errs[i]);
      const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - cdf;
      const double lo = cdf - static_cast<double>(i) / static_cast<double>(n);
      ks = std::max({ks, hi, lo});
    }
    pt.extra["ks_distance"] = ks;
    if (n < 100) pt.extra["low_power"] = 1.0;
    report.points.push_back(std::move(pt));
  }
  return report;
}

McReport cgf_check(const SldContext& ctx, const std::vector<double>& eps_list,
                   std::size_t replicates, std::uint64_t seed) {
  if (replicates < 2) throw std::invalid_argument("cgf_check needs at least two replicates");
  const double edge = eps_lower(ctx.hyp);
  for (double eps : eps_list) {
    if (!(eps > edge) || std::abs(eps) > 1.5) {
      throw std::invalid_argument(
          "cgf_check policy: eps must lie in [-1.5, 1.5] and above the domain edge");
    }
  }
  const ModelSpec spec(ctx.hyp.theta1, ctx.sigma, ctx.basis, ctx.horizon, 100);
  const std::size_t n = replicates;
  std::vector<double> lnl(n, 0.0);
  for_each_replicate(n, [&](std::size_t r) {
    const SufficientStats stats = simulate_stats(spec, replicate_seed(seed, r));
    lnl[r] = log_likelihood_ratio(stats, ctx.hyp);
  });
  McReport report;
  for (double eps : eps_list) {
    double shift = eps * lnl[0];
    for (std::size_t r = 1; r < n; ++r) shift = std::max(shift, eps * lnl[r]);
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      w[r] = std::exp(eps * lnl[r] - shift);
      sum += w[r];
    }
    const double wbar = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) ss += (w[r] - wbar) * (w[r] - wbar);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double estimate = shift + std::log(wbar);
    const double se = sd / (wbar * std::sqrt(static_cast<double>(n)));
    McPoint pt{eps, estimate, se, {}};
    const double analytic = cgf_logL(ctx, eps);
    pt.extra["analytic"] = analytic;
    pt.extra["z"] = se > 0.0 ? (estimate - analytic) / se : 0.0;
    report.points.push_back(std::move(pt));
  }
  return report;
}

LogSlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y must have equal length");
  std::vector<double> xs;
  std::vector<double> ls;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0.0) {
      xs.push_back(x[i]);
      ls.push_back(std::log(y[i]));
    }
  }
  if (xs.size() < 2) throw std::invalid_argument("log-slope fit needs at least two positive points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double ml = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    ml += ls[i];
  }
  mx /= n;
  ml /= n;
  double sxx = 0.0;
  double sxl = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxl += (xs[i] - mx) * (ls[i] - ml);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("log-slope fit needs distinct x values");
  const double slope = sxl / sxx;
  return {slope, ml - slope * mx, xs.size()};
}

McReport typeII_slope_check(const McPlan& plan) {
  validate_plan(plan);
  if (plan.test.regime != Regime::LargeT) {
    throw std::invalid_argument("typeII_slope_check runs in the LargeT regime");
  }
  if (plan.sweep.size() < 2) {
    throw std::invalid_argument("typeII_slope_check needs a sweep of at least two horizons");
  }
  const double m_sum = spectral_sum_M(plan.spec.basis);
  const double gap = plan.test.hyp.theta1 - plan.test.hyp.theta0;
  const double target = -gap * gap * m_sum / (4.0 * plan.test.hyp.theta0);

  McReport report;
  std::vector<double> ts;
  std::vector<double> freqs;
  for (double value : plan.sweep) {
    const ModelSpec spec = realize(plan, value, plan.test.hyp.theta1);
    const RejectionCount rc = count_rejections(plan, spec);
    const double type2 = 1.0 - rc.freq;
    McPoint pt{value, type2, rc.se, {}};
    pt.extra["dropped"] = type2 > 0.0 ? 0.0 : 1.0;
    report.points.push_back(std::move(pt));
    ts.push_back(value);
    freqs.push_back(type2);
  }
  const LogSlopeFit fit = fit_log_slope(ts, freqs);
  for (auto& pt : report.points) {
    pt.extra["slope"] = fit.slope;
    pt.extra["slope_target"] = target;
    pt.extra["points_used"] = static_cast<double>(fit.used);
  }
  return report;
}

EtaRule type_ii_eta_rule(const HypothesisPair& hyp) {
  const double gap = hyp.theta1 - hyp.theta0;
  const double th0 = hyp.theta0;
  return [gap, th0](double M, double /*T*/) { return -gap * gap * M / (4.0 * th0); };
}

McReport sld_typeII_check(const McPlan& plan, const EtaRule& eta_star_rule) {
  validate_plan(plan);
  if (plan.test.regime != Regime::LargeT) {
    throw std::invalid_argument("sld_typeII_check runs in the LargeT regime");
  }
  if (plan.sweep.empty()) {
    throw std::invalid_argument("sld_typeII_check needs a horizon sweep");
  }
  const EtaRule rule = eta_star_rule ? eta_star_rule : type_ii_eta_rule(plan.test.hyp);
  const double qa = normal_quantile(plan.test.alpha);
  const double th0 = plan.test.hyp.theta0;
  const double gap2 =
      plan.test.hyp.theta1 * plan.test.hyp.theta1 - th0 * th0;
  McReport report;
  for (double value : plan.sweep) {
    const ModelSpec spec = realize(plan, value, plan.test.hyp.theta1);
    const RejectionCount rc = count_rejections(plan, spec);
    const double type2 = 1.0 - rc.freq;
    const double m_sum = spectral_sum_M(spec.basis);
    const SldContext ctx =
        make_sld_context(plan.test.hyp, spec.basis, spec.sigma, spec.horizon);
    const double eta = rule(m_sum, spec.horizon);
    const double log_a = log_a_T(ctx, eta);
    const double compensator = std::exp(-log_a) * std::sqrt(spec.horizon) *
                               std::exp(gap2 / (2.0 * th0) *
                                        std::sqrt(m_sum * spec.horizon / (2.0 * th0)) * qa);
    McPoint pt{value, type2 * compensator, rc.se * compensator, {}};
    pt.extra["type2"] = type2;
    pt.extra["log_a_T"] = log_a;
    pt.extra["eta"] = eta;
    pt.extra["q_alpha"] = qa;
    pt.extra["dropped"] = type2 > 0.0 ? 0.0 : 1.0;
    report.points.push_back(std::move(pt));
  }
  return report;
}

namespace {

bool same_path_stream(const McPlan& a, const McPlan& b) {
  const auto& ba = a.spec.basis;
  const auto& bb = b.spec.basis;
  return a.replicates == b.replicates && a.base_seed == b.base_seed &&
         a.spec.sigma == b.spec.sigma && a.spec.horizon == b.spec.horizon &&
         a.spec.steps_per_unit == b.spec.steps_per_unit &&
         ba.lambdas == bb.lambdas && ba.beta == bb.beta && ba.gamma == bb.gamma &&
         a.test.regime == b.test.regime &&
         a.test.hyp.theta0 == b.test.hyp.theta0 && a.test.hyp.theta1 == b.test.hyp.theta1;
}

}  // namespace

McReport compare_tests(const McPlan& plan_a, const McPlan& plan_b) {
  validate_plan(plan_a);
  validate_plan(plan_b);
  if (!same_path_stream(plan_a, plan_b)) {
    throw std::invalid_argument("compare_tests requires plans sharing the path stream");
  }
  if (!plan_a.sweep.empty() || !plan_b.sweep.empty()) {
    throw std::invalid_argument("compare_tests runs at a single (T, N) point");
  }

  McReport report;
  const std::size_t n = plan_a.replicates;
  for (Under under : {Under::Null, Under::Alternative}) {
    const double theta =
        under == Under::Null ? plan_a.test.hyp.theta0 : plan_a.test.hyp.theta1;
    const ModelSpec spec(theta, plan_a.spec.sigma, plan_a.spec.basis,
                         plan_a.spec.horizon, plan_a.spec.steps_per_unit);
    std::vector<std::uint8_t> bits(n, 0);
    double log_thr_a = 0.0;
    double log_thr_b = 0.0;
    for_each_replicate(n, [&](std::size_t r) {
      const SufficientStats stats =
          simulate_stats(spec, replicate_seed(plan_a.base_seed, r));
      const TestOutcome oa = decide(plan_a.test, stats);
      const TestOutcome ob = decide(plan_b.test, stats);
      bits[r] = static_cast<std::uint8_t>((oa.reject ? 1 : 0) | (ob.reject ? 2 : 0));
      if (r == 0) {
        log_thr_a = oa.log_threshold_lr;
        log_thr_b = ob.log_threshold_lr;
      }
    });
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    std::size_t n10 = 0;  // A rejects, B does not
    std::size_t n01 = 0;  // B rejects, A does not
    for (std::size_t r = 0; r < n; ++r) {
      const bool a = bits[r] & 1;
      const bool b = bits[r] & 2;
      count_a += a;
      count_b += b;
      n10 += (a && !b);
      n01 += (!a && b);
    }
    const double pa = static_cast<double>(count_a) / static_cast<double>(n);
    const double pb = static_cast<double>(count_b) / static_cast<double>(n);
    const double p10 = static_cast<double>(n10) / static_cast<double>(n);
    const double p01 = static_cast<double>(n01) / static_cast<double>(n);
    const double d = p10 - p01;
    const double se = std::sqrt(std::max(0.0, p10 + p01 - d * d) / static_cast<double>(n));
    // The test with the lower log threshold rejects on a superset of paths.
    const std::size_t violations = log_thr_b <= log_thr_a ? n10 : n01;
    McPoint pt{under == Under::Null ? 0.0 : 1.0, pa - pb, se, {}};
    pt.extra["rate_a"] = pa;
    pt.extra["rate_b"] = pb;
    pt.extra["n10"] = static_cast<double>(n10);
    pt.extra["n01"] = static_cast<double>(n01);
    pt.extra["log_thr_a"] = log_thr_a;
    pt.extra["log_thr_b"] = log_thr_b;
    pt.extra["nested_violations"] = static_cast<double>(violations);
    report.points.push_back(std::move(pt));
  }
  return report;
}

}  // namespace spdeht
