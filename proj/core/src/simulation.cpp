#include "gammashrink/simulation.hpp"

#include "gammashrink/distributions.hpp"
#include "gammashrink/special_math.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gammashrink {

void ScenarioSpec::validate() const {
  if (id < 1 || id > 6) throw std::invalid_argument("scenario id must be in 1..6");
  if (n < 1) throw std::invalid_argument("scenario needs n >= 1");
  if (!(mu > 0.0) || !(delta > 0.0)) throw std::invalid_argument("mu and delta must be positive");
}

Observations Scenario::observations() const {
  Observations out;
  out.reserve(y.size());
  for (double v : y) out.push_back({v, delta, 1.0});
  return out;
}

Scenario generate_scenario(const ScenarioSpec& spec, RngHandle& rng) {
  spec.validate();
  const double mu = spec.mu;
  // Probability of the null component for each scenario.
  static constexpr double kNull[] = {0.95, 0.90, 0.95, 0.90, 0.90, 0.85};
  const double p_null = kNull[spec.id - 1];

  Scenario sc;
  sc.delta = spec.delta;
  sc.lambda_true.resize(spec.n);
  sc.y.resize(spec.n);
  sc.is_null.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const bool null = rng.uniform() < p_null;
    double lambda = mu;
    switch (spec.id) {
      case 1:
      case 2:
        if (!null) lambda = sample_gamma(20.0 * mu, 2.0, rng);
        break;
      case 3:
        if (!null) lambda = mu * std::abs(sample_student_t(3.0, rng));
        break;
      case 4:
        lambda = null ? sample_gamma(5.0 * mu, 5.0, rng) : mu * std::abs(sample_student_t(1.0, rng));
        break;
      default:
        if (!null) lambda = sample_gamma(10.0 * mu, 2.0, rng);
        break;
    }
    // |t| can be exactly zero only with probability zero, but keep it usable.
    lambda = std::max(lambda, std::numeric_limits<double>::min());
    sc.lambda_true[i] = lambda;
    sc.is_null[i] = null;
    sc.y[i] = sample_gamma(spec.delta, spec.delta / lambda, rng);
  }
  return sc;
}

double mape(std::span<const double> lambda_true, std::span<const double> estimate,
            const std::optional<std::vector<bool>>& mask) {
  if (lambda_true.size() != estimate.size()) throw std::invalid_argument("mape: length mismatch");
  if (mask && mask->size() != lambda_true.size()) {
    throw std::invalid_argument("mape: mask length mismatch");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < lambda_true.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    if (!(lambda_true[i] > 0.0)) throw std::domain_error("mape: true values must be positive");
    sum += std::abs(lambda_true[i] - estimate[i]) / lambda_true[i];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("mape: mask selects no units");
  return sum / static_cast<double>(count);
}

MlEstimate ml_estimate_and_ci(const Observation& obs, double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("level must lie in (0, 1)");
  if (!obs.valid()) throw std::invalid_argument("invalid observation");
  const double tail = 0.5 * (1.0 - level);
  const double x = obs.scaled();
  return {x,
          {x / gamma_quantile(1.0 - tail, obs.delta, obs.delta),
           x / gamma_quantile(tail, obs.delta, obs.delta)}};
}

CoverageLength coverage_and_length(std::span<const Interval> intervals,
                                   std::span<const double> lambda_true) {
  if (intervals.size() != lambda_true.size() || intervals.empty()) {
    throw std::invalid_argument("coverage_and_length: need matching non-empty inputs");
  }
  double covered = 0.0;
  double rel = 0.0;
  double abs_len = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto [lo, hi] = intervals[i];
    covered += (lo <= lambda_true[i] && lambda_true[i] <= hi) ? 1.0 : 0.0;
    rel += (hi - lo) / lambda_true[i];
    abs_len += hi - lo;
  }
  const double n = static_cast<double>(intervals.size());
  return {covered / n, rel / n, abs_len / n};
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SB:
      return "sb";
    case Method::IRB:
      return "irb";
    case Method::GL:
      return "gl";
    case Method::ML:
      return "ml";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "sb" || name == "SB") return Method::SB;
  if (name == "irb" || name == "IRB") return Method::IRB;
  if (name == "gl" || name == "GL") return Method::GL;
  if (name == "ml" || name == "ML") return Method::ML;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view csv) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', start), csv.size());
    std::string_view item = csv.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("no methods given");
  return out;
}

const MethodMetrics& MetricsTable::at(Method m) const {
  for (const auto& mm : methods) {
    if (mm.method == m) return mm;
  }
  throw std::out_of_range("method not in metrics table");
}

namespace {

PriorFamily family_of(Method m) {
  switch (m) {
    case Method::SB:
      return PriorFamily::SB;
    case Method::IRB:
      return PriorFamily::IRB;
    default:
      return PriorFamily::GL;
  }
}

ReplicationRow fit_one(const Scenario& sc, Method method, const McmcConfig& cfg,
                       const ReplicationOptions& opt) {
  ReplicationRow row;
  row.method = method;
  const Observations data = sc.observations();
  const std::size_t n = data.size();
  std::vector<double> estimate(n);
  std::vector<Interval> intervals(n);

  if (method == Method::ML) {
    for (std::size_t i = 0; i < n; ++i) {
      const MlEstimate ml = ml_estimate_and_ci(data[i], opt.level);
      estimate[i] = ml.estimate;
      intervals[i] = ml.interval;
    }
  } else {
    PriorSpec prior = opt.prior;
    prior.family = family_of(method);
    const ChainOutput out = run_chain(data, prior, cfg);
    const auto summary = summarize(out, opt.level);
    for (std::size_t i = 0; i < n; ++i) {
      estimate[i] = summary[i].mean;
      intervals[i] = {summary[i].lower, summary[i].upper};
    }
  }

  row.mape = mape(sc.lambda_true, estimate);
  std::vector<bool> nonnull(n);
  for (std::size_t i = 0; i < n; ++i) nonnull[i] = !sc.is_null[i];
  row.mape_nonnull = std::any_of(nonnull.begin(), nonnull.end(), [](bool b) { return b; })
                         ? mape(sc.lambda_true, estimate, nonnull)
                         : std::numeric_limits<double>::quiet_NaN();
  const CoverageLength cl = coverage_and_length(intervals, sc.lambda_true);
  row.cp = cl.cp;
  row.al = cl.al;
  row.al_abs = cl.al_abs;
  return row;
}

MetricSummary aggregate(const std::vector<double>& xs) {
  MetricSummary s;
  double sum = 0.0;
  for (double x : xs) {
    if (std::isnan(x)) continue;
    sum += x;
    ++s.count;
  }
  if (s.count == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.se = s.mean;
    return s;
  }
  s.mean = sum / s.count;
  double ss = 0.0;
  for (double x : xs) {
    if (!std::isnan(x)) ss += (x - s.mean) * (x - s.mean);
  }
  s.se = s.count > 1 ? std::sqrt(ss / (s.count - 1) / s.count) : 0.0;
  return s;
}

}  // namespace

MetricsTable run_replications(const ScenarioSpec& spec, std::span<const Method> methods, int reps,
                              const McmcConfig& cfg, const ReplicationOptions& opt) {
  spec.validate();
  cfg.validate();
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  if (methods.empty()) throw std::invalid_argument("no methods requested");

  const std::size_t m = methods.size();
  std::vector<ReplicationRow> rows(static_cast<std::size_t>(reps) * m);

  auto work = [&](int rep) {
    RngHandle data_rng(derive_seed(spec.seed, static_cast<std::uint64_t>(rep)));
    const Scenario sc = generate_scenario(spec, data_rng);
    for (std::size_t k = 0; k < m; ++k) {
      McmcConfig c = cfg;
      c.seed = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(rep)),
                           static_cast<std::uint64_t>(methods[k]));
      const auto start = std::chrono::steady_clock::now();
      ReplicationRow row;
      try {
        row = fit_one(sc, methods[k], c, opt);
      } catch (const std::exception& e) {
        row = ReplicationRow{};
        row.method = methods[k];
        row.failed = true;
        row.error = e.what();
      }
      row.rep = rep;
      row.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rows[static_cast<std::size_t>(rep) * m + k] = std::move(row);
    }
  };

  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, reps);
  if (threads == 1) {
    for (int r = 0; r < reps; ++r) work(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int r = next++; r < reps; r = next++) work(r);
      });
    }
  }

  MetricsTable table;
  table.spec = spec;
  table.reps = reps;
  table.level = opt.level;
  table.rows = std::move(rows);
  for (Method method : methods) {
    MethodMetrics mm;
    mm.method = method;
    std::vector<double> mape_v, nonnull_v, cp_v, al_v, al_abs_v;
    for (const auto& row : table.rows) {
      if (row.method != method) continue;
      if (row.failed) {
        ++mm.failed;
        continue;
      }
      ++mm.succeeded;
      mape_v.push_back(row.mape);
      nonnull_v.push_back(row.mape_nonnull);
      cp_v.push_back(row.cp);
      al_v.push_back(row.al);
      al_abs_v.push_back(row.al_abs);
    }
    mm.mape = aggregate(mape_v);
    mm.mape_nonnull = aggregate(nonnull_v);
    mm.cp = aggregate(cp_v);
    mm.al = aggregate(al_v);
    mm.al_abs = aggregate(al_abs_v);
    table.methods.push_back(mm);
  }
  return table;
}

}  // namespace gammashrink
