#pragma once

#include "gammashrink/mcmc.hpp"
#include "gammashrink/model.hpp"
#include "gammashrink/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gammashrink {

// Six mixtures for the true means (μ = grand mean, δ_μ = point mass at μ):
//   1: 0.95 δ_μ + 0.05 Ga(20μ, 2)     2: 0.90 δ_μ + 0.10 Ga(20μ, 2)
//   3: 0.95 δ_μ + 0.05 μ|t_3|         4: 0.90 Ga(5μ, 5) + 0.10 μ|t_1|
//   5: 0.90 δ_μ + 0.10 Ga(10μ, 2)     6: 0.85 δ_μ + 0.15 Ga(10μ, 2)
// The first component is the null one in every scenario.
struct ScenarioSpec {
  int id = 1;
  int n = 200;
  double mu = 5.0;
  double delta = 5.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Scenario {
  std::vector<double> lambda_true;
  std::vector<double> y;
  std::vector<bool> is_null;
  double delta = 5.0;

  Observations observations() const;
};

Scenario generate_scenario(const ScenarioSpec& spec, RngHandle& rng);

// Mean of |λ - λ̂| / λ over the units selected by mask (all when absent).
double mape(std::span<const double> lambda_true, std::span<const double> estimate,
            const std::optional<std::vector<bool>>& mask = std::nullopt);

struct Interval {
  double lo;
  double hi;
};

struct MlEstimate {
  double estimate;
  Interval interval;
};

// Estimate y/η with the exact pivotal interval from y/(ηλ) ~ Ga(δ, δ).
MlEstimate ml_estimate_and_ci(const Observation& obs, double level);

struct CoverageLength {
  double cp;      // fraction of intervals containing the truth
  double al;      // mean of (hi - lo) / λ, length relative to the truth
  double al_abs;  // mean of hi - lo
};

CoverageLength coverage_and_length(std::span<const Interval> intervals,
                                   std::span<const double> lambda_true);

enum class Method { SB, IRB, GL, ML };
std::string_view to_string(Method m);
Method parse_method(std::string_view name);
std::vector<Method> parse_methods(std::string_view csv);

struct ReplicationRow {
  int rep = 0;
  Method method = Method::ML;
  bool failed = false;
  std::string error;
  double mape = 0.0;
  double mape_nonnull = 0.0;  // NaN when the replication has no non-null unit
  double cp = 0.0;
  double al = 0.0;
  double al_abs = 0.0;
  double seconds = 0.0;
};

struct MetricSummary {
  double mean = 0.0;
  double se = 0.0;  // standard error across replications
  int count = 0;
};

struct MethodMetrics {
  Method method = Method::ML;
  int succeeded = 0;
  int failed = 0;
  MetricSummary mape;
  MetricSummary mape_nonnull;
  MetricSummary cp;
  MetricSummary al;
  MetricSummary al_abs;
};

struct MetricsTable {
  ScenarioSpec spec;
  int reps = 0;
  double level = 0.95;
  std::vector<MethodMetrics> methods;
  std::vector<ReplicationRow> rows;

  const MethodMetrics& at(Method m) const;
};

struct ReplicationOptions {
  double level = 0.95;
  // Local prior hyperparameters and global treatments for SB, IRB and GL.
  PriorSpec prior;
  // Worker threads; 0 uses the hardware concurrency.
  int threads = 0;
};

// Generates `reps` datasets on derived seeds, fits every method, and
// aggregates per-replication metrics. Non-null MAPE is computed per
// replication and then averaged. A failed chain marks its row failed.
MetricsTable run_replications(const ScenarioSpec& spec, std::span<const Method> methods, int reps,
                              const McmcConfig& cfg, const ReplicationOptions& opt = {});

}  // namespace gammashrink
