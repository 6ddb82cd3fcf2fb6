#include <benchmark/benchmark.h>

#include "gammashrink/distributions.hpp"
#include "gammashrink/mcmc.hpp"
#include "gammashrink/miller.hpp"
#include "gammashrink/oracle.hpp"
#include "gammashrink/special_math.hpp"

#include <string>
#include <vector>

namespace gs = gammashrink;

namespace {

gs::PriorSpec fixed(gs::PriorFamily family) {
  gs::PriorSpec p;
  p.family = family;
  p.beta = gs::GlobalParam::fixed(1.0);
  p.tau = gs::GlobalParam::fixed(1.0);
  return p;
}

// 46 units at 5 plus four signals, the usual small test panel.
gs::Observations panel() {
  gs::Observations data(46, gs::Observation{5.0, 5.0, 1.0});
  for (double y : {7.0, 15.0, 30.0, 50.0}) data.push_back({y, 5.0, 1.0});
  return data;
}

}  // namespace

static void BM_ShapeKernel(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::log_gamma_shape_kernel(x));
    x = x < 1e3 ? x * 1.7 : 0.37;
  }
}
BENCHMARK(BM_ShapeKernel);

static void BM_Gig(benchmark::State& state) {
  const double p = 0.5 * static_cast<double>(state.range(0));
  gs::RngHandle rng(1, 0);
  const gs::GigParams params{p, 0.3, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(gs::sample_gig(params, rng));
}
BENCHMARK(BM_Gig)->Arg(-3)->Arg(1)->Arg(10);

static void BM_MillerUpdate(benchmark::State& state) {
  gs::RngHandle rng(2, 0);
  const auto target = gs::sb_nu_target(1.0, 1.0, 1.0, 0.5, 2.0);
  double nu = 1.0;
  for (auto _ : state) {
    nu = gs::miller_mh_update(target, nu, {}, false, rng).value;
    benchmark::DoNotOptimize(nu);
  }
}
BENCHMARK(BM_MillerUpdate);

static void BM_Sweeps(benchmark::State& state) {
  const auto family = static_cast<gs::PriorFamily>(state.range(0));
  gs::PriorSpec prior;
  prior.family = family;
  const auto data = panel();
  gs::McmcConfig cfg;
  cfg.burnin = 0;
  cfg.samples = 200;
  for (auto _ : state) benchmark::DoNotOptimize(gs::run_chain(data, prior, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.samples);
  state.SetLabel(std::string(gs::to_string(family)));
}
BENCHMARK(BM_Sweeps)
    ->Arg(static_cast<int>(gs::PriorFamily::SB))
    ->Arg(static_cast<int>(gs::PriorFamily::IRB))
    ->Arg(static_cast<int>(gs::PriorFamily::GL))
    ->Unit(benchmark::kMillisecond);

static void BM_OracleMoments(benchmark::State& state) {
  const auto family = static_cast<gs::PriorFamily>(state.range(0));
  const auto prior = fixed(family);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::posterior_lambda_moments(30.0, 5.0, prior, 1.0));
  }
  state.SetLabel(std::string(gs::to_string(family)));
}
BENCHMARK(BM_OracleMoments)
    ->Arg(static_cast<int>(gs::PriorFamily::SB))
    ->Arg(static_cast<int>(gs::PriorFamily::IRB))
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
