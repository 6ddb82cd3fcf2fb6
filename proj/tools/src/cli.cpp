#include "gshrink/cli.hpp"

#include <gammashrink/errors.hpp>
#include <gammashrink/mcmc.hpp>
#include <gammashrink/oracle.hpp>
#include <gammashrink/simulation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>

#ifndef GSHRINK_VERSION
#define GSHRINK_VERSION "0.0.0"
#endif

namespace gshrink {

using nlohmann::json;
namespace gs = gammashrink;

namespace {

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw UsageError(what + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Output destination: "-" is the caller's stream, anything else a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  bool is_file() const { return path_ != "-"; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct RunClock {
  std::chrono::system_clock::time_point start = std::chrono::system_clock::now();
};

json make_manifest(const std::string& command, const json& config, std::uint64_t seed,
                   const RunClock& clock) {
  return json{{"command", command},
              {"config", config},
              {"seed", seed},
              {"version", GSHRINK_VERSION},
              {"started_at", iso_time(clock.start)},
              {"finished_at", iso_time(std::chrono::system_clock::now())}};
}

// Writes the manifest next to a CSV output, or to the diagnostic stream when
// the CSV went to stdout.
void emit_manifest(const json& manifest, const Sink& sink, const std::string& manifest_path,
                   std::ostream& err) {
  std::string path = manifest_path;
  if (path.empty() && sink.is_file()) path = sink.path() + ".manifest.json";
  if (path.empty()) {
    err << "manifest: " << manifest.dump() << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write manifest '" + path + "'");
  f << manifest.dump(2) << "\n";
}

struct PriorFlags {
  std::string family = "sb";
  double a = 2.0;
  double b = 0.5;
  std::string beta = "gamma:0.1,0.1";
  std::string tau = "gamma:0.1,0.1";

  void add(CLI::App* app, bool fixed_globals) {
    app->add_option("--prior", family, "Local prior: sb, irb or gl")
        ->check(CLI::IsMember({"sb", "irb", "gl"}));
    app->add_option("--a", a, "Local hyperparameter a");
    app->add_option("--b", b, "Local hyperparameter b");
    if (fixed_globals) {
      beta = "fixed:1";
      tau = "fixed:1";
      app->add_option("--beta", beta, "Fixed grand mean: V or fixed:V");
      app->add_option("--tau", tau, "Fixed global scale: V or fixed:V");
    } else {
      app->add_option("--beta", beta, "Grand mean treatment: fixed:V or gamma:A,B");
      app->add_option("--tau", tau, "Global scale treatment: fixed:V or gamma:A,B");
    }
  }

  gs::PriorSpec resolve(bool fixed_globals) const {
    gs::PriorSpec p;
    p.family = gs::parse_family(family);
    p.a = a;
    p.b = b;
    auto as_fixed = [](const std::string& s) {
      if (s.rfind("fixed:", 0) == 0 || s.rfind("gamma:", 0) == 0) return parse_global(s);
      return gs::GlobalParam::fixed(parse_number(s, "global parameter"));
    };
    p.beta = fixed_globals ? as_fixed(beta) : parse_global(beta);
    p.tau = fixed_globals ? as_fixed(tau) : parse_global(tau);
    if (fixed_globals && (!p.beta.is_fixed() || !p.tau.is_fixed())) {
      throw UsageError("curve commands need fixed --beta and --tau");
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  json to_json() const {
    return json{{"prior", family}, {"a", a}, {"b", b}, {"beta", beta}, {"tau", tau}};
  }
};

struct McmcFlags {
  int burnin = 2000;
  int samples = 3000;
  int thin = 1;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--burnin", burnin, "Burn-in sweeps")->envname("GSHRINK_BURNIN");
    app->add_option("--samples", samples, "Stored draws")->envname("GSHRINK_SAMPLES");
    app->add_option("--thin", thin, "Keep every k-th post-burn-in sweep")->envname("GSHRINK_THIN");
    app->add_option("--seed", seed, "Random seed")->envname("GSHRINK_SEED");
  }

  gs::McmcConfig resolve() const {
    gs::McmcConfig c;
    c.burnin = burnin;
    c.samples = samples;
    c.thin = thin;
    c.seed = seed;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }

  json to_json() const {
    return json{{"burnin", burnin}, {"samples", samples}, {"thin", thin}, {"seed", seed}};
  }
};

json scalar_json(const gs::ScalarSummary& s) {
  return json{{"mean", s.mean}, {"variance", s.variance}, {"lower", s.lower}, {"upper", s.upper}};
}

// ---------------------------------------------------------------- group

struct GroupCmd {
  std::string input;
  std::string output = "-";
  std::string manifest;
  std::string group_column = "group_id";
  std::string value_column = "value";
  std::vector<std::string> keys;

  void add(CLI::App* app) {
    app->add_option("input", input, "CSV of individual records")->required();
    app->add_option("-o,--output", output, "Output CSV (default stdout)");
    app->add_option("--manifest", manifest, "Manifest path");
    app->add_option("--group-column", group_column, "Group identifier column");
    app->add_option("--value-column", value_column, "Positive value column");
    app->add_option("--key", keys, "Additional grouping column (repeatable)");
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunClock clock;
    const CsvTable table = CsvTable::read_file(input);
    const auto groups = group_records(table, group_column, value_column, keys);
    Sink sink(output, out);
    std::ostream& os = sink.get();
    os << csv_escape(group_column);
    for (const auto& k : keys) os << "," << csv_escape(k);
    os << ",y,delta,eta\n";
    for (const auto& g : groups) {
      for (std::size_t i = 0; i < g.keys.size(); ++i) {
        os << (i ? "," : "") << csv_escape(g.keys[i]);
      }
      os << "," << format_double(g.mean) << "," << g.count << ",1\n";
    }
    const json config{{"input", input},
                      {"group_column", group_column},
                      {"value_column", value_column},
                      {"keys", keys}};
    emit_manifest(make_manifest("group", config, 0, clock), sink, manifest, err);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- fit

struct FitCmd {
  std::string data;
  std::string output = "-";
  std::string draws_out;
  double level = 0.95;
  int chains = 1;
  PriorFlags prior;
  McmcFlags mcmc;

  void add(CLI::App* app) {
    app->add_option("data", data, "CSV with columns y, delta and optional eta")->required();
    app->add_option("-o,--output", output, "JSON summary (default stdout)");
    app->add_option("--draws-out", draws_out, "Write stored draws as CSV");
    app->add_option("--level", level, "Credible level");
    app->add_option("--chains", chains, "Independent chains")->check(CLI::PositiveNumber);
    prior.add(app, false);
    mcmc.add(app);
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunClock clock;
    if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0, 1)");
    const gs::PriorSpec spec = prior.resolve(false);
    if (spec.family == gs::PriorFamily::IRB && !(spec.b < 1.0)) {
      throw UsageError("the IRB sampler needs --b < 1");
    }
    const gs::McmcConfig cfg = mcmc.resolve();
    const gs::Observations obs = read_observations(CsvTable::read_file(data));

    const gs::ChainOutput chain = gs::run_chains(obs, spec, cfg, chains);
    const auto units = gs::summarize(chain, level);

    json unit_rows = json::array();
    for (std::size_t i = 0; i < units.size(); ++i) {
      const auto& u = units[i];
      json row{{"index", i},
               {"y", obs[i].y},
               {"delta", obs[i].delta},
               {"eta", obs[i].eta},
               {"mean", u.mean},
               {"variance", u.variance},
               {"lower", u.lower},
               {"upper", u.upper},
               {"kappa_mean", u.kappa_mean},
               {"mcse", finite_or_null(u.mcse)},
               {"ess", chain.ess_lambda[i]}};
      if (!chain.acceptance_rate.empty()) row["acceptance_rate"] = chain.acceptance_rate[i];
      unit_rows.push_back(std::move(row));
    }

    json diagnostics{{"fallback_proposals", chain.fallback_proposals},
                     {"warnings", chain.warnings},
                     {"tau_acceptance_rate", finite_or_null(chain.tau_acceptance_rate)},
                     {"ess_beta", chain.ess_beta},
                     {"ess_tau", chain.ess_tau}};
    if (!chain.acceptance_rate.empty()) {
      const auto [lo, hi] =
          std::minmax_element(chain.acceptance_rate.begin(), chain.acceptance_rate.end());
      diagnostics["acceptance_rate_min"] = *lo;
      diagnostics["acceptance_rate_max"] = *hi;
    }
    for (const auto& w : chain.warnings) err << "warning: " << w << "\n";

    json config = prior.to_json();
    config.update(mcmc.to_json());
    config["data"] = data;
    config["level"] = level;
    config["chains"] = chains;
    if (!draws_out.empty()) config["draws_out"] = draws_out;

    if (!draws_out.empty()) {
      std::ofstream d(draws_out);
      if (!d) throw UsageError("cannot open '" + draws_out + "'");
      d << "draw,unit,lambda,kappa,beta,tau\n";
      for (std::size_t k = 0; k < chain.draws; ++k) {
        for (std::size_t i = 0; i < chain.n; ++i) {
          d << k << "," << i << "," << format_double(chain.lambda[k * chain.n + i]) << ","
            << format_double(chain.kappa[k * chain.n + i]) << "," << format_double(chain.beta[k])
            << "," << format_double(chain.tau[k]) << "\n";
        }
      }
    }

    json doc{{"units", unit_rows},
             {"global",
              {{"beta", scalar_json(gs::summarize_scalar(chain.beta, level))},
               {"tau", scalar_json(gs::summarize_scalar(chain.tau, level))}}},
             {"diagnostics", diagnostics},
             {"manifest", make_manifest("fit", config, cfg.seed, clock)}};
    Sink sink(output, out);
    sink.get() << doc.dump(2) << "\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- simulate

struct SimulateCmd {
  int scenario = 1;
  int n = 200;
  double mu = 5.0;
  double delta = 5.0;
  int reps = 50;
  std::string methods = "sb,irb,gl,ml";
  double level = 0.95;
  int threads = 0;
  std::string output = "-";
  std::string reps_out;
  std::string json_out;
  std::string manifest;
  PriorFlags prior;
  McmcFlags mcmc;

  void add(CLI::App* app) {
    app->add_option("--scenario", scenario, "Scenario 1..6");
    app->add_option("--n", n, "Units per dataset")->check(CLI::PositiveNumber);
    app->add_option("--mu", mu, "Grand mean");
    app->add_option("--delta", delta, "Observation shape");
    app->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
    app->add_option("--methods", methods, "Comma-separated subset of sb,irb,gl,ml");
    app->add_option("--level", level, "Interval level");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")
        ->envname("GSHRINK_THREADS");
    app->add_option("-o,--output", output, "Aggregate metrics CSV (default stdout)");
    app->add_option("--reps-out", reps_out, "Per-replication metrics CSV");
    app->add_option("--json", json_out, "Metrics table as JSON");
    app->add_option("--manifest", manifest, "Manifest path");
    prior.add(app, false);
    mcmc.burnin = 1000;
    mcmc.samples = 2000;
    mcmc.add(app);
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunClock clock;
    if (scenario < 1 || scenario > 6) throw UsageError("--scenario must be in 1..6");
    if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0, 1)");
    if (!(mu > 0.0) || !(delta > 0.0)) throw UsageError("--mu and --delta must be positive");
    std::vector<gs::Method> ms;
    try {
      ms = gs::parse_methods(methods);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    gs::ReplicationOptions opt;
    opt.level = level;
    opt.prior = prior.resolve(false);
    opt.threads = threads;
    if (std::find(ms.begin(), ms.end(), gs::Method::IRB) != ms.end() && !(opt.prior.b < 1.0)) {
      throw UsageError("the IRB sampler needs --b < 1");
    }
    const gs::McmcConfig cfg = mcmc.resolve();
    const gs::ScenarioSpec spec{scenario, n, mu, delta, cfg.seed};
    const gs::MetricsTable table = gs::run_replications(spec, ms, reps, cfg, opt);

    Sink sink(output, out);
    std::ostream& os = sink.get();
    os << "method,reps,succeeded,failed,mape,mape_se,mape_nonnull,mape_nonnull_se,cp,cp_se,al,"
          "al_se,al_abs,al_abs_se\n";
    json methods_json = json::array();
    for (const auto& m : table.methods) {
      os << gs::to_string(m.method) << "," << table.reps << "," << m.succeeded << "," << m.failed;
      for (const auto* s : {&m.mape, &m.mape_nonnull, &m.cp, &m.al, &m.al_abs}) {
        os << "," << format_double(s->mean) << "," << format_double(s->se);
      }
      os << "\n";
      auto sj = [](const gs::MetricSummary& s) {
        return json{{"mean", finite_or_null(s.mean)}, {"se", finite_or_null(s.se)},
                    {"count", s.count}};
      };
      methods_json.push_back(json{{"method", gs::to_string(m.method)},
                                  {"succeeded", m.succeeded},
                                  {"failed", m.failed},
                                  {"mape", sj(m.mape)},
                                  {"mape_nonnull", sj(m.mape_nonnull)},
                                  {"cp", sj(m.cp)},
                                  {"al", sj(m.al)},
                                  {"al_abs", sj(m.al_abs)}});
    }
    for (const auto& row : table.rows) {
      if (row.failed) {
        err << "replication " << row.rep << " (" << gs::to_string(row.method)
            << ") failed: " << row.error << "\n";
      }
    }

    if (!reps_out.empty()) {
      std::ofstream r(reps_out);
      if (!r) throw UsageError("cannot open '" + reps_out + "'");
      r << "rep,method,failed,mape,mape_nonnull,cp,al,al_abs,seconds,error\n";
      for (const auto& row : table.rows) {
        r << row.rep << "," << gs::to_string(row.method) << "," << (row.failed ? 1 : 0) << ","
          << format_double(row.mape) << "," << format_double(row.mape_nonnull) << ","
          << format_double(row.cp) << "," << format_double(row.al) << ","
          << format_double(row.al_abs) << "," << format_double(row.seconds) << ","
          << csv_escape(row.error) << "\n";
      }
    }

    json config = prior.to_json();
    config.update(mcmc.to_json());
    config.update(json{{"scenario", scenario},
                       {"n", n},
                       {"mu", mu},
                       {"delta", delta},
                       {"reps", reps},
                       {"methods", methods},
                       {"level", level},
                       {"threads", threads}});
    const json man = make_manifest("simulate", config, cfg.seed, clock);
    if (!json_out.empty()) {
      std::ofstream j(json_out);
      if (!j) throw UsageError("cannot open '" + json_out + "'");
      j << json{{"methods", methods_json}, {"reps", reps}, {"manifest", man}}.dump(2) << "\n";
    }
    emit_manifest(man, sink, manifest, err);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- curves

struct PriorCurveCmd {
  std::string grid = "1e-4:1e4:81";
  std::string output = "-";
  std::string manifest;
  PriorFlags prior;

  void add(CLI::App* app) {
    app->add_option("--grid", grid, "Log-spaced lambda grid MIN:MAX:POINTS");
    app->add_option("-o,--output", output, "Output CSV (default stdout)");
    app->add_option("--manifest", manifest, "Manifest path");
    prior.add(app, true);
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunClock clock;
    const gs::PriorSpec spec = prior.resolve(true);
    const Grid g = parse_grid(grid, true);
    Sink sink(output, out);
    std::ostream& os = sink.get();
    os << "lambda,density,status\n";
    int failures = 0;
    for (double lambda : g.values()) {
      try {
        os << format_double(lambda) << ","
           << format_double(gs::marginal_prior_density(lambda, spec)) << ",ok\n";
      } catch (const gs::NumericError& e) {
        ++failures;
        os << format_double(lambda) << ",," << csv_escape(std::string("failed: ") + e.what())
           << "\n";
      }
    }
    if (failures > 0) err << "warning: " << failures << " grid points failed\n";
    json config = prior.to_json();
    config["grid"] = grid;
    emit_manifest(make_manifest("prior-curve", config, 0, clock), sink, manifest, err);
    return kExitOk;
  }
};

struct PosteriorCurveCmd {
  std::string grid = "0.1:50:100";
  bool log_grid = false;
  double delta = 5.0;
  std::string output = "-";
  std::string manifest;
  PriorFlags prior;

  void add(CLI::App* app) {
    app->add_option("--y-grid", grid, "Observation grid MIN:MAX:POINTS");
    app->add_flag("--log-grid", log_grid, "Space the y grid logarithmically");
    app->add_option("--delta", delta, "Observation shape");
    app->add_option("-o,--output", output, "Output CSV (default stdout)");
    app->add_option("--manifest", manifest, "Manifest path");
    prior.add(app, true);
  }

  int run(std::ostream& out, std::ostream& err) const {
    RunClock clock;
    if (!(delta > 0.0)) throw UsageError("--delta must be positive");
    const gs::PriorSpec spec = prior.resolve(true);
    const Grid g = parse_grid(grid, log_grid);
    Sink sink(output, out);
    std::ostream& os = sink.get();
    os << "y,mean,variance,kappa_mean,status\n";
    int failures = 0;
    for (double y : g.values()) {
      try {
        const auto m = gs::posterior_lambda_moments(y, delta, spec, spec.beta.value);
        os << format_double(y) << "," << format_double(m.mean) << ","
           << (m.variance_available() ? format_double(m.variance) : "") << ","
           << format_double(m.kappa_mean) << ",ok\n";
      } catch (const gs::NumericError& e) {
        ++failures;
        os << format_double(y) << ",,,," << csv_escape(std::string("failed: ") + e.what()) << "\n";
      }
    }
    if (failures > 0) err << "warning: " << failures << " grid points failed\n";
    json config = prior.to_json();
    config.update(json{{"y_grid", grid}, {"log_grid", log_grid}, {"delta", delta}});
    emit_manifest(make_manifest("posterior-curve", config, 0, clock), sink, manifest, err);
    return kExitOk;
  }
};

}  // namespace

std::vector<GroupRow> group_records(const CsvTable& table, const std::string& group_column,
                                    const std::string& value_column,
                                    const std::vector<std::string>& extra_keys) {
  std::vector<int> key_cols{table.require_column(group_column)};
  for (const auto& k : extra_keys) key_cols.push_back(table.require_column(k));
  const int value_col = table.require_column(value_column);
  if (table.rows() == 0) throw DataError("no records");

  std::vector<GroupRow> groups;
  std::vector<double> sums;
  std::map<std::vector<std::string>, std::size_t> index;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const double v = table.number(r, value_col);
    if (!(v > 0.0)) {
      throw DataError("value " + table.row(r)[static_cast<std::size_t>(value_col)] +
                          " is not positive",
                      table.line_of(r));
    }
    std::vector<std::string> key;
    for (int c : key_cols) key.push_back(table.row(r)[static_cast<std::size_t>(c)]);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      groups.push_back({key, 0.0, 0});
      sums.push_back(0.0);
    }
    sums[it->second] += v;
    ++groups[it->second].count;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    groups[g].mean = sums[g] / static_cast<double>(groups[g].count);
  }
  return groups;
}

gs::Observations read_observations(const CsvTable& table) {
  const int yc = table.require_column("y");
  const int dc = table.require_column("delta");
  const int ec = table.column("eta");
  if (table.rows() == 0) throw DataError("no observations");
  gs::Observations obs;
  obs.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    gs::Observation o{table.number(r, yc), table.number(r, dc),
                      ec >= 0 ? table.number(r, ec) : 1.0};
    if (!o.valid()) {
      throw DataError("y, delta and eta must be positive", table.line_of(r));
    }
    obs.push_back(o);
  }
  return obs;
}

gs::GlobalParam parse_global(std::string_view text) {
  if (text.rfind("fixed:", 0) == 0) {
    const double v = parse_number(text.substr(6), "fixed value");
    if (!(v > 0.0)) throw UsageError("fixed value must be positive");
    return gs::GlobalParam::fixed(v);
  }
  if (text.rfind("gamma:", 0) == 0) {
    const auto rest = text.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw UsageError("expected gamma:SHAPE,RATE");
    const double shape = parse_number(rest.substr(0, comma), "gamma shape");
    const double rate = parse_number(rest.substr(comma + 1), "gamma rate");
    if (!(shape > 0.0) || !(rate > 0.0)) throw UsageError("gamma hyperparameters must be positive");
    return gs::GlobalParam::gamma_prior(shape, rate);
  }
  throw UsageError("expected fixed:V or gamma:A,B, got '" + std::string(text) + "'");
}

std::vector<double> Grid::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[static_cast<std::size_t>(i)] =
        log_scale ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                  : min + f * (max - min);
  }
  if (points > 1) out.back() = max;
  return out;
}

Grid parse_grid(std::string_view text, bool log_scale) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw UsageError("expected grid MIN:MAX:POINTS");
  Grid g;
  g.min = parse_number(text.substr(0, c1), "grid min");
  g.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid max");
  const double pts = parse_number(text.substr(c2 + 1), "grid points");
  if (pts < 1 || pts != std::floor(pts)) throw UsageError("grid points must be a positive integer");
  g.points = static_cast<int>(pts);
  g.log_scale = log_scale;
  if (!(g.min > 0.0) || !(g.max >= g.min)) throw UsageError("grid needs 0 < MIN <= MAX");
  return g;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse Bayesian estimation of gamma means", "gshrink"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GSHRINK_VERSION);

  GroupCmd group;
  FitCmd fit;
  SimulateCmd simulate;
  PriorCurveCmd prior_curve;
  PosteriorCurveCmd posterior_curve;
  auto* group_app = app.add_subcommand("group", "Aggregate individual records into observations");
  auto* fit_app = app.add_subcommand("fit", "Fit the hierarchical model by MCMC");
  auto* sim_app = app.add_subcommand("simulate", "Run a replicated simulation study");
  auto* prior_app = app.add_subcommand("prior-curve", "Marginal prior density of lambda");
  auto* post_app = app.add_subcommand("posterior-curve", "Posterior moments as functions of y");
  group.add(group_app);
  fit.add(fit_app);
  simulate.add(sim_app);
  prior_curve.add(prior_app);
  posterior_curve.add(post_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*group_app) return group.run(out, err);
    if (*fit_app) return fit.run(out, err);
    if (*sim_app) return simulate.run(out, err);
    if (*prior_app) return prior_curve.run(out, err);
    if (*post_app) return posterior_curve.run(out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const gs::ChainError& e) {
    err << "chain error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const gs::NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace gshrink
