#include "conoma/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "conoma/analysis.hpp"
#include "conoma/schemes.hpp"

namespace conoma::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scenario.mode",          "scenario.p_dbm",
      "scenario.p_w",           "scenario.q_dbm",
      "scenario.q_w",           "scenario.noise_dbm",
      "scenario.noise_w",       "scenario.rho",
      "scenario.rho_rate",      "link.h1_gain",
      "link.h1_gain_db",        "link.h2_gain",
      "link.h2_gain_db",        "link.h1_phase",
      "link.h2_phase",          "noise.psd_dbm_hz",
      "geometry.bs_height_m",   "geometry.ue_altitude_m",
      "geometry.dist_bs1_m",    "geometry.dist_bs2_m",
      "geometry.carrier_ghz",   "geometry.bandwidth_hz",
      "geometry.downtilt_deg",  "channel.pl_los_a",
      "channel.pl_los_b",       "channel.pl_los_c",
      "channel.pl_nlos_a",      "channel.pl_nlos_b",
      "channel.pl_nlos_c",      "channel.pl_nlos_d",
      "channel.antenna_peak_dbi", "channel.antenna_theta_3db_deg",
      "channel.antenna_max_atten_db", "channel.los_certain_altitude_m",
      "channel.shadowing",      "channel.shadowing_los_db",
      "channel.shadowing_nlos_db", "sweep.axis",
      "sweep.start",            "sweep.stop",
      "sweep.step",             "sweep.output",
      "threshold.alpha_start",  "threshold.alpha_stop",
      "threshold.alpha_step",   "threshold.beta_start",
      "threshold.beta_stop",    "threshold.beta_step",
      "threshold.output",       "threshold.crossover",
  };
  return keys;
}

// Power given either as `<name>_dbm` or `<name>_w`, returned in dBm.
std::optional<double> power_dbm(const Config& cfg, const std::string& name) {
  const std::string dbm_key = name + "_dbm";
  const std::string w_key = name + "_w";
  const bool has_dbm = cfg.has(dbm_key);
  const bool has_w = cfg.has(w_key);
  if (has_dbm && has_w) {
    throw ConfigError(w_key, 0, "set only one of `" + dbm_key + "` and `" + w_key + "`");
  }
  if (has_dbm) return cfg.require_double(dbm_key);
  if (has_w) {
    const double w = cfg.require_double(w_key);
    if (!(w >= 0.0)) throw ConfigError(w_key, 0, "`" + w_key + "` must be >= 0");
    return watts_to_dbm(w);
  }
  return std::nullopt;
}

double require_power_w(const Config& cfg, const std::string& name) {
  if (auto dbm = power_dbm(cfg, name)) return dbm_to_watts(*dbm);
  throw ConfigError(name + "_dbm", 0,
                    "missing required key `" + name + "_dbm` (or `" + name + "_w`)");
}

double require_rho(const Config& cfg) {
  const bool has_rho = cfg.has("scenario.rho");
  const bool has_rate = cfg.has("scenario.rho_rate");
  if (has_rho && has_rate) {
    throw ConfigError("scenario.rho_rate", 0,
                      "set only one of `scenario.rho` and `scenario.rho_rate`");
  }
  if (has_rho) return cfg.require_double("scenario.rho");
  if (has_rate) return sinr_from_rate(cfg.require_double("scenario.rho_rate"));
  throw ConfigError("scenario.rho", 0,
                    "missing required key `scenario.rho` (or `scenario.rho_rate`)");
}

double link_gain(const Config& cfg, const std::string& name) {
  const std::string lin = "link." + name + "_gain";
  const std::string db = lin + "_db";
  if (cfg.has(lin) && cfg.has(db)) {
    throw ConfigError(db, 0, "set only one of `" + lin + "` and `" + db + "`");
  }
  if (cfg.has(db)) return db_to_linear(cfg.require_double(db));
  if (cfg.has(lin)) return cfg.require_double(lin);
  throw ConfigError(lin, 0, "missing required key `" + lin + "` (or `" + db + "`)");
}

channel::Geometry geometry_from_config(const Config& cfg) {
  channel::Geometry g;
  g.bs_height = cfg.get_double("geometry.bs_height_m", g.bs_height);
  g.ue_altitude = cfg.get_double("geometry.ue_altitude_m", g.ue_altitude);
  g.horizontal_dist_bs1 = cfg.get_double("geometry.dist_bs1_m", g.horizontal_dist_bs1);
  g.horizontal_dist_bs2 = cfg.get_double("geometry.dist_bs2_m", g.horizontal_dist_bs2);
  g.carrier_freq = cfg.get_double("geometry.carrier_ghz", g.carrier_freq);
  g.bandwidth = cfg.get_double("geometry.bandwidth_hz", g.bandwidth);
  g.downtilt = cfg.get_double("geometry.downtilt_deg", g.downtilt);
  return g;
}

channel::ChannelModel model_from_config(const Config& cfg) {
  channel::ChannelModel m;
  m.pl_los_a = cfg.get_double("channel.pl_los_a", m.pl_los_a);
  m.pl_los_b = cfg.get_double("channel.pl_los_b", m.pl_los_b);
  m.pl_los_c = cfg.get_double("channel.pl_los_c", m.pl_los_c);
  m.pl_nlos_a = cfg.get_double("channel.pl_nlos_a", m.pl_nlos_a);
  m.pl_nlos_b = cfg.get_double("channel.pl_nlos_b", m.pl_nlos_b);
  m.pl_nlos_c = cfg.get_double("channel.pl_nlos_c", m.pl_nlos_c);
  m.pl_nlos_d = cfg.get_double("channel.pl_nlos_d", m.pl_nlos_d);
  m.antenna_peak_dbi = cfg.get_double("channel.antenna_peak_dbi", m.antenna_peak_dbi);
  m.antenna_theta_3db =
      cfg.get_double("channel.antenna_theta_3db_deg", m.antenna_theta_3db);
  m.antenna_max_atten_db =
      cfg.get_double("channel.antenna_max_atten_db", m.antenna_max_atten_db);
  m.los_certain_altitude =
      cfg.get_double("channel.los_certain_altitude_m", m.los_certain_altitude);
  m.shadowing = cfg.get_bool("channel.shadowing", m.shadowing);
  m.shadowing_los_db = cfg.get_double("channel.shadowing_los_db", m.shadowing_los_db);
  m.shadowing_nlos_db =
      cfg.get_double("channel.shadowing_nlos_db", m.shadowing_nlos_db);
  return m;
}

// Input validation failures inside the library surface as config errors.
template <typename F>
auto as_config_error(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context, 0, e.what());
  }
}

std::string fmt(double v) { return format_number(v); }

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "-"; }

void write_output(const std::string& path, std::ostream& out,
                  const std::string& content) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file " + path);
  file << content;
  file.close();
  if (!file) throw IoError("failed writing output file " + path);
}

template <typename F>
int run_guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace

ScenarioSpec scenario_from_config(const Config& cfg, std::optional<std::uint64_t> seed) {
  cfg.check_known(known_keys());
  ScenarioSpec spec;
  const std::string mode = cfg.get_string("scenario.mode").value_or("direct");
  if (mode == "geometry") {
    if (!seed) {
      throw ConfigError("seed", 0, "geometry-based runs require an explicit --seed");
    }
    spec.from_geometry = true;
    spec.seed = *seed;
    spec.geometry = geometry_from_config(cfg);
    spec.model = model_from_config(cfg);
    spec.request.p_dbm = power_dbm(cfg, "scenario.p").value_or(20.0);
    spec.request.q_dbm = power_dbm(cfg, "scenario.q").value_or(20.0);
    spec.request.rho = require_rho(cfg);
    spec.request.noise_psd_dbm_hz =
        cfg.get_double("noise.psd_dbm_hz", channel::kDefaultNoisePsdDbmHz);
    if (cfg.has("scenario.noise_dbm") || cfg.has("scenario.noise_w")) {
      throw ConfigError("scenario.noise_dbm", 0,
                        "noise is derived from geometry; use `noise.psd_dbm_hz`");
    }
    std::tie(spec.params, spec.channel) = as_config_error("geometry", [&] {
      return channel::scenario_from_geometry(spec.geometry, spec.request, spec.seed,
                                             spec.model);
    });
  } else if (mode == "direct") {
    spec.params.p_max = require_power_w(cfg, "scenario.p");
    spec.params.q = require_power_w(cfg, "scenario.q");
    spec.params.noise = require_power_w(cfg, "scenario.noise");
    spec.params.rho = require_rho(cfg);
    const double g1 = link_gain(cfg, "h1");
    const double g2 = link_gain(cfg, "h2");
    if (!(g1 > 0.0)) throw ConfigError("link.h1_gain", 0, "|h1|^2 must be positive");
    if (!(g2 >= 0.0)) throw ConfigError("link.h2_gain", 0, "|h2|^2 must be >= 0");
    spec.channel.h1 = std::polar(std::sqrt(g1), cfg.get_double("link.h1_phase", 0.0));
    spec.channel.h2 = std::polar(std::sqrt(g2), cfg.get_double("link.h2_phase", 0.0));
  } else {
    throw ConfigError("scenario.mode", 0,
                      "`scenario.mode` must be `direct` or `geometry`, got `" + mode + "`");
  }
  as_config_error("scenario", [&] {
    validate(spec.params);
    validate(spec.channel);
    return 0;
  });
  return spec;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "rho_rate") return SweepAxis::RhoRate;
  if (name == "q_dbm") return SweepAxis::QDbm;
  if (name == "p_dbm") return SweepAxis::PDbm;
  if (name == "beta") return SweepAxis::Beta;
  throw ConfigError("sweep.axis", 0,
                    "`sweep.axis` must be one of rho_rate, q_dbm, p_dbm, beta; got `" +
                        name + "`");
}

std::vector<double> axis_points(double start, double stop, double step,
                                const std::string& key_prefix) {
  if (!(std::isfinite(start) && std::isfinite(stop) && start <= stop)) {
    throw ConfigError(key_prefix + "start", 0,
                      "`" + key_prefix + "start` must not exceed `" + key_prefix + "stop`");
  }
  if (!(std::isfinite(step) && step > 0.0)) {
    throw ConfigError(key_prefix + "step", 0, "`" + key_prefix + "step` must be positive");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) {
    throw ConfigError(key_prefix + "step", 0,
                      "range of `" + key_prefix + "*` has more than 1e6 steps");
  }
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(start + static_cast<double>(i) * step);
  }
  return points;
}

ScenarioParams apply_axis(const SweepSpec& spec, double value) {
  ScenarioParams p = spec.base;
  switch (spec.axis) {
    case SweepAxis::RhoRate:
      p.rho = sinr_from_rate(value);
      break;
    case SweepAxis::QDbm:
      p.q = dbm_to_watts(value);
      break;
    case SweepAxis::PDbm:
      p.p_max = dbm_to_watts(value);
      break;
    case SweepAxis::Beta: {
      const double g2 = std::norm(spec.channel.h2);
      if (g2 == 0.0) {
        throw std::invalid_argument("beta axis needs a non-zero interference gain");
      }
      p.q = value * p.noise / g2;
      break;
    }
  }
  return p;
}

std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
  if (!(spec.start < spec.stop)) {
    throw ConfigError("sweep.start", 0, "`sweep.start` must be below `sweep.stop`");
  }
  std::vector<SweepRow> rows;
  for (double value : axis_points(spec.start, spec.stop, spec.step, "sweep.")) {
    const ScenarioParams params = apply_axis(spec, value);
    const ComparisonReport report = rank_schemes(params, spec.channel);
    SweepRow row;
    row.axis_value = value;
    for (int i = 0; i < 4; ++i) {
      row.rate[i] = report.rate_per_scheme.at(static_cast<SchemeId>(i + 1));
    }
    const auto s2 = solve_scheme2(params, spec.channel);
    const auto s4 = solve_scheme4(params, spec.channel);
    row.feasible_s2 = s2.feasible;
    row.feasible_s4 = s4.feasible;
    row.best = report.best;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "axis_value,rate_s1,rate_s2,rate_s3,rate_s4,feas_s2,feas_s4,best\n";
  for (const SweepRow& r : rows) {
    out << fmt(r.axis_value) << ',' << fmt(r.rate[0]) << ',' << fmt(r.rate[1]) << ','
        << fmt(r.rate[2]) << ',' << fmt(r.rate[3]) << ',' << (r.feasible_s2 ? 1 : 0)
        << ',' << (r.feasible_s4 ? 1 : 0) << ',' << to_string(r.best) << '\n';
  }
}

SweepSpec sweep_from_config(const Config& cfg, std::optional<std::uint64_t> seed) {
  const ScenarioSpec scenario = scenario_from_config(cfg, seed);
  SweepSpec spec;
  spec.axis = parse_axis(cfg.get_string("sweep.axis").value_or(""));
  spec.start = cfg.require_double("sweep.start");
  spec.stop = cfg.require_double("sweep.stop");
  spec.step = cfg.require_double("sweep.step");
  spec.base = scenario.params;
  spec.channel = scenario.channel;
  spec.output_path = cfg.get_string("sweep.output").value_or("-");
  if (!(spec.start < spec.stop)) {
    throw ConfigError("sweep.start", 0, "`sweep.start` must be below `sweep.stop`");
  }
  axis_points(spec.start, spec.stop, spec.step, "sweep.");
  return spec;
}

int cmd_solve(const Config& cfg, std::optional<std::uint64_t> seed,
              std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const ScenarioSpec spec = scenario_from_config(cfg, seed);
    const ScenarioParams& p = spec.params;
    const auto outcomes = solve_all(p, spec.channel);
    const ComparisonReport report = rank_schemes(p, spec.channel);
    const SolverTrace& t = outcomes[3].trace;

    std::ostringstream s;
    s << "P = " << fmt(p.p_max) << " W  Q = " << fmt(p.q) << " W  noise = "
      << fmt(p.noise) << " W  rho = " << fmt(p.rho) << "\n";
    s << "alpha = " << fmt(report.alpha) << "  beta = " << fmt(report.beta)
      << "  F(0) = " << fmt_opt(t.f_at_zero) << "  F(sqrt P) = " << fmt_opt(t.f_at_sqrt_p)
      << "  rho_max(S4 vs S3) = " << fmt_opt(report.rho_threshold) << "\n\n";
    s << std::left << std::setw(8) << "scheme" << std::setw(12) << "feasible"
      << std::setw(16) << "branch" << std::setw(16) << "v1" << std::setw(16) << "v2"
      << std::setw(16) << "sinr_ue1" << "rate_ue1\n";
    for (const SchemeOutcome& o : outcomes) {
      s << std::setw(8) << to_string(o.scheme_id);
      if (!o.feasible) {
        s << "infeasible\n";
        continue;
      }
      const AllocationResult& a = *o.allocation;
      s << std::setw(12) << "yes" << std::setw(16) << to_string(a.branch)
        << std::setw(16) << fmt(a.v1) << std::setw(16) << fmt(a.v2) << std::setw(16)
        << fmt(a.sinr_ue1) << fmt(o.rate_ue1) << "\n";
    }
    s << "\ntrace:\n";
    const SolverTrace& t3 = outcomes[2].trace;
    s << "  X = " << fmt_opt(t3.x_val) << "  Y = " << fmt_opt(t3.y_val)
      << "  A = " << fmt_opt(t.a_val) << "\n";
    if (report.alpha > 0.0) {
      try {
        const ThresholdTerms terms = threshold_terms(report.alpha, report.beta);
        s << "  W = " << fmt(terms.w) << "  xi = " << fmt(terms.xi) << "\n";
      } catch (const std::domain_error&) {
        s << "  W = -  xi = -\n";
      }
    }
    s << "\nbest = " << to_string(report.best) << " (rate "
      << fmt(report.rate_per_scheme.at(report.best)) << " bps/Hz)\n";
    out << s.str();
    return kExitOk;
  });
}

int cmd_sweep(const Config& cfg, std::optional<std::uint64_t> seed,
              std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const SweepSpec spec = sweep_from_config(cfg, seed);
    const std::vector<SweepRow> rows = as_config_error("sweep", [&] {
      return compute_sweep(spec);
    });
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    write_output(spec.output_path, out, csv.str());
    return kExitOk;
  });
}

int cmd_threshold(const Config& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    cfg.check_known(known_keys());
    const auto alphas =
        axis_points(cfg.require_double("threshold.alpha_start"),
                    cfg.require_double("threshold.alpha_stop"),
                    cfg.require_double("threshold.alpha_step"), "threshold.alpha_");
    const auto betas =
        axis_points(cfg.require_double("threshold.beta_start"),
                    cfg.require_double("threshold.beta_stop"),
                    cfg.require_double("threshold.beta_step"), "threshold.beta_");
    if (alphas.front() <= 0.0) {
      throw ConfigError("threshold.alpha_start", 0, "alpha values must be positive");
    }
    if (betas.front() < 0.0) {
      throw ConfigError("threshold.beta_start", 0, "beta values must be >= 0");
    }
    const bool crossover = cfg.get_bool("threshold.crossover", false);

    std::ostringstream csv;
    csv << "alpha,beta,rho_max,status";
    if (crossover) csv << ",rho_cross";
    csv << '\n';
    for (double alpha : alphas) {
      for (double beta : betas) {
        csv << fmt(alpha) << ',' << fmt(beta) << ',';
        try {
          csv << fmt(s4_vs_s3_threshold(alpha, beta)) << ",ok";
        } catch (const std::domain_error&) {
          csv << ",non_positive_denominator";
        }
        if (crossover) {
          // Unit gains and noise: P = alpha, Q = beta.
          const ScenarioParams params{alpha, beta, 1.0, 1.0};
          const ChannelPair ch{{1.0, 0.0}, {1.0, 0.0}};
          const auto cross = empirical_crossover(params, ch, {1e-6, 1e6});
          csv << ',' << (cross ? fmt(*cross) : "");
        }
        csv << '\n';
      }
    }
    write_output(cfg.get_string("threshold.output").value_or("-"), out, csv.str());
    return kExitOk;
  });
}

int cmd_scenario(const Config& cfg, std::optional<std::uint64_t> seed,
                 std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    Config geo = cfg;
    if (!geo.has("scenario.mode")) geo.set("scenario.mode", "geometry");
    if (!geo.has("scenario.rho") && !geo.has("scenario.rho_rate")) {
      geo.set("scenario.rho", format_number(channel::ScenarioRequest{}.rho));
    }
    const ScenarioSpec spec = scenario_from_config(geo, seed);
    std::ostringstream s;
    if (spec.from_geometry) {
      s << "seed = " << spec.seed << "\n";
      for (auto bs : {channel::BaseStation::Serving, channel::BaseStation::Interfering}) {
        const auto lb = channel::link_budget(spec.geometry, bs, spec.seed, spec.model);
        s << (bs == channel::BaseStation::Serving ? "BS1" : "BS2")
          << ": d3d = " << fmt(lb.distance_3d) << " m  los = " << (lb.los ? 1 : 0)
          << "  path_loss = " << fmt(lb.path_loss_db) << " dB  antenna_gain = "
          << fmt(lb.antenna_gain_db) << " dB  |h|^2 = " << fmt(lb.gain_linear) << "\n";
      }
    }
    const ScenarioParams& p = spec.params;
    s << "p_max = " << fmt(p.p_max) << " W\n";
    s << "q = " << fmt(p.q) << " W\n";
    s << "noise = " << fmt(p.noise) << " W\n";
    s << "rho = " << fmt(p.rho) << "\n";
    s << "h1 = " << fmt(std::abs(spec.channel.h1)) << " @ " << fmt(std::arg(spec.channel.h1))
      << " rad\n";
    s << "h2 = " << fmt(std::abs(spec.channel.h2)) << " @ " << fmt(std::arg(spec.channel.h2))
      << " rad\n";
    s << "alpha = " << fmt(desired_snr(p, spec.channel)) << "\n";
    s << "beta = " << fmt(interference_snr(p, spec.channel)) << "\n";
    out << s.str();
    return kExitOk;
  });
}

}  // namespace conoma::cli
