#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "conoma/channel.hpp"
#include "conoma/cli/config.hpp"
#include "conoma/core.hpp"

namespace conoma::cli {

// A scenario as described by a config: either explicit powers and gains
// (`scenario.mode = direct`, the default) or derived from the UAV geometry
// (`scenario.mode = geometry`, which needs a seed).
struct ScenarioSpec {
  bool from_geometry = false;
  channel::Geometry geometry;
  channel::ChannelModel model;
  channel::ScenarioRequest request;
  std::uint64_t seed = 0;
  ScenarioParams params;
  ChannelPair channel;
};

ScenarioSpec scenario_from_config(const Config& cfg, std::optional<std::uint64_t> seed);

enum class SweepAxis { RhoRate, QDbm, PDbm, Beta };

struct SweepSpec {
  SweepAxis axis = SweepAxis::RhoRate;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  ScenarioParams base;
  ChannelPair channel;
  std::string output_path;
};

struct SweepRow {
  double axis_value = 0.0;
  double rate[4] = {0.0, 0.0, 0.0, 0.0};
  bool feasible_s2 = false;
  bool feasible_s4 = false;
  SchemeId best = SchemeId::S1;
};

SweepAxis parse_axis(const std::string& name);

// start, start + step, ... up to stop (inclusive within a relative 1e-9 of a
// step). Throws ConfigError on an invalid range.
std::vector<double> axis_points(double start, double stop, double step,
                                const std::string& key_prefix);

// Scenario with the swept variable set to `value`.
ScenarioParams apply_axis(const SweepSpec& spec, double value);

std::vector<SweepRow> compute_sweep(const SweepSpec& spec);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

SweepSpec sweep_from_config(const Config& cfg, std::optional<std::uint64_t> seed);

// Subcommand entry points. Each returns a process exit code and reports
// problems on `err`.
int cmd_solve(const Config& cfg, std::optional<std::uint64_t> seed,
              std::ostream& out, std::ostream& err);
int cmd_sweep(const Config& cfg, std::optional<std::uint64_t> seed,
              std::ostream& out, std::ostream& err);
int cmd_threshold(const Config& cfg, std::ostream& out, std::ostream& err);
int cmd_scenario(const Config& cfg, std::optional<std::uint64_t> seed,
                 std::ostream& out, std::ostream& err);

}  // namespace conoma::cli
