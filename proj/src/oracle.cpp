#include "conoma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

// Deliberately independent of the closed-form solvers: objectives and
// constraints are evaluated from the amplitude-level SINR expressions only.

namespace conoma::oracle {

namespace {

struct Box {
  double lo = 0.0;
  double hi = 1.0;
};

// Shrinks `box` around `centre`, keeping it inside [0, 1].
Box zoom(Box box, double centre, double shrink) {
  const double width = (box.hi - box.lo) * shrink;
  double lo = centre - 0.5 * width;
  double hi = centre + 0.5 * width;
  if (lo < 0.0) {
    hi -= lo;
    lo = 0.0;
  }
  if (hi > 1.0) {
    lo -= hi - 1.0;
    hi = 1.0;
  }
  return {std::max(lo, 0.0), hi};
}

double grid_point(Box box, int i, int n) {
  if (i == n - 1) return box.hi;
  return box.lo + (box.hi - box.lo) * static_cast<double>(i) / (n - 1);
}

// (r, t) -> (v1, v2) = r sqrt(P) (cos(t pi/2), sin(t pi/2)): the unit square
// covers the quarter disc, r = 1 traces its arc and only r = 0 collapses.
std::pair<double, double> amplitudes(double r, double t, double sqrt_p) {
  if (t == 1.0) return {0.0, r * sqrt_p};
  const double angle = 0.5 * kPi * t;
  return {r * sqrt_p * std::cos(angle), r * sqrt_p * std::sin(angle)};
}

struct Incumbent {
  bool found = false;
  double r = 0.0;
  double t = 0.0;
  double v2 = 0.0;
  double value = 0.0;
};

// Zoomed polar grid over the quarter disc. A point replaces the incumbent on a
// strict improvement, or on an exact tie with smaller v2. `eval` returns the
// objective at (v1, v2), or nullopt where a constraint is violated.
template <typename Eval>
Incumbent search_2d(const Eval& eval, double sqrt_p, const GridSpec& grid,
                    std::vector<RoundStat>& rounds) {
  Box br;
  Box bt;
  Incumbent best;
  const int n = grid.coarse_points;
  std::vector<double> ray_v1(n);
  std::vector<double> ray_v2(n);
  for (int round = 0; round <= grid.refine_rounds; ++round) {
    if (round > 0) {
      br = zoom(br, best.r, grid.shrink_factor);
      bt = zoom(bt, best.t, grid.shrink_factor);
    }
    for (int j = 0; j < n; ++j) {
      std::tie(ray_v1[j], ray_v2[j]) = amplitudes(1.0, grid_point(bt, j, n), sqrt_p);
    }
    for (int i = 0; i < n; ++i) {
      const double r = grid_point(br, i, n);
      for (int j = 0; j < n; ++j) {
        const double v2 = r * ray_v2[j];
        const std::optional<double> value = eval(r * ray_v1[j], v2);
        if (!value) continue;
        if (!best.found || *value > best.value ||
            (*value == best.value && v2 < best.v2)) {
          best = {true, r, grid_point(bt, j, n), v2, *value};
        }
      }
    }
    if (!best.found) return best;
    rounds.push_back({std::max(br.hi - br.lo, bt.hi - bt.lo), best.value});
  }
  return best;
}

struct Gains {
  double g1;
  double g2;
  double sqrt_q;
  double sqrt_p;
};

Gains gains(const ScenarioParams& params, const ChannelPair& ch,
            const GridSpec& grid) {
  conoma::validate(params);
  conoma::validate(ch);
  validate(grid);
  return {std::abs(ch.h1), std::abs(ch.h2), std::sqrt(params.q),
          std::sqrt(params.p_max)};
}

}  // namespace

void validate(const GridSpec& grid) {
  if (grid.coarse_points < 64) {
    throw std::invalid_argument("GridSpec.coarse_points must be >= 64");
  }
  if (grid.refine_rounds < 2) {
    throw std::invalid_argument("GridSpec.refine_rounds must be >= 2");
  }
  if (!(grid.shrink_factor > 0.0 && grid.shrink_factor < 1.0)) {
    throw std::invalid_argument("GridSpec.shrink_factor must lie in (0, 1)");
  }
}

PowerResult oracle_s2(const ScenarioParams& params, const ChannelPair& ch,
                      const GridSpec& grid) {
  const Gains g = gains(params, ch, grid);
  const double noise = params.noise;
  const double interference = params.q * g.g2 * g.g2;
  const double target = params.rho * (1.0 - kPowerTolerance);

  PowerResult result;
  Box box;
  bool found = false;
  double best_t = 0.0;
  double best = 0.0;
  const int n = grid.coarse_points;
  for (int round = 0; round <= grid.refine_rounds; ++round) {
    if (round > 0) box = zoom(box, best_t, grid.shrink_factor);
    for (int i = 0; i < n; ++i) {
      const double t = grid_point(box, i, n);
      const double p1 = t * params.p_max;
      const double sinr_ue2 = interference / (noise + p1 * g.g1 * g.g1);
      if (sinr_ue2 < target) continue;
      const double sinr_ue1 = p1 * g.g1 * g.g1 / noise;
      if (!found || sinr_ue1 > best) {
        found = true;
        best = sinr_ue1;
        best_t = t;
      }
    }
    if (!found) return result;
    result.rounds.push_back({box.hi - box.lo, best});
  }
  result.feasible = true;
  result.p1 = best_t * params.p_max;
  result.sinr = best;
  return result;
}

AmplitudeResult oracle_s3(const ScenarioParams& params, const ChannelPair& ch,
                          const GridSpec& grid) {
  const Gains g = gains(params, ch, grid);
  const double noise = params.noise;
  auto eval = [&](double v1, double v2) -> std::optional<double> {
    const double residual = g.g2 * g.sqrt_q - g.g1 * v2;
    return g.g1 * g.g1 * v1 * v1 / (noise + residual * residual);
  };
  AmplitudeResult result;
  const Incumbent best = search_2d(eval, g.sqrt_p, grid, result.rounds);
  result.feasible = best.found;
  std::tie(result.v1, result.v2) = amplitudes(best.r, best.t, g.sqrt_p);
  result.sinr = best.value;
  return result;
}

AmplitudeResult oracle_s4(const ScenarioParams& params, const ChannelPair& ch,
                          const GridSpec& grid) {
  const Gains g = gains(params, ch, grid);
  const double noise = params.noise;
  const double target = params.rho * (1.0 - kPowerTolerance);
  auto eval = [&](double v1, double v2) -> std::optional<double> {
    const double desired = g.g1 * g.g1 * v1 * v1;
    const double combined = g.g1 * v2 + g.sqrt_q * g.g2;
    if (combined * combined / (noise + desired) < target) return std::nullopt;
    return desired / noise;
  };
  AmplitudeResult result;
  const Incumbent best = search_2d(eval, g.sqrt_p, grid, result.rounds);
  result.feasible = best.found;
  if (best.found) {
    std::tie(result.v1, result.v2) = amplitudes(best.r, best.t, g.sqrt_p);
    result.sinr = best.value;
  }
  return result;
}

}  // namespace conoma::oracle
