#pragma once

#include <vector>

#include "conoma/core.hpp"

namespace conoma::oracle {

// Brute-force grid search with iterative zoom. Each round evaluates
// coarse_points per axis over the current box; the next box is
// shrink_factor times as wide and centred on the incumbent.
struct GridSpec {
  int coarse_points = 512;
  int refine_rounds = 4;
  double shrink_factor = 0.1;
};

// Throws std::invalid_argument unless coarse_points >= 64,
// refine_rounds >= 2 and 0 < shrink_factor < 1.
void validate(const GridSpec& grid);

struct RoundStat {
  double box_width = 0.0;  // widest box side, in normalised coordinates
  double best = 0.0;       // incumbent objective after the round
};

struct PowerResult {
  bool feasible = false;
  double p1 = 0.0;
  double sinr = 0.0;
  std::vector<RoundStat> rounds;
};

struct AmplitudeResult {
  bool feasible = false;
  double v1 = 0.0;
  double v2 = 0.0;
  double sinr = 0.0;
  std::vector<RoundStat> rounds;
};

// Conventional NOMA: 1-D search over P1 in [0, P].
PowerResult oracle_s2(const ScenarioParams& params, const ChannelPair& ch,
                      const GridSpec& grid = {});

// Anti-phase superposition: 2-D search over the quarter disc
// v1, v2 >= 0, v1^2 + v2^2 <= P.
AmplitudeResult oracle_s3(const ScenarioParams& params, const ChannelPair& ch,
                          const GridSpec& grid = {});

// In-phase superposition with the SIC decoding constraint.
AmplitudeResult oracle_s4(const ScenarioParams& params, const ChannelPair& ch,
                          const GridSpec& grid = {});

}  // namespace conoma::oracle
