#pragma once

#include <array>

#include "conoma/core.hpp"

namespace conoma {

// Scheme 1: interference treated as noise, BS1 at full power.
SchemeOutcome solve_scheme1(const ScenarioParams& params, const ChannelPair& ch);

// Scheme 2: conventional NOMA. UE1 decodes and cancels UE2's signal, so BS1
// may have to back off until that signal stays decodable.
SchemeOutcome solve_scheme2(const ScenarioParams& params, const ChannelPair& ch);

// Scheme 3: BS1 transmits UE2's symbol in anti-phase with the interference to
// suppress it; no SIC at UE1.
SchemeOutcome solve_scheme3(const ScenarioParams& params, const ChannelPair& ch);

// Scheme 4: cooperative NOMA. BS1 transmits UE2's symbol in phase with the
// interference so the combined signal can be decoded and cancelled by SIC.
SchemeOutcome solve_scheme4(const ScenarioParams& params, const ChannelPair& ch);

// All four outcomes, indexed by scheme number minus one.
std::array<SchemeOutcome, 4> solve_all(const ScenarioParams& params,
                                       const ChannelPair& ch);

enum class PhaseMode { Suppress, Enhance };

struct WeightPhases {
  double w1 = 0.0;
  double w2 = 0.0;
};

// Phases of BS1's weights so that h1*w1 is real positive and h1*w2 is
// anti-aligned (Suppress) or aligned (Enhance) with h2. Throws
// std::domain_error when h1 == 0.
WeightPhases weight_phases(const ChannelPair& ch, PhaseMode mode);

// SINR of UE2's combined signal at UE1 under in-phase superposition with
// v1 = sqrt(P - v2^2). Strictly increasing on [0, sqrt(P)].
double combined_interference_sinr(const ScenarioParams& params,
                                  const ChannelPair& ch, double v2);

// Quadratic whose positive root is the optimal v2 of scheme 4 when
// combined_interference_sinr(0) < rho:
//   (1+rho)|h1|^2 v2^2 + 2 sqrt(Q)|h1||h2| v2 + Q|h2|^2 - rho*noise - P*rho|h1|^2
double sic_boundary_quadratic(const ScenarioParams& params,
                              const ChannelPair& ch, double v2);

// P|h1|^2 / noise and Q|h2|^2 / noise.
double desired_snr(const ScenarioParams& params, const ChannelPair& ch);
double interference_snr(const ScenarioParams& params, const ChannelPair& ch);

}  // namespace conoma
