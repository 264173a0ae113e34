#include "conoma/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conoma {

namespace {

struct Magnitudes {
  double g1;  // |h1|
  double g2;  // |h2|
  double signal;        // P|h1|^2
  double interference;  // Q|h2|^2
};

Magnitudes magnitudes(const ScenarioParams& params, const ChannelPair& ch) {
  validate(params);
  validate(ch);
  const double g1 = std::abs(ch.h1);
  const double g2 = std::abs(ch.h2);
  return {g1, g2, params.p_max * g1 * g1, params.q * g2 * g2};
}

SolverTrace base_trace(const ScenarioParams& params, const Magnitudes& m) {
  SolverTrace t;
  t.alpha = m.signal / params.noise;
  t.beta = m.interference / params.noise;
  t.f_at_zero = m.interference / (params.noise + m.signal);
  const double amp = std::sqrt(m.signal) + std::sqrt(m.interference);
  t.f_at_sqrt_p = amp * amp / params.noise;
  return t;
}

SchemeOutcome feasible_outcome(SchemeId id, AllocationResult alloc,
                               SolverTrace trace) {
  SchemeOutcome out;
  out.scheme_id = id;
  out.feasible = true;
  out.rate_ue1 = rate_from_sinr(alloc.sinr_ue1);
  out.allocation = alloc;
  out.trace = std::move(trace);
  return out;
}

SchemeOutcome infeasible_outcome(SchemeId id, SolverTrace trace) {
  SchemeOutcome out;
  out.scheme_id = id;
  out.trace = std::move(trace);
  return out;
}

}  // namespace

double desired_snr(const ScenarioParams& params, const ChannelPair& ch) {
  return magnitudes(params, ch).signal / params.noise;
}

double interference_snr(const ScenarioParams& params, const ChannelPair& ch) {
  return magnitudes(params, ch).interference / params.noise;
}

WeightPhases weight_phases(const ChannelPair& ch, PhaseMode mode) {
  if (std::abs(ch.h1) == 0.0) {
    throw std::domain_error("weight_phases: h1 must be non-zero");
  }
  const double a1 = std::arg(ch.h1);
  const double a2 = std::arg(ch.h2);
  const double offset = mode == PhaseMode::Suppress ? kPi : 0.0;
  return {normalize_phase(-a1), normalize_phase(a2 - a1 + offset)};
}

double combined_interference_sinr(const ScenarioParams& params,
                                  const ChannelPair& ch, double v2) {
  const Magnitudes m = magnitudes(params, ch);
  const double amp = m.g1 * v2 + std::sqrt(m.interference);
  const double residual = params.p_max - v2 * v2;
  return amp * amp / (params.noise + m.g1 * m.g1 * residual);
}

double sic_boundary_quadratic(const ScenarioParams& params,
                              const ChannelPair& ch, double v2) {
  const Magnitudes m = magnitudes(params, ch);
  const double rho = params.rho;
  return (1.0 + rho) * m.g1 * m.g1 * v2 * v2 +
         2.0 * std::sqrt(params.q) * m.g1 * m.g2 * v2 + m.interference -
         rho * params.noise - rho * m.signal;
}

SchemeOutcome solve_scheme1(const ScenarioParams& params, const ChannelPair& ch) {
  const Magnitudes m = magnitudes(params, ch);
  AllocationResult a;
  a.v1 = std::sqrt(params.p_max);
  a.v2 = 0.0;
  a.phase_w1 = weight_phases(ch, PhaseMode::Suppress).w1;
  a.phase_w2 = 0.0;
  a.sinr_ue1 = m.signal / (params.noise + m.interference);
  a.sinr_ue2_at_ue1 = m.interference / (params.noise + m.signal);
  a.branch = Branch::FullDesired;
  return feasible_outcome(SchemeId::S1, a, base_trace(params, m));
}

SchemeOutcome solve_scheme2(const ScenarioParams& params, const ChannelPair& ch) {
  const Magnitudes m = magnitudes(params, ch);
  SolverTrace trace = base_trace(params, m);
  const double beta = *trace.beta;
  const double rho = params.rho;
  // Even P1 = 0 leaves UE2's signal below the decoding target.
  if (beta < rho * (1.0 - kPowerTolerance)) {
    return infeasible_outcome(SchemeId::S2, std::move(trace));
  }

  AllocationResult a;
  double p1 = params.p_max;
  if (*trace.f_at_zero <= rho) {
    p1 = (m.interference / rho - params.noise) / (m.g1 * m.g1);
    p1 = std::clamp(p1, 0.0, params.p_max);
    a.branch = Branch::PowerBackoff;
  } else {
    a.branch = Branch::SicAtFullPower;
  }
  a.v1 = std::sqrt(p1);
  a.v2 = 0.0;
  a.phase_w1 = weight_phases(ch, PhaseMode::Enhance).w1;
  a.phase_w2 = 0.0;
  a.sinr_ue1 = p1 * m.g1 * m.g1 / params.noise;
  a.sinr_ue2_at_ue1 = m.interference / (params.noise + p1 * m.g1 * m.g1);
  return feasible_outcome(SchemeId::S2, a, std::move(trace));
}

SchemeOutcome solve_scheme3(const ScenarioParams& params, const ChannelPair& ch) {
  const Magnitudes m = magnitudes(params, ch);
  SolverTrace trace = base_trace(params, m);
  const double noise = params.noise;
  const double x = noise + m.signal + m.interference;
  const double y = noise + m.interference - m.signal;
  trace.x_val = x;
  trace.y_val = y;

  AllocationResult a;
  const WeightPhases phases = weight_phases(ch, PhaseMode::Suppress);
  a.phase_w1 = phases.w1;
  a.phase_w2 = phases.w2;

  if (m.interference == 0.0) {
    a.v1 = std::sqrt(params.p_max);
    a.v2 = 0.0;
    a.sinr_ue1 = m.signal / noise;
    a.sinr_ue2_at_ue1 = 0.0;
    a.branch = Branch::FullDesired;
    return feasible_outcome(SchemeId::S3, a, std::move(trace));
  }

  // X - sqrt(X^2 - 4ab) rewritten as 4ab / (X + sqrt(X^2 - 4ab)) to avoid
  // cancellation when the interference is weak.
  const double disc = std::max(x * x - 4.0 * m.signal * m.interference, 0.0);
  double v2 = 2.0 * m.g1 * m.g2 * std::sqrt(params.q) * params.p_max /
              (x + std::sqrt(disc));
  v2 = std::min(v2, std::sqrt(params.p_max));
  a.v2 = v2;
  a.v1 = std::sqrt(std::max(params.p_max - v2 * v2, 0.0));

  // (-Y + sqrt(Y^2 + 4 noise P|h1|^2)) / (2 noise), stable for either sign of Y.
  const double root = std::sqrt(y * y + 4.0 * noise * m.signal);
  a.sinr_ue1 = y <= 0.0 ? (root - y) / (2.0 * noise)
                        : 2.0 * m.signal / (y + root);

  const double residual = m.g2 * std::sqrt(params.q) - m.g1 * v2;
  a.sinr_ue2_at_ue1 = residual * residual / (noise + m.g1 * m.g1 * a.v1 * a.v1);
  a.branch = Branch::InteriorRoot;
  return feasible_outcome(SchemeId::S3, a, std::move(trace));
}

SchemeOutcome solve_scheme4(const ScenarioParams& params, const ChannelPair& ch) {
  const Magnitudes m = magnitudes(params, ch);
  SolverTrace trace = base_trace(params, m);
  const double rho = params.rho;
  const double noise = params.noise;
  if (*trace.f_at_sqrt_p < rho * (1.0 - kPowerTolerance)) {
    return infeasible_outcome(SchemeId::S4, std::move(trace));
  }

  AllocationResult a;
  const WeightPhases phases = weight_phases(ch, PhaseMode::Enhance);
  a.phase_w1 = phases.w1;

  if (*trace.f_at_zero >= rho) {
    // Interference alone is decodable: identical to scheme 2 at full power.
    a.v1 = std::sqrt(params.p_max);
    a.v2 = 0.0;
    a.phase_w2 = 0.0;
    a.sinr_ue1 = m.signal / noise;
    a.sinr_ue2_at_ue1 = *trace.f_at_zero;
    a.branch = Branch::SicAtFullPower;
    return feasible_outcome(SchemeId::S4, a, std::move(trace));
  }

  const double a_val = std::max(rho * (1.0 + rho) * (m.signal + noise) -
                                    rho * m.interference,
                                0.0);
  trace.a_val = a_val;
  // (sqrt(A) - sqrt(Q)|h2|) / (|h1|(1+rho)); the numerator difference
  // A - Q|h2|^2 factors as (1+rho)(rho(noise + P|h1|^2) - Q|h2|^2).
  const double sqrt_i = std::sqrt(m.interference);
  double v2 = (rho * (noise + m.signal) - m.interference) /
              (m.g1 * (std::sqrt(a_val) + sqrt_i));
  v2 = std::clamp(v2, 0.0, std::sqrt(params.p_max));
  a.v2 = v2;
  a.v1 = std::sqrt(std::max(params.p_max - v2 * v2, 0.0));
  a.phase_w2 = phases.w2;
  a.sinr_ue1 = m.g1 * m.g1 * (params.p_max - v2 * v2) / noise;
  a.sinr_ue1 = std::max(a.sinr_ue1, 0.0);
  const double amp = m.g1 * v2 + sqrt_i;
  a.sinr_ue2_at_ue1 = amp * amp / (noise + m.g1 * m.g1 * a.v1 * a.v1);
  a.branch = Branch::InteriorRoot;
  return feasible_outcome(SchemeId::S4, a, std::move(trace));
}

std::array<SchemeOutcome, 4> solve_all(const ScenarioParams& params,
                                       const ChannelPair& ch) {
  return {solve_scheme1(params, ch), solve_scheme2(params, ch),
          solve_scheme3(params, ch), solve_scheme4(params, ch)};
}

}  // namespace conoma
