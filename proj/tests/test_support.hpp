#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "conoma/core.hpp"

namespace conoma::testing {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline ChannelPair unit_channel() { return {{1.0, 0.0}, {1.0, 0.0}}; }

struct Scenario {
  ScenarioParams params;
  ChannelPair ch;
};

// Random scenarios with log-uniform alpha, beta and rho, log-uniform gain
// magnitudes and noise, and uniform phases.
class ScenarioGenerator {
 public:
  explicit ScenarioGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * unit();
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  Scenario next(double snr_lo = 0.01, double snr_hi = 1000.0, double rho_lo = 0.1,
                double rho_hi = 100.0) {
    const double alpha = log_uniform(snr_lo, snr_hi);
    const double beta = log_uniform(snr_lo, snr_hi);
    return make(alpha, beta, log_uniform(rho_lo, rho_hi));
  }

  Scenario make(double alpha, double beta, double rho) {
    Scenario s;
    s.params.noise = log_uniform(1e-3, 1e3);
    const double g1 = log_uniform(0.1, 10.0);
    const double g2 = log_uniform(0.1, 10.0);
    s.params.p_max = alpha * s.params.noise / (g1 * g1);
    s.params.q = beta * s.params.noise / (g2 * g2);
    s.params.rho = rho;
    s.ch.h1 = std::polar(g1, uniform(-kPi, kPi));
    s.ch.h2 = std::polar(g2, uniform(-kPi, kPi));
    return s;
  }

 private:
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 engine_;
};

}  // namespace conoma::testing
