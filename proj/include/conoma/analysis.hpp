#pragma once

#include <map>
#include <optional>

#include "conoma/core.hpp"

namespace conoma {

// Intermediate terms of the scheme 4 vs scheme 3 threshold.
struct ThresholdTerms {
  double root = 0.0;  // sqrt((1 - alpha + beta)^2 + 4 alpha)
  double w = 0.0;
  double xi = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double rho_max = 0.0;
};

// Largest rho for which scheme 4 reaches at least scheme 3's SINR, given
// alpha = P|h1|^2/noise and beta = Q|h2|^2/noise. Throws std::domain_error
// for alpha <= 0, beta < 0, or a denominator that is not positive and finite.
double s4_vs_s3_threshold(double alpha, double beta);
ThresholdTerms threshold_terms(double alpha, double beta);

struct RhoInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Bisection on sinr_S4(rho) - sinr_S3 over `range` (the template's rho is
// ignored). Returns nullopt when the difference does not change sign.
// Throws std::domain_error for an empty or non-positive range.
std::optional<double> empirical_crossover(const ScenarioParams& params_template,
                                          const ChannelPair& ch, RhoInterval range,
                                          double tolerance = 1e-9);

struct ComparisonReport {
  double alpha = 0.0;
  double beta = 0.0;
  // Unset only when the threshold cannot be evaluated numerically.
  std::optional<double> rho_threshold;
  std::map<SchemeId, double> rate_per_scheme;
  SchemeId best = SchemeId::S1;
};

// Runs all four solvers; infeasible schemes score rate 0 and ties go to the
// lowest scheme index.
ComparisonReport rank_schemes(const ScenarioParams& params, const ChannelPair& ch);

}  // namespace conoma
