#include "conoma/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conoma/schemes.hpp"

namespace conoma {

ThresholdTerms threshold_terms(double alpha, double beta) {
  if (!(std::isfinite(alpha) && alpha > 0.0) ||
      !(std::isfinite(beta) && beta >= 0.0)) {
    std::ostringstream msg;
    msg << "s4_vs_s3_threshold: need alpha > 0 and beta >= 0, got alpha="
        << alpha << " beta=" << beta;
    throw std::domain_error(msg.str());
  }
  ThresholdTerms t;
  const double u = 1.0 - alpha + beta;
  t.root = std::sqrt(u * u + 4.0 * alpha);
  // (1 + alpha + beta) - root == 4 alpha beta / ((1 + alpha + beta) + root).
  const double gap = 4.0 * alpha * beta / (1.0 + alpha + beta + t.root);
  t.xi = gap / (2.0 * alpha);
  t.w = 2.0 * beta * gap;
  t.numerator = gap + 2.0 * beta + 2.0 * std::sqrt(t.w);
  // (1 + alpha - beta) + root, with the large-beta cancellation removed:
  // root^2 - (beta - alpha - 1)^2 == 4 beta.
  const double shift = beta - alpha - 1.0;
  t.denominator = shift > 0.0 ? 4.0 * beta / (t.root + shift)
                              : (1.0 + alpha - beta) + t.root;
  if (!(std::isfinite(t.denominator) && t.denominator > 0.0) ||
      !std::isfinite(t.numerator)) {
    std::ostringstream msg;
    msg << "s4_vs_s3_threshold: non-positive denominator " << t.denominator
        << " for alpha=" << alpha << " beta=" << beta;
    throw std::domain_error(msg.str());
  }
  t.rho_max = t.numerator / t.denominator;
  return t;
}

double s4_vs_s3_threshold(double alpha, double beta) {
  return threshold_terms(alpha, beta).rho_max;
}

std::optional<double> empirical_crossover(const ScenarioParams& params_template,
                                          const ChannelPair& ch, RhoInterval range,
                                          double tolerance) {
  if (!(range.lo > 0.0 && range.hi > range.lo && std::isfinite(range.hi))) {
    std::ostringstream msg;
    msg << "empirical_crossover: invalid rho range [" << range.lo << ", "
        << range.hi << "]";
    throw std::domain_error(msg.str());
  }
  ScenarioParams params = params_template;
  params.rho = range.lo;
  const double s3 = solve_scheme3(params, ch).allocation->sinr_ue1;
  auto gap = [&](double rho) {
    params.rho = rho;
    const SchemeOutcome s4 = solve_scheme4(params, ch);
    const double s4_sinr = s4.feasible ? s4.allocation->sinr_ue1 : 0.0;
    return s4_sinr - s3;
  };

  double lo = range.lo;
  double hi = range.hi;
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) return std::nullopt;

  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = gap(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ComparisonReport rank_schemes(const ScenarioParams& params, const ChannelPair& ch) {
  ComparisonReport report;
  const auto outcomes = solve_all(params, ch);
  report.alpha = *outcomes[0].trace.alpha;
  report.beta = *outcomes[0].trace.beta;
  try {
    report.rho_threshold = s4_vs_s3_threshold(report.alpha, report.beta);
  } catch (const std::domain_error&) {
    report.rho_threshold.reset();
  }
  double best_rate = -1.0;
  for (const SchemeOutcome& o : outcomes) {
    const double rate = o.feasible ? o.rate_ue1 : 0.0;
    report.rate_per_scheme[o.scheme_id] = rate;
    if (rate > best_rate) {
      best_rate = rate;
      report.best = o.scheme_id;
    }
  }
  return report;
}

}  // namespace conoma
