#include "conoma/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conoma {

namespace {

bool finite_all(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

void validate(const ScenarioParams& params) {
  if (!(std::isfinite(params.p_max) && params.p_max > 0.0)) {
    throw std::invalid_argument("p_max must be positive and finite, got " +
                                std::to_string(params.p_max));
  }
  if (!(std::isfinite(params.q) && params.q >= 0.0)) {
    throw std::invalid_argument("q must be non-negative and finite, got " +
                                std::to_string(params.q));
  }
  if (!(std::isfinite(params.noise) && params.noise > 0.0)) {
    throw std::invalid_argument("noise must be positive and finite, got " +
                                std::to_string(params.noise));
  }
  if (!(std::isfinite(params.rho) && params.rho > 0.0)) {
    throw std::invalid_argument("rho must be positive and finite, got " +
                                std::to_string(params.rho));
  }
}

void validate(const ChannelPair& ch) {
  if (!finite_all(ch.h1) || !finite_all(ch.h2)) {
    throw std::invalid_argument("channel gains must be finite");
  }
  if (std::abs(ch.h1) <= 0.0) {
    throw std::invalid_argument("|h1| must be positive");
  }
}

double dbm_to_watts(double level_dbm) {
  return std::pow(10.0, (level_dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double rate_from_sinr(double sinr) {
  if (!(sinr >= 0.0)) {
    throw std::domain_error("rate_from_sinr: sinr must be >= 0, got " +
                            std::to_string(sinr));
  }
  return std::log2(1.0 + sinr);
}

double sinr_from_rate(double rate) { return std::exp2(rate) - 1.0; }

double normalize_phase(double radians) {
  double r = std::remainder(radians, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::S1: return "S1";
    case SchemeId::S2: return "S2";
    case SchemeId::S3: return "S3";
    case SchemeId::S4: return "S4";
  }
  return "?";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::FullDesired: return "FullDesired";
    case Branch::InteriorRoot: return "InteriorRoot";
    case Branch::SicAtFullPower: return "SicAtFullPower";
    case Branch::PowerBackoff: return "PowerBackoff";
  }
  return "?";
}

}  // namespace conoma
