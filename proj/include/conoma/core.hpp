#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace conoma {

// Relative tolerance for power-budget and feasibility-boundary comparisons.
inline constexpr double kPowerTolerance = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

// Transmit budgets, receiver noise and the SIC decoding target, all linear.
struct ScenarioParams {
  double p_max = 0.0;  // BS1 power budget [W]
  double q = 0.0;      // BS2 transmit power [W]
  double noise = 0.0;  // UE1 receiver noise power [W]
  double rho = 0.0;    // minimum SINR for decoding UE2's message
};

// Baseband gains towards UE1: h1 from the serving BS, h2 from the interferer.
struct ChannelPair {
  std::complex<double> h1;
  std::complex<double> h2;
};

// Throws std::invalid_argument when an invariant is violated.
void validate(const ScenarioParams& params);
void validate(const ChannelPair& ch);

enum class SchemeId { S1 = 1, S2 = 2, S3 = 3, S4 = 4 };

// Which case of the closed-form solution produced an allocation.
enum class Branch {
  FullDesired,     // all of BS1's power on x1, no SIC
  InteriorRoot,    // v2 is the positive root of the optimality condition
  SicAtFullPower,  // SIC succeeds with P1 = P and v2 = 0
  PowerBackoff,    // BS1 backs off so UE2's signal stays decodable
};

struct AllocationResult {
  double v1 = 0.0;  // |w1| [sqrt(W)]
  double v2 = 0.0;  // |w2| [sqrt(W)]
  double phase_w1 = 0.0;
  double phase_w2 = 0.0;
  double sinr_ue1 = 0.0;
  double sinr_ue2_at_ue1 = 0.0;
  Branch branch = Branch::FullDesired;
};

// Named intermediates of the closed forms; unset when a solver does not
// compute them.
struct SolverTrace {
  std::optional<double> x_val;
  std::optional<double> y_val;
  std::optional<double> a_val;
  std::optional<double> w_val;
  std::optional<double> xi_val;
  std::optional<double> f_at_zero;
  std::optional<double> f_at_sqrt_p;
  std::optional<double> alpha;  // P|h1|^2 / noise
  std::optional<double> beta;   // Q|h2|^2 / noise
};

struct SchemeOutcome {
  SchemeId scheme_id = SchemeId::S1;
  bool feasible = false;
  std::optional<AllocationResult> allocation;
  double rate_ue1 = 0.0;  // bps/Hz, zero when infeasible
  SolverTrace trace;
};

double dbm_to_watts(double level_dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double ratio);

// Shannon rate log2(1 + sinr). Throws std::domain_error for negative sinr.
double rate_from_sinr(double sinr);

// Inverse of rate_from_sinr: 2^rate - 1.
double sinr_from_rate(double rate);

// Maps an angle onto (-pi, pi].
double normalize_phase(double radians);

std::string_view to_string(SchemeId id);
std::string_view to_string(Branch branch);

}  // namespace conoma
