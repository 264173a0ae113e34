#pragma once

#include <cstdint>
#include <utility>

#include "conoma/core.hpp"

namespace conoma::channel {

// UAV-over-macro-cell layout. Defaults reproduce the reference scenario:
// 25 m masts, UAV at 200 m, 0.92 km to the serving BS and 2.88 km to the
// interferer, 2 GHz carrier, one 180 kHz resource block, 10 degree downtilt.
struct Geometry {
  double bs_height = 25.0;              // m
  double ue_altitude = 200.0;           // m
  double horizontal_dist_bs1 = 920.0;   // m
  double horizontal_dist_bs2 = 2880.0;  // m
  double carrier_freq = 2.0;            // GHz
  double bandwidth = 180e3;             // Hz
  double downtilt = 10.0;               // degrees below the horizon
};

inline constexpr double kDefaultNoisePsdDbmHz = -164.0;

// Coefficient table for the simplified urban-macro aerial model.
//
//   LoS:  PL = los_a + los_b log10(d3d) + los_c log10(fc)
//   NLoS: PL = nlos_a + (nlos_b - nlos_c log10(h_ue)) log10(d3d)
//              + nlos_d log10(40 pi fc / 3)
//   Antenna: G = peak - min(12 ((theta - tilt) / theta_3db)^2, max_atten),
//            theta the depression angle from the mast to the UE.
struct ChannelModel {
  double pl_los_a = 28.0;
  double pl_los_b = 22.0;
  double pl_los_c = 20.0;
  double pl_nlos_a = -17.5;
  double pl_nlos_b = 46.0;
  double pl_nlos_c = 7.0;
  double pl_nlos_d = 20.0;
  double antenna_peak_dbi = 8.0;
  double antenna_theta_3db = 10.0;  // degrees
  double antenna_max_atten_db = 30.0;
  double los_certain_altitude = 100.0;  // m
  bool shadowing = false;
  double shadowing_los_db = 4.0;
  double shadowing_nlos_db = 6.0;
};

enum class BaseStation { Serving, Interfering };

struct LinkBudget {
  double distance_3d = 0.0;  // m
  double path_loss_db = 0.0;
  double antenna_gain_db = 0.0;
  bool los = true;
  double gain_linear = 0.0;  // |h|^2 = 10^((antenna_gain_db - path_loss_db)/10)
};

// Throws std::invalid_argument unless every field is positive (downtilt may
// be zero) and ue_altitude >= 1.5 m.
void validate(const Geometry& geom);

// Noise power over the geometry's bandwidth, in watts.
double noise_power(const Geometry& geom,
                   double psd_dbm_hz = kDefaultNoisePsdDbmHz);

double distance_3d(const Geometry& geom, BaseStation bs);
double horizontal_distance(const Geometry& geom, BaseStation bs);

double path_loss_los_db(const ChannelModel& model, double d3d, double fc_ghz);
double path_loss_nlos_db(const ChannelModel& model, double d3d, double fc_ghz,
                         double ue_altitude);

// Depression angle (degrees, positive below the horizon) from the mast top
// to the UE.
double depression_angle_deg(const Geometry& geom, BaseStation bs);
double antenna_gain_db(const ChannelModel& model, double depression_deg,
                       double downtilt_deg);

// Urban-macro LoS probability with the aerial extension: certain above
// `los_certain_altitude`, a distance-decaying law otherwise.
double los_probability(const Geometry& geom, BaseStation bs,
                       const ChannelModel& model = {});

// Random draws come from std::mt19937_64 seeded with `rng_seed`; output k of
// the stream is reserved for a fixed purpose (see README) and converted to
// [0, 1) as (x >> 11) * 2^-53, so results are identical on every platform.
LinkBudget link_budget(const Geometry& geom, BaseStation bs, std::uint64_t rng_seed,
                       const ChannelModel& model = {});

struct ScenarioRequest {
  double p_dbm = 20.0;
  double q_dbm = 20.0;
  double rho = 31.0;
  double noise_psd_dbm_hz = kDefaultNoisePsdDbmHz;
};

std::pair<ScenarioParams, ChannelPair> scenario_from_geometry(
    const Geometry& geom, const ScenarioRequest& request, std::uint64_t seed,
    const ChannelModel& model = {});

}  // namespace conoma::channel
