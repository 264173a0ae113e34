#include "conoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace conoma::channel {

namespace {

// Stream slots of the per-seed generator.
constexpr unsigned kSlotLos = 0;         // +0 serving, +1 interfering
constexpr unsigned kSlotPhase = 2;       // +0 h1, +1 h2
constexpr unsigned kSlotShadowing = 4;   // two per link, Box-Muller

double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

double draw(std::uint64_t seed, unsigned slot) {
  std::mt19937_64 engine(seed);
  engine.discard(slot);
  return to_unit(engine());
}

unsigned link_index(BaseStation bs) { return bs == BaseStation::Serving ? 0 : 1; }

double degrees(double radians) { return radians * 180.0 / kPi; }

}  // namespace

void validate(const Geometry& geom) {
  auto require = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(std::string("geometry: ") + name +
                                  " must be positive");
    }
  };
  require(geom.bs_height, "bs_height");
  require(geom.ue_altitude, "ue_altitude");
  require(geom.horizontal_dist_bs1, "horizontal_dist_bs1");
  require(geom.horizontal_dist_bs2, "horizontal_dist_bs2");
  require(geom.carrier_freq, "carrier_freq");
  require(geom.bandwidth, "bandwidth");
  if (!(std::isfinite(geom.downtilt) && geom.downtilt >= 0.0)) {
    throw std::invalid_argument("geometry: downtilt must be non-negative");
  }
  if (geom.ue_altitude < 1.5) {
    throw std::invalid_argument("geometry: ue_altitude must be >= 1.5 m");
  }
}

double noise_power(const Geometry& geom, double psd_dbm_hz) {
  if (!(geom.bandwidth > 0.0)) {
    throw std::invalid_argument("noise_power: bandwidth must be positive");
  }
  return dbm_to_watts(psd_dbm_hz + 10.0 * std::log10(geom.bandwidth));
}

double horizontal_distance(const Geometry& geom, BaseStation bs) {
  return bs == BaseStation::Serving ? geom.horizontal_dist_bs1
                                    : geom.horizontal_dist_bs2;
}

double distance_3d(const Geometry& geom, BaseStation bs) {
  return std::hypot(horizontal_distance(geom, bs),
                    geom.ue_altitude - geom.bs_height);
}

double path_loss_los_db(const ChannelModel& model, double d3d, double fc_ghz) {
  return model.pl_los_a + model.pl_los_b * std::log10(d3d) +
         model.pl_los_c * std::log10(fc_ghz);
}

double path_loss_nlos_db(const ChannelModel& model, double d3d, double fc_ghz,
                         double ue_altitude) {
  const double slope = model.pl_nlos_b - model.pl_nlos_c * std::log10(ue_altitude);
  return model.pl_nlos_a + slope * std::log10(d3d) +
         model.pl_nlos_d * std::log10(40.0 * kPi * fc_ghz / 3.0);
}

double depression_angle_deg(const Geometry& geom, BaseStation bs) {
  return degrees(std::atan2(geom.bs_height - geom.ue_altitude,
                            horizontal_distance(geom, bs)));
}

double antenna_gain_db(const ChannelModel& model, double depression_deg,
                       double downtilt_deg) {
  const double off = (depression_deg - downtilt_deg) / model.antenna_theta_3db;
  return model.antenna_peak_dbi - std::min(12.0 * off * off, model.antenna_max_atten_db);
}

double los_probability(const Geometry& geom, BaseStation bs,
                       const ChannelModel& model) {
  const double h = geom.ue_altitude;
  const double d = horizontal_distance(geom, bs);
  if (h > model.los_certain_altitude) return 1.0;
  if (h > 22.5) {
    const double d1 = std::max(460.0 * std::log10(h) - 700.0, 18.0);
    const double p1 = 4300.0 * std::log10(h) - 3800.0;
    if (d <= d1) return 1.0;
    return d1 / d + std::exp(-d / p1) * (1.0 - d1 / d);
  }
  // Terrestrial urban macro.
  if (d <= 18.0) return 1.0;
  const double c = h <= 13.0 ? 0.0 : std::pow((h - 13.0) / 10.0, 1.5);
  const double base = 18.0 / d + std::exp(-d / 63.0) * (1.0 - 18.0 / d);
  const double boost = 1.0 + c * 1.25 * std::pow(d / 100.0, 3.0) * std::exp(-d / 150.0);
  return std::min(base * boost, 1.0);
}

LinkBudget link_budget(const Geometry& geom, BaseStation bs, std::uint64_t rng_seed,
                       const ChannelModel& model) {
  validate(geom);
  const unsigned k = link_index(bs);
  LinkBudget lb;
  lb.distance_3d = distance_3d(geom, bs);
  lb.los = draw(rng_seed, kSlotLos + k) < los_probability(geom, bs, model);
  lb.path_loss_db =
      lb.los ? path_loss_los_db(model, lb.distance_3d, geom.carrier_freq)
             : path_loss_nlos_db(model, lb.distance_3d, geom.carrier_freq,
                                 geom.ue_altitude);
  if (model.shadowing) {
    const double u1 = 1.0 - draw(rng_seed, kSlotShadowing + 2 * k);  // (0, 1]
    const double u2 = draw(rng_seed, kSlotShadowing + 2 * k + 1);
    const double normal = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    lb.path_loss_db +=
        normal * (lb.los ? model.shadowing_los_db : model.shadowing_nlos_db);
  }
  lb.antenna_gain_db =
      antenna_gain_db(model, depression_angle_deg(geom, bs), geom.downtilt);
  lb.gain_linear = std::pow(10.0, (lb.antenna_gain_db - lb.path_loss_db) / 10.0);
  return lb;
}

std::pair<ScenarioParams, ChannelPair> scenario_from_geometry(
    const Geometry& geom, const ScenarioRequest& request, std::uint64_t seed,
    const ChannelModel& model) {
  const LinkBudget serving = link_budget(geom, BaseStation::Serving, seed, model);
  const LinkBudget interfering =
      link_budget(geom, BaseStation::Interfering, seed, model);

  ScenarioParams params;
  params.p_max = dbm_to_watts(request.p_dbm);
  params.q = dbm_to_watts(request.q_dbm);
  params.noise = noise_power(geom, request.noise_psd_dbm_hz);
  params.rho = request.rho;

  const double phase1 = normalize_phase(2.0 * kPi * draw(seed, kSlotPhase) - kPi);
  const double phase2 = normalize_phase(2.0 * kPi * draw(seed, kSlotPhase + 1) - kPi);
  ChannelPair ch;
  ch.h1 = std::polar(std::sqrt(serving.gain_linear), phase1);
  ch.h2 = std::polar(std::sqrt(interfering.gain_linear), phase2);
  return {params, ch};
}

}  // namespace conoma::channel
