#include <cmath>
#include <stdexcept>

#include "conoma/schemes.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace conoma {
namespace {

using testing::rel_diff;
using testing::ScenarioGenerator;
using testing::unit_channel;

constexpr double kEps = 1e-9;

ScenarioParams params(double p, double q, double noise, double rho) {
  return {p, q, noise, rho};
}

double sinr_or_zero(const SchemeOutcome& o) {
  return o.feasible ? o.allocation->sinr_ue1 : 0.0;
}

// Reference values below were frozen from a 30-digit brute-force search
// (dense scan plus ternary search over v2 for scheme 3, bisection on the
// decoding constraint for scheme 4).

TEST(Scheme1Test, TreatsInterferenceAsNoise) {
  const auto ch = unit_channel();
  EXPECT_DOUBLE_EQ(solve_scheme1(params(10, 4, 1, 1), ch).allocation->sinr_ue1, 2.0);
  EXPECT_DOUBLE_EQ(solve_scheme1(params(10, 0, 1, 1), ch).allocation->sinr_ue1, 10.0);
  const auto o = solve_scheme1(params(10, 8, 1, 1), ch);
  EXPECT_NEAR(o.allocation->sinr_ue1, 10.0 / 9.0, 1e-15);
  EXPECT_TRUE(o.feasible);
  EXPECT_DOUBLE_EQ(o.allocation->v1, std::sqrt(10.0));
  EXPECT_EQ(o.allocation->v2, 0.0);
  EXPECT_EQ(o.allocation->branch, Branch::FullDesired);
  EXPECT_DOUBLE_EQ(o.rate_ue1, std::log2(1.0 + 10.0 / 9.0));
}

TEST(Scheme2Test, PowerBackoff) {
  const auto o = solve_scheme2(params(10, 8, 1, 1), unit_channel());
  ASSERT_TRUE(o.feasible);
  EXPECT_EQ(o.allocation->branch, Branch::PowerBackoff);
  EXPECT_NEAR(o.allocation->v1 * o.allocation->v1, 7.0, 1e-12);
  EXPECT_NEAR(o.allocation->sinr_ue1, 7.0, 1e-12);
  EXPECT_GE(o.allocation->sinr_ue2_at_ue1, 1.0 - kEps);
}

TEST(Scheme2Test, FeasibilityBoundaryGivesZeroPower) {
  const auto o = solve_scheme2(params(10, 1, 1, 1), unit_channel());
  ASSERT_TRUE(o.feasible);
  EXPECT_EQ(o.allocation->v1, 0.0);
  EXPECT_EQ(o.allocation->sinr_ue1, 0.0);
  EXPECT_EQ(o.rate_ue1, 0.0);
}

TEST(Scheme2Test, Infeasible) {
  const auto o = solve_scheme2(params(10, 0.5, 1, 1), unit_channel());
  EXPECT_FALSE(o.feasible);
  EXPECT_FALSE(o.allocation.has_value());
  EXPECT_EQ(o.rate_ue1, 0.0);
}

TEST(Scheme2Test, FullPowerWhenInterferenceIsStrong) {
  // F(0) = 100 / 11 > rho.
  const auto o = solve_scheme2(params(10, 100, 1, 2), unit_channel());
  ASSERT_TRUE(o.feasible);
  EXPECT_EQ(o.allocation->branch, Branch::SicAtFullPower);
  EXPECT_DOUBLE_EQ(o.allocation->sinr_ue1, 10.0);
}

TEST(Scheme3Test, WorkedExample) {
  const auto o = solve_scheme3(params(10, 1, 1, 1), unit_channel());
  ASSERT_TRUE(o.feasible);
  const AllocationResult& a = *o.allocation;
  EXPECT_NEAR(a.v2, 0.900980486407214756, 1e-12);
  EXPECT_NEAR(a.v1, 3.03121001633232578, 1e-12);
  EXPECT_NEAR(a.sinr_ue1, 9.09901951359278483, 1e-12);
  EXPECT_DOUBLE_EQ(*o.trace.x_val, 12.0);
  EXPECT_DOUBLE_EQ(*o.trace.y_val, -8.0);
  // The objective evaluated at the returned amplitudes agrees.
  const double residual = 1.0 - a.v2;
  EXPECT_NEAR(a.v1 * a.v1 / (1.0 + residual * residual), a.sinr_ue1, 1e-12);
  EXPECT_NEAR(a.v1 * a.v1 + a.v2 * a.v2, 10.0, 1e-12);
  EXPECT_NEAR(a.phase_w2, kPi, 1e-15);
}

TEST(Scheme3Test, ZeroInterferenceDegenerate) {
  const auto o = solve_scheme3(params(10, 0, 1, 1), unit_channel());
  EXPECT_EQ(o.allocation->v2, 0.0);
  EXPECT_DOUBLE_EQ(o.allocation->sinr_ue1, 10.0);
  EXPECT_EQ(o.allocation->branch, Branch::FullDesired);
  const auto dead = solve_scheme3(params(10, 5, 1, 1), ChannelPair{{1, 0}, {0, 0}});
  EXPECT_EQ(dead.allocation->v2, 0.0);
  EXPECT_DOUBLE_EQ(dead.allocation->sinr_ue1, 10.0);
}

TEST(Scheme3Test, StrongInterference) {
  const auto o = solve_scheme3(params(10, 8, 1, 1), unit_channel());
  EXPECT_DOUBLE_EQ(*o.trace.y_val, -1.0);
  EXPECT_NEAR(o.allocation->sinr_ue1, (1.0 + std::sqrt(41.0)) / 2.0, 1e-12);
  EXPECT_NEAR(o.allocation->v2, 2.22683406836892349, 1e-12);
}

TEST(Scheme4Test, InteriorRootSmallInterference) {
  const ScenarioParams p = params(10, 1, 1, 1);
  const auto o = solve_scheme4(p, unit_channel());
  ASSERT_TRUE(o.feasible);
  const AllocationResult& a = *o.allocation;
  EXPECT_EQ(a.branch, Branch::InteriorRoot);
  EXPECT_DOUBLE_EQ(*o.trace.a_val, 21.0);
  EXPECT_NEAR(a.v2, (std::sqrt(21.0) - 1.0) / 2.0, 1e-14);
  EXPECT_NEAR(a.v2, 1.79128784747792000, 1e-12);
  EXPECT_NEAR(a.sinr_ue1, 6.79128784747792000, 1e-12);
  EXPECT_NEAR(a.sinr_ue2_at_ue1, 1.0, 1e-12);
  EXPECT_NEAR(sic_boundary_quadratic(p, unit_channel(), a.v2), 0.0, 1e-12);
  EXPECT_NEAR(a.v1 * a.v1 + a.v2 * a.v2, 10.0, 1e-12);
  EXPECT_NEAR(a.phase_w2, 0.0, 1e-15);
}

TEST(Scheme4Test, InteriorRootStrongInterference) {
  const auto o = solve_scheme4(params(10, 8, 1, 1), unit_channel());
  ASSERT_TRUE(o.feasible);
  EXPECT_DOUBLE_EQ(*o.trace.a_val, 14.0);
  EXPECT_NEAR(o.allocation->v2, 0.456615131013875644, 1e-12);
  EXPECT_NEAR(o.allocation->sinr_ue1, 9.79150262212918118, 1e-12);
}

TEST(Scheme4Test, Infeasible) {
  const auto o = solve_scheme4(params(1, 1, 1, 5), unit_channel());
  EXPECT_FALSE(o.feasible);
  EXPECT_EQ(o.rate_ue1, 0.0);
  EXPECT_DOUBLE_EQ(*o.trace.f_at_sqrt_p, 4.0);
}

TEST(Scheme4Test, ExactFeasibilityBoundaryIsFeasible) {
  // (sqrt(P) + sqrt(Q))^2 / noise == rho == 4.
  const auto o = solve_scheme4(params(1, 1, 1, 4), unit_channel());
  ASSERT_TRUE(o.feasible);
  EXPECT_NEAR(o.allocation->v2, 1.0, 1e-12);
  EXPECT_NEAR(o.allocation->sinr_ue1, 0.0, 1e-12);
}

TEST(Scheme4Test, ReducesToScheme2WhenInterferenceDecodable) {
  const ScenarioParams p = params(10, 100, 1, 2);
  const auto o4 = solve_scheme4(p, unit_channel());
  const auto o2 = solve_scheme2(p, unit_channel());
  EXPECT_EQ(o4.allocation->branch, Branch::SicAtFullPower);
  EXPECT_EQ(o4.allocation->v2, 0.0);
  EXPECT_DOUBLE_EQ(o4.allocation->sinr_ue1, o2.allocation->sinr_ue1);
}

TEST(WeightPhasesTest, Examples) {
  const ChannelPair zero{{1, 0}, {1, 0}};
  EXPECT_DOUBLE_EQ(weight_phases(zero, PhaseMode::Enhance).w2, 0.0);
  EXPECT_DOUBLE_EQ(weight_phases(zero, PhaseMode::Suppress).w2, kPi);
  const ChannelPair ch{std::polar(1.0, kPi / 4), std::polar(2.0, -kPi / 2)};
  EXPECT_NEAR(weight_phases(ch, PhaseMode::Enhance).w2, -3 * kPi / 4, 1e-15);
  EXPECT_NEAR(weight_phases(ch, PhaseMode::Enhance).w1, -kPi / 4, 1e-15);
  EXPECT_NEAR(weight_phases(ch, PhaseMode::Suppress).w2, kPi / 4, 1e-15);
  EXPECT_THROW(weight_phases(ChannelPair{{0, 0}, {1, 0}}, PhaseMode::Enhance),
               std::domain_error);
}

TEST(WeightPhasesTest, PhasesAlignReceivedSignals) {
  ScenarioGenerator gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.next();
    const auto enh = weight_phases(s.ch, PhaseMode::Enhance);
    const auto sup = weight_phases(s.ch, PhaseMode::Suppress);
    const auto w1 = std::polar(1.0, enh.w1);
    EXPECT_NEAR(std::arg(s.ch.h1 * w1), 0.0, 1e-12);
    const auto plus = s.ch.h1 * std::polar(1.0, enh.w2);
    const auto minus = s.ch.h1 * std::polar(1.0, sup.w2);
    EXPECT_NEAR(std::cos(std::arg(plus) - std::arg(s.ch.h2)), 1.0, 1e-12);
    EXPECT_NEAR(std::cos(std::arg(minus) - std::arg(s.ch.h2)), -1.0, 1e-12);
  }
}

class SchemePropertyTest : public ::testing::Test {
 protected:
  ScenarioGenerator gen_{20240601};
};

TEST_F(SchemePropertyTest, Scheme3DominatesScheme1) {
  for (int i = 0; i < 2000; ++i) {
    const auto s = gen_.next();
    const double s1 = solve_scheme1(s.params, s.ch).allocation->sinr_ue1;
    const double s3 = solve_scheme3(s.params, s.ch).allocation->sinr_ue1;
    EXPECT_GE(s3, s1 * (1 - kEps)) << i;
  }
}

TEST_F(SchemePropertyTest, Scheme4DominatesScheme2) {
  for (int i = 0; i < 2000; ++i) {
    const auto s = gen_.next();
    const auto o2 = solve_scheme2(s.params, s.ch);
    if (!o2.feasible) continue;
    const auto o4 = solve_scheme4(s.params, s.ch);
    ASSERT_TRUE(o4.feasible) << i;
    EXPECT_GE(o4.allocation->sinr_ue1, o2.allocation->sinr_ue1 * (1 - kEps)) << i;
  }
}

TEST_F(SchemePropertyTest, InteriorRootMakesBothConstraintsTight) {
  int interior = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto s = gen_.next();
    const auto o = solve_scheme4(s.params, s.ch);
    if (!o.feasible || o.allocation->branch != Branch::InteriorRoot) continue;
    ++interior;
    const AllocationResult& a = *o.allocation;
    const double p = s.params.p_max;
    EXPECT_NEAR(a.v1 * a.v1 + a.v2 * a.v2, p, kPowerTolerance * p) << i;
    EXPECT_NEAR(a.sinr_ue2_at_ue1, s.params.rho, kPowerTolerance * s.params.rho) << i;
    const double g1 = std::abs(s.ch.h1);
    EXPECT_LE(std::abs(sic_boundary_quadratic(s.params, s.ch, a.v2)),
              1e-9 * (1 + s.params.rho) * g1 * g1 * p)
        << i;
  }
  EXPECT_GT(interior, 200);
}

TEST(SchemeMonotonicityTest, Scheme4NonDecreasingInInterference) {
  for (double rho : {0.5, 1.0, 5.0, 31.0}) {
    double prev = -1.0;
    for (int k = 0; k <= 400; ++k) {
      const double q = 1e-3 * std::pow(10.0, k * 0.015);
      const auto o = solve_scheme4(params(10, q, 1, rho), unit_channel());
      if (!o.feasible) continue;
      EXPECT_GE(o.allocation->sinr_ue1, prev - kEps) << "rho=" << rho << " q=" << q;
      prev = o.allocation->sinr_ue1;
    }
  }
}

TEST(SchemeMonotonicityTest, Scheme3NonIncreasingInInterferenceIncreasingInSignal) {
  double prev = INFINITY;
  for (int k = 0; k <= 400; ++k) {
    const double q = 1e-3 * std::pow(10.0, k * 0.015);
    const double s = solve_scheme3(params(10, q, 1, 1), unit_channel()).allocation->sinr_ue1;
    EXPECT_LE(s, prev + kEps) << q;
    prev = s;
  }
  prev = -1.0;
  for (int k = 0; k <= 400; ++k) {
    const double p = 1e-3 * std::pow(10.0, k * 0.015);
    const double s = solve_scheme3(params(p, 3, 1, 1), unit_channel()).allocation->sinr_ue1;
    EXPECT_GE(s, prev - kEps) << p;
    prev = s;
  }
}

TEST_F(SchemePropertyTest, ScaleCovariance) {
  for (int i = 0; i < 500; ++i) {
    const auto s = gen_.next();
    const double c = gen_.log_uniform(1e-6, 1e6);
    ScenarioParams scaled = s.params;
    scaled.p_max *= c;
    scaled.q *= c;
    scaled.noise *= c;
    const auto a = solve_all(s.params, s.ch);
    const auto b = solve_all(scaled, s.ch);
    for (int k = 0; k < 4; ++k) {
      ASSERT_EQ(a[k].feasible, b[k].feasible) << i << " S" << k + 1;
      if (!a[k].feasible) continue;
      EXPECT_LE(rel_diff(a[k].allocation->sinr_ue1, b[k].allocation->sinr_ue1), 1e-9)
          << i << " S" << k + 1;
    }
  }
}

TEST_F(SchemePropertyTest, PhaseIndependence) {
  for (int i = 0; i < 500; ++i) {
    const auto s = gen_.next();
    ChannelPair rotated = s.ch;
    rotated.h1 *= std::polar(1.0, gen_.uniform(-kPi, kPi));
    rotated.h2 *= std::polar(1.0, gen_.uniform(-kPi, kPi));
    const auto a = solve_all(s.params, s.ch);
    const auto b = solve_all(s.params, rotated);
    for (int k = 0; k < 4; ++k) {
      ASSERT_EQ(a[k].feasible, b[k].feasible);
      if (!a[k].feasible) continue;
      EXPECT_LE(rel_diff(a[k].allocation->sinr_ue1, b[k].allocation->sinr_ue1), 1e-12);
      EXPECT_LE(rel_diff(a[k].allocation->v1, b[k].allocation->v1), 1e-12);
      EXPECT_LE(rel_diff(a[k].allocation->v2, b[k].allocation->v2), 1e-12);
      EXPECT_EQ(a[k].allocation->branch, b[k].allocation->branch);
    }
  }
}

TEST_F(SchemePropertyTest, CombinedInterferenceSinrStrictlyIncreasing) {
  for (int i = 0; i < 200; ++i) {
    const auto s = gen_.next();
    const double top = std::sqrt(s.params.p_max);
    double prev = combined_interference_sinr(s.params, s.ch, 0.0);
    for (int k = 1; k <= 100; ++k) {
      const double f = combined_interference_sinr(s.params, s.ch, top * k / 100.0);
      EXPECT_GT(f, prev) << i << " " << k;
      prev = f;
    }
    const auto o = solve_scheme4(s.params, s.ch);
    EXPECT_DOUBLE_EQ(*o.trace.f_at_zero, combined_interference_sinr(s.params, s.ch, 0.0));
    EXPECT_LE(rel_diff(*o.trace.f_at_sqrt_p, combined_interference_sinr(s.params, s.ch, top)),
              1e-12);
  }
}

}  // namespace
}  // namespace conoma
