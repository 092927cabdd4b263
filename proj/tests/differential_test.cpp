#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "ood/differential.hpp"

using namespace ood;

namespace {

using Params = GearTrainParams<double>;

constexpr double kTol = 1e-9;

// Independent route for the inverse map. Fixing S1 = t propagates through the
// six sums to a one-parameter family p + t*q; the minimum-norm deviation from
// the uniform state is the orthogonal projection along q.
Vector6<double> family_oracle(const Vector3<double>& out, double omega_u, const Params& p) {
  const double c = 2.0 * omega_u / p.k;
  const double d1 = 4.0 * omega_u / p.k - 2.0 * out(0) / p.j;
  const double d2 = 4.0 * omega_u / p.k - 2.0 * out(1) / p.j;
  const double d3 = 4.0 * omega_u / p.k - 2.0 * out(2) / p.j;
  (void)d1;
  auto member = [&](double t) {
    Vector6<double> x;
    x(0) = t;
    x(1) = c - t;
    x(5) = d3 - t;
    x(4) = c - x(5);
    x(2) = d2 - x(4);
    x(3) = c - x(2);
    return x;
  };
  const Vector6<double> base = member(0.0);
  const Vector6<double> dir = member(1.0) - base;
  const Vector6<double> uniform = Vector6<double>::Constant(omega_u / p.k);
  const double t_star = -dir.dot(base - uniform) / dir.squaredNorm();
  return member(t_star);
}

Vector3<double> random_reachable(std::mt19937_64& rng, double omega_u, const Params& p) {
  std::uniform_real_distribution<double> spread(-0.6, 0.6);
  Vector3<double> g(1.0 + spread(rng), 1.0 + spread(rng), 1.0 + spread(rng));
  g /= g.mean();
  return p.equal_load_output(omega_u) * g;
}

}  // namespace

TEST(RingKinematics, ReferenceInputSpeed) {
  const auto ring = ring_kinematics(120.0, 3.0, Params{});
  EXPECT_DOUBLE_EQ(ring.speed, 6.0);
  EXPECT_DOUBLE_EQ(ring.torque, 20.0);
}

TEST(RingKinematics, ZeroInput) {
  const auto ring = ring_kinematics(0.0, 0.0, Params{});
  EXPECT_EQ(ring.speed, 0.0);
  EXPECT_EQ(ring.torque, 0.0);
}

TEST(OutputsFromSideGears, UniformGivesTwelveRpm) {
  const Vector3<double> out = outputs_from_side_gears(Vector6<double>::Constant(6.0), 120.0, Params{});
  EXPECT_NEAR(out(0), 12.0, kTol);
  EXPECT_NEAR(out(1), 12.0, kTol);
  EXPECT_NEAR(out(2), 12.0, kTol);
}

TEST(OutputsFromSideGears, ZeroInput) {
  EXPECT_TRUE(outputs_from_side_gears(Vector6<double>::Zero(), 0.0, Params{}).isZero());
}

TEST(OutputsFromSideGears, HandEvaluatedAssignment) {
  // (w2,w4) = (8,8), (w3,w5) = (4,4), (w1,w6) = (4,8); pair sums all 12.
  Vector6<double> side;
  side << 4, 8, 4, 8, 4, 8;
  const Vector3<double> out = outputs_from_side_gears(side, 120.0, Params{});
  EXPECT_NEAR(out(0), 8.0, kTol);
  EXPECT_NEAR(out(1), 16.0, kTol);
  EXPECT_NEAR(out(2), 12.0, kTol);
  EXPECT_NEAR(out.mean(), 12.0, kTol);
}

TEST(OutputsFromSideGears, RejectsInconsistentRingSums) {
  Vector6<double> side;
  side << 6, 6, 6, 6, 6, 6.1;
  EXPECT_THROW(outputs_from_side_gears(side, 120.0, Params{}), ConstraintViolation);
}

TEST(SideGearsFromOutputs, EqualDemandIsUniform) {
  const Vector12<double> side = side_gears_from_outputs(Vector3<double>::Constant(12.0), 120.0, Params{});
  EXPECT_TRUE(side.isApprox(Vector12<double>::Constant(6.0), 1e-12));
}

TEST(SideGearsFromOutputs, TableOneRatiosRoundTrip) {
  // 0.670 + 1.165 + 1.165 = 3.000 exactly; scaled to 12 rpm.
  const Vector3<double> out = 12.0 * Vector3<double>(0.670, 1.165, 1.165);
  const Vector12<double> side = side_gears_from_outputs(out, 120.0, Params{});
  const Vector3<double> back = outputs_from_side_gears(side.head<6>(), 120.0, Params{});
  EXPECT_LT((back - out).cwiseAbs().maxCoeff(), kTol);
}

TEST(SideGearsFromOutputs, AsymmetricDemandSatisfiesAllConstraints) {
  const Vector3<double> out(13.0, 12.0, 11.0);
  const Vector12<double> side = side_gears_from_outputs(out, 120.0, Params{});
  EXPECT_NEAR(side(0) + side(1), 12.0, kTol);
  EXPECT_NEAR(side(2) + side(3), 12.0, kTol);
  EXPECT_NEAR(side(4) + side(5), 12.0, kTol);
  // Rigid couplings.
  EXPECT_EQ(side(6), side(0));
  EXPECT_EQ(side(7), side(2));
  EXPECT_EQ(side(8), side(3));
  EXPECT_EQ(side(9), side(5));
  EXPECT_EQ(side(10), side(4));
  EXPECT_EQ(side(11), side(1));
  // Each output is j times the average of its two-input side gears.
  EXPECT_NEAR(2.0 * (side(6) + side(7)) / 2.0, 13.0, kTol);
  EXPECT_NEAR(2.0 * (side(8) + side(9)) / 2.0, 12.0, kTol);
  EXPECT_NEAR(2.0 * (side(10) + side(11)) / 2.0, 11.0, kTol);
}

TEST(SideGearsFromOutputs, MatchesFamilyOracle) {
  std::mt19937_64 rng(7);
  const Params p;
  for (int i = 0; i < 500; ++i) {
    const Vector3<double> out = random_reachable(rng, 120.0, p);
    const Vector6<double> expected = family_oracle(out, 120.0, p);
    const Vector12<double> side = side_gears_from_outputs(out, 120.0, p);
    ASSERT_LT((side.head<6>() - expected).cwiseAbs().maxCoeff(), kTol) << "sample " << i;
  }
}

TEST(SideGearsFromOutputs, MinimumNormAgainstScan) {
  // Brute-force scan of the solution family around the returned point.
  const Params p;
  const Vector3<double> out(13.0, 12.0, 11.0);
  const Vector6<double> side = side_gears_from_outputs(out, 120.0, p).head<6>();
  Vector6<double> dir;
  dir << 1, -1, -1, 1, 1, -1;
  const Vector6<double> uniform = Vector6<double>::Constant(6.0);
  const double best = (side - uniform).norm();
  for (double t = -2.0; t <= 2.0; t += 0.01) {
    const Vector6<double> other = side + t * dir;
    EXPECT_NO_THROW(outputs_from_side_gears(other, 120.0, p));
    EXPECT_GE((other - uniform).norm() + 1e-12, best);
  }
}

TEST(SideGearsFromOutputs, RejectsUnreachableDemand) {
  EXPECT_THROW(side_gears_from_outputs(Vector3<double>(12, 12, 13), 120.0, Params{}), UnreachableDemand);
}

TEST(OutputTorques, SteadyState) {
  const Vector3<double> tau = output_torques(1.0, Vector6<double>::Zero(), Params{});
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(tau(i), 10.0 / 3.0);
}

TEST(OutputTorques, ZeroInput) {
  EXPECT_TRUE(output_torques(0.0, Vector6<double>::Zero(), Params{}).isZero());
}

TEST(OutputTorques, EqualInertiaEqualAcceleration) {
  Params p;
  p.inertias.setConstant(0.25);
  const double a_rpm_s = 3.0;
  const double a = a_rpm_s * 2.0 * std::numbers::pi / 60.0;
  const Vector3<double> tau = output_torques(2.0, Vector6<double>::Constant(a_rpm_s), p);
  const double expected = 20.0 * 2.0 / 6.0 - 2.0 * 0.25 * a / 2.0;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(tau(i), expected, 1e-12);
}

TEST(OutputTorques, InertiaIndexingAsPrinted) {
  // Only I1 and S7 nonzero: affects O1 only. Only I2 and S12: affects O3 only.
  Params p;
  p.inertias = Vector6<double>::Zero();
  p.inertias(0) = 1.0;
  p.inertias(1) = 1.0;
  Vector6<double> accel = Vector6<double>::Zero();
  accel(0) = 60.0 / (2.0 * std::numbers::pi);  // 1 rad/s^2 on S7
  Vector3<double> tau = output_torques(0.0, accel, p);
  EXPECT_NEAR(tau(0), -0.5, 1e-12);
  EXPECT_EQ(tau(1), 0.0);
  EXPECT_EQ(tau(2), 0.0);

  accel.setZero();
  accel(5) = 60.0 / (2.0 * std::numbers::pi);  // S12
  tau = output_torques(0.0, accel, p);
  EXPECT_EQ(tau(0), 0.0);
  EXPECT_EQ(tau(1), 0.0);
  EXPECT_NEAR(tau(2), -0.5, 1e-12);
}

TEST(EqualLoadState, ReferenceSpeeds) {
  const auto s = equal_load_state(120.0, 1.0, Params{});
  EXPECT_TRUE(s.omega_out.isApprox(Vector3<double>::Constant(12.0)));
  EXPECT_TRUE(s.omega_side.isApprox(Vector12<double>::Constant(6.0)));
  EXPECT_TRUE(s.omega_ring.isApprox(Vector3<double>::Constant(6.0)));
  EXPECT_TRUE(check_mean_invariant(s, Params{}));
}

TEST(EqualLoadState, HalfSpeed) {
  EXPECT_TRUE(equal_load_state(60.0, 1.0, Params{}).omega_out.isApprox(Vector3<double>::Constant(6.0)));
}

TEST(EqualLoadState, ZeroIsAllZero) {
  const auto s = equal_load_state(0.0, 0.0, Params{});
  EXPECT_TRUE(s.omega_out.isZero());
  EXPECT_TRUE(s.omega_side.isZero());
  EXPECT_TRUE(s.tau_out.isZero());
}

TEST(MeanInvariant, Checks) {
  DifferentialState<double> s;
  s.omega_u = 120.0;
  s.omega_out = 12.0 * Vector3<double>(0.670, 1.165, 1.165);
  EXPECT_TRUE(check_mean_invariant(s, Params{}));
  s.omega_out = Vector3<double>(12, 12, 13);
  EXPECT_FALSE(check_mean_invariant(s, Params{}));
}

TEST(GearTrainParams, Validation) {
  Params p;
  EXPECT_NO_THROW(p.validate());
  p.k = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = Params{};
  p.inertias(3) = -1.0;
  EXPECT_THROW(p.validate(), ValidationError);
}

// Property: any assignment that satisfies the ring sums maps to outputs with
// the input-fixed mean.
TEST(DifferentialProperties, ForwardMeanIsFixed) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_real_distribution<double> w(0.0, 600.0);
  const Params p;
  for (int i = 0; i < 2000; ++i) {
    const double omega_u = w(rng);
    const double c = 2.0 * omega_u / p.k;
    Vector6<double> side;
    for (int pair = 0; pair < 3; ++pair) {
      side(2 * pair) = u(rng);
      side(2 * pair + 1) = c - side(2 * pair);
    }
    const Vector3<double> out = outputs_from_side_gears(side, omega_u, p);
    ASSERT_NEAR(out.mean(), p.j * omega_u / p.k, kTol);
  }
}

TEST(DifferentialProperties, CyclicPermutationEquivariance) {
  std::mt19937_64 rng(13);
  const Params p;
  for (int i = 0; i < 200; ++i) {
    const Vector3<double> out = random_reachable(rng, 120.0, p);
    const Vector3<double> rotated(out(1), out(2), out(0));
    const Vector12<double> side = side_gears_from_outputs(rotated, 120.0, p);
    const Vector3<double> back = outputs_from_side_gears(side.head<6>(), 120.0, p);
    ASSERT_LT((back - rotated).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(DifferentialProperties, LinearInInputSpeed) {
  std::mt19937_64 rng(17);
  const Params p;
  for (int i = 0; i < 200; ++i) {
    const Vector3<double> out = random_reachable(rng, 120.0, p);
    const Vector12<double> side = side_gears_from_outputs(out, 120.0, p);
    const Vector12<double> doubled = side_gears_from_outputs(Vector3<double>(2.0 * out), 240.0, p);
    ASSERT_LT((doubled - 2.0 * side).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(DifferentialProperties, SteadyTorqueIndependentOfSpeedSplit) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> tau(-50.0, 50.0);
  const Params p;
  for (int i = 0; i < 200; ++i) {
    OutputDemand<double> demand;
    demand.ratios = random_reachable(rng, 120.0, p) / 12.0;
    const double tau_u = tau(rng);
    const auto s = solve_demand(demand, 120.0, tau_u, p);
    for (int m = 0; m < 3; ++m) ASSERT_EQ(s.tau_out(m), p.k * tau_u / (3.0 * p.j));
  }
}

TEST(DifferentialProperties, FloatScalarInstantiates) {
  const GearTrainParams<float> p;
  const Vector3<float> out = outputs_from_side_gears(Vector6<float>::Constant(6.0f), 120.0f, p);
  EXPECT_NEAR(out(0), 12.0f, 1e-5f);
}
