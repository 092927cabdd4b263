#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ood/errors.hpp"
#include "ood/reference.hpp"
#include "ood/robot_model.hpp"

using namespace ood;

TEST(SprocketToTrackSpeed, HandComputedStraightSpeed) {
  const RobotParams robot = reference::robot();
  EXPECT_NEAR(sprocket_to_track_speed(12.0, robot), 50.24, 0.01);
  EXPECT_EQ(sprocket_to_track_speed(0.0, robot), 0.0);
  EXPECT_NEAR(sprocket_to_track_speed(6.0, robot), 25.12, 0.01);
}

TEST(SprocketToTrackSpeed, FullPrecisionPi) {
  // With the exact constant the straight-pipe speed is 50.2655, not 50.24.
  const RobotParams robot;
  EXPECT_NEAR(sprocket_to_track_speed(12.0, robot), 16.0 * std::numbers::pi, 1e-12);
  EXPECT_GT(std::abs(sprocket_to_track_speed(12.0, robot) - 50.24), 0.02);
}

TEST(SprocketToTrackSpeed, Linear) {
  const RobotParams robot;
  for (double w = 0.5; w < 40.0; w += 1.7)
    EXPECT_NEAR(sprocket_to_track_speed(2.0 * w, robot), 2.0 * sprocket_to_track_speed(w, robot), 1e-12);
}

TEST(RobotSpeed, MeanOfTracks) {
  EXPECT_DOUBLE_EQ(robot_speed(Triple::Constant(50.24)), 50.24);
  EXPECT_NEAR(robot_speed(Triple(33.69, 58.51, 58.51)), 50.24, 0.01);
  EXPECT_EQ(robot_speed(Triple::Zero()), 0.0);
}

TEST(MaxAsymAngle, Examples) {
  RobotParams robot;
  EXPECT_NEAR(max_asym_angle(robot), 4.574, 0.001);
  robot.asym_yz_mm = 0.0;
  EXPECT_EQ(max_asym_angle(robot), 0.0);
  robot.asym_yz_mm = 150.0;
  EXPECT_NEAR(max_asym_angle(robot), 45.0, 1e-12);
}

TEST(MaxAsymAngle, Monotone) {
  RobotParams robot;
  double prev = -1.0;
  for (double yz = 0.0; yz < 300.0; yz += 5.0) {
    robot.asym_yz_mm = yz;
    const double phi = max_asym_angle(robot);
    EXPECT_GT(phi, prev);
    prev = phi;
  }
  robot.asym_yz_mm = 12.0;
  prev = 91.0;
  for (double xz = 10.0; xz < 500.0; xz += 10.0) {
    robot.asym_xz_mm = xz;
    const double phi = max_asym_angle(robot);
    EXPECT_LT(phi, prev);
    prev = phi;
  }
}

TEST(SpringCompression, Examples) {
  const SpringModel spring;
  const Segment elbow = Bend{90.0, reference::kBendRadiusMm, 0.0};
  EXPECT_EQ(spring_compression(Straight{100.0}, 0.5, spring), 1.25);
  EXPECT_EQ(spring_compression(elbow, 0.670, spring), 2.75);
  EXPECT_EQ(spring_compression(elbow, 1.165, spring), 2.75);
  EXPECT_EQ(spring_compression(elbow, 1.000, spring), 1.25);
}

TEST(SpringCompression, Clamped) {
  SpringModel spring;
  spring.preload_mm = 10.0;
  spring.bend_extra_mm = 20.0;  // deliberately invalid model
  spring.max_compression_mm = 16.0;
  EXPECT_EQ(spring_compression(Bend{90.0, 400.0, 0.0}, 0.5, spring), 16.0);
  spring.preload_mm = -3.0;
  spring.bend_extra_mm = 0.0;
  EXPECT_EQ(spring_compression(Straight{1.0}, 1.0, spring), 0.0);
}

TEST(SpringModel, Validation) {
  SpringModel spring;
  EXPECT_NO_THROW(spring.validate());
  spring.bend_extra_mm = 15.0;
  EXPECT_THROW(spring.validate(), ValidationError);
}

TEST(AsymFeasibility, Examples) {
  const RobotParams robot;
  const AsymFeasibility full = asym_feasibility(Bend{90.0, 418.85, 0.0}, 150.0, robot);
  EXPECT_NEAR(full.required_deg, 10.26, 0.01);
  EXPECT_FALSE(full.feasible);
  const AsymFeasibility none = asym_feasibility(Bend{90.0, 418.85, 0.0}, 0.0, robot);
  EXPECT_EQ(none.required_deg, 0.0);
  EXPECT_TRUE(none.feasible);
  const AsymFeasibility gentle = asym_feasibility(Bend{90.0, 1e9, 0.0}, 150.0, robot);
  EXPECT_LT(gentle.required_deg, 1e-5);
  EXPECT_TRUE(gentle.feasible);
  EXPECT_THROW(asym_feasibility(Straight{1.0}, 10.0, robot), NotABend);
}

TEST(RobotParams, Validation) {
  RobotParams robot;
  EXPECT_NO_THROW(robot.validate());
  robot.sprocket_diameter_mm = 0.0;
  EXPECT_THROW(robot.validate(), ValidationError);
  robot = RobotParams{};
  robot.pi = 22.0 / 7.0;
  EXPECT_NO_THROW(robot.validate());
  robot.pi = 1.0;
  EXPECT_THROW(robot.validate(), ValidationError);
}
