#pragma once

#include <numbers>

#include "ood/differential.hpp"
#include "ood/pipe_geometry.hpp"
#include "ood/types.hpp"

namespace ood {

struct SpringModel {
  double preload_mm = 1.25;
  /// Extra compression of a module whose track runs off the centerline speed.
  double bend_extra_mm = 1.5;
  double max_compression_mm = 16.0;
  /// |g - 1| above which a module counts as inner/outer in a bend.
  double deviation_threshold = 0.05;

  void validate() const;
};

struct RobotParams {
  double sprocket_diameter_mm = 80.0;
  double length_mm = 200.0;
  double input_rpm = 120.0;
  double input_torque_Nmm = 1.0;
  /// Value of pi used for the sprocket circumference. Setting 3.14
  /// reproduces hand-computed speeds such as 50.24 mm/s at 12 rpm.
  double pi = std::numbers::pi;
  GearTrainParams<double> geartrain;
  SpringModel spring;
  double asym_yz_mm = 12.0;
  double asym_xz_mm = 150.0;

  void validate() const;

  /// Output speed of every module in a straight pipe (rpm).
  double equal_load_output_rpm() const { return geartrain.equal_load_output(input_rpm); }
};

/// Linear track speed (mm/s) of a sprocket turning at `omega_out_rpm`.
double sprocket_to_track_speed(double omega_out_rpm, const RobotParams& params);
Triple sprocket_to_track_speeds(const Triple& omega_out_rpm, const RobotParams& params);

/// Robot centerline speed: the mean of the three track speeds.
double robot_speed(const Triple& track_speeds);

/// Largest tilt a single module can take by compressing asymmetrically (deg).
double max_asym_angle(const RobotParams& params);

/// Spring compression of a module with speed ratio `ratio` on `segment`.
double spring_compression(const Segment& segment, double ratio, const SpringModel& spring);

struct AsymFeasibility {
  double required_deg = 0.0;
  double limit_deg = 0.0;
  bool feasible = true;
};

/// Advisory check: tilt needed for a rigid contact span of `contact_mm` to
/// follow `bend`, approximated as half the subtended centerline angle.
AsymFeasibility asym_feasibility(const Segment& bend, double contact_mm, const RobotParams& params);

}  // namespace ood
