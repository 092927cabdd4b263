#pragma once

// The climbing scenario used throughout the tests and the shipped fixture:
// vertical 550 mm, 90 deg elbow, horizontal 350 mm, 180 deg U-bend,
// horizontal 150 mm.
//
// Neither radius is printed with the scenario. The bend radius is recovered
// from the elbow centerline length (657.83 mm over 90 deg) and the pipe
// radius from the inner-module speed in a bend at mu = 0
// (33.69 mm/s against 50.24 mm/s). See docs/reference_fixture.md.

#include <numbers>

#include "ood/pipe_geometry.hpp"
#include "ood/robot_model.hpp"

namespace ood::reference {

inline constexpr double kElbowArcMm = 657.83;
inline constexpr double kBendRadiusMm = kElbowArcMm * 2.0 / std::numbers::pi;
inline constexpr double kInnerRatioAtZero = 33.69 / 50.24;
inline constexpr double kPipeRadiusMm = kBendRadiusMm * (1.0 - kInnerRatioAtZero);

/// Circumference constant behind the 50.24 mm/s straight-pipe speed.
inline constexpr double kHandPi = 3.14;

inline PipeNetwork network() {
  PipeNetwork net;
  net.spec.inner_radius_mm = kPipeRadiusMm;
  net.segments = {Straight{550.0}, Bend{90.0, kBendRadiusMm, 0.0}, Straight{350.0},
                  Bend{180.0, kBendRadiusMm, 0.0}, Straight{150.0}};
  return net;
}

inline RobotParams robot() {
  RobotParams params;
  params.pi = kHandPi;
  return params;
}

}  // namespace ood::reference
