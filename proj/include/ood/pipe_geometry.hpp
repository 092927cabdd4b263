#pragma once

// Pipe networks as ordered straight and bend segments, and the per-module
// track-speed ratios a bend imposes.
//
// Module orientation: mu is measured from the inward bend normal to module A
// in the bend plane. Module i sits at mu + 120 deg * i, so mu = 0 puts A
// nearest the centre of curvature.

#include <cstddef>
#include <variant>
#include <vector>

#include "ood/types.hpp"

namespace ood {

struct PipeSpec {
  double inner_radius_mm = 0.0;

  void validate() const;
};

struct Straight {
  double length_mm = 0.0;
};

struct Bend {
  double theta_deg = 0.0;
  /// Centerline radius of curvature.
  double radius_mm = 0.0;
  /// Orientation of the bend plane about the pipe axis, network frame.
  double roll_deg = 0.0;
};

using Segment = std::variant<Straight, Bend>;

bool is_bend(const Segment& segment);

struct PipeNetwork {
  PipeSpec spec;
  std::vector<Segment> segments;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
  double total_length() const;
  /// Start offset of each segment along the centerline (size = segments + 1,
  /// last entry is the total length).
  std::vector<double> boundaries() const;
};

struct PathPosition {
  std::size_t segment_index = 0;
  double s_local = 0.0;
  double s_global = 0.0;
};

/// Centerline arc length; bends are R * theta.
double arc_length(const Segment& segment);

/// Distance from the centre of curvature to module `module_index` (0 = A).
double effective_radius(int module_index, double mu_deg, const Segment& bend, const PipeSpec& spec);

/// Track speed relative to the robot centerline speed, per module.
/// Straight segments give (1, 1, 1); the mean is always 1.
Triple track_speed_ratios(const Segment& segment, double mu_deg, const PipeSpec& spec);

/// Segment containing `s_global`. Joints belong to the downstream segment;
/// the network end belongs to the last one.
PathPosition locate(const PipeNetwork& network, double s_global);

/// Robot roll relative to the plane of `bend`, in [0, 360).
double effective_mu(double global_roll_deg, const Segment& bend);

double normalize_degrees(double deg);
double to_radians(double deg);

}  // namespace ood
