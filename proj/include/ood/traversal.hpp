#pragma once

// Fixed-step traversal of a pipe network.
//
// Speeds are closed-form at every step: the segment under the robot centre
// fixes the track-speed ratios, the differential delivers them around the
// input-fixed mean, and the sprockets turn output speed into track speed.
// Positions are robot-centre coordinates along the network centerline,
// from L_R/2 to D_pipe - L_R/2.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ood/pipe_geometry.hpp"
#include "ood/robot_model.hpp"
#include "ood/types.hpp"

namespace ood {

/// Extra surface speed on one track over [t_start, t_end): a slipping track.
/// It does not move the robot.
struct TrackFault {
  int track = 0;
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  double extra_mm_s = 0.0;
};

struct SimConfig {
  PipeNetwork network;
  RobotParams robot;
  double initial_roll_deg = 0.0;
  double dt_s = 0.01;
  int record_stride = 10;
  std::optional<TrackFault> fault;

  void validate() const;
};

struct TraceRow {
  double t_s = 0.0;
  double s_mm = 0.0;
  std::size_t segment = 0;
  double mu_deg = 0.0;
  Triple v_track = Triple::Zero();
  double v_robot = 0.0;
  Triple dist_track = Triple::Zero();
  Triple compression = Triple::Zero();
  Triple tau_out = Triple::Zero();
};

/// Per-segment accumulation at full step resolution.
struct SegmentTally {
  std::size_t segment_index = 0;
  double mu_deg = 0.0;
  double centerline_mm = 0.0;
  double time_s = 0.0;
  Triple track_mm = Triple::Zero();
};

struct TraversalTrace {
  std::vector<TraceRow> rows;
  std::vector<SegmentTally> tallies;
};

struct SegmentTiming {
  std::size_t segment_index = 0;
  double enter_t = 0.0;
  double exit_t = 0.0;
  double nominal_length_mm = 0.0;
  /// Part of the segment travelled by the robot centre.
  double path_length_mm = 0.0;
};

/// Mean simulated track speeds on one segment against the geometric value.
struct SegmentSpeeds {
  std::size_t segment_index = 0;
  bool bend = false;
  Triple simulated_mm_s = Triple::Zero();
  Triple theory_mm_s = Triple::Zero();
  Triple ape_percent = Triple::Zero();
};

struct TraversalSummary {
  double total_time_s = 0.0;
  double path_length_mm = 0.0;
  double robot_speed_mm_s = 0.0;
  std::vector<SegmentTiming> segment_times;
  Triple track_distance_mm = Triple::Zero();
  Triple max_compression_mm = Triple::Zero();
  Triple min_compression_mm = Triple::Zero();
  std::vector<SegmentSpeeds> segment_speeds;
  /// Largest |APE| per track over all segments.
  Triple ape_per_track = Triple::Zero();
  Triple slip_mm = Triple::Zero();
  std::size_t steps = 0;
};

/// Throws ConfigError on invalid geometry or stepping parameters.
std::pair<TraversalTrace, TraversalSummary> run(const SimConfig& config);

/// Per-track max over segments of |track distance - ratio * centerline arc|.
Triple slip_drag_metric(const TraversalTrace& trace, const PipeNetwork& network);

/// Absolute percentage error, signed: (sim - theory) / theory * 100.
double ape(double sim_value, double theory_value);

struct TimingRow {
  std::size_t segment_index = 0;
  double enter_t = 0.0;
  double exit_t = 0.0;
  double duration_s = 0.0;
  double path_length_mm = 0.0;
  double mean_speed_mm_s = 0.0;
  double analytic_duration_s = 0.0;
  /// Duration within 1 % of path length / v_R.
  bool consistent = true;
};

std::vector<TimingRow> segment_timing(const TraversalSummary& summary);

}  // namespace ood
