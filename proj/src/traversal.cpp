#include "ood/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ood/differential.hpp"
#include "ood/errors.hpp"

namespace ood {

namespace {

struct Sample {
  std::size_t segment = 0;
  double mu_deg = 0.0;
  Triple ratios = Triple::Ones();
  Vector12<double> side = Vector12<double>::Zero();
  Triple v_track = Triple::Zero();
  double v_robot = 0.0;
  Triple compression = Triple::Zero();
};

std::size_t segment_at(const std::vector<double>& bounds, double s) {
  auto it = std::upper_bound(bounds.begin(), bounds.end(), s);
  const auto index = static_cast<std::size_t>(std::distance(bounds.begin(), it));
  return std::clamp<std::size_t>(index, 1, bounds.size() - 1) - 1;
}

double segment_mu(const SimConfig& config, const Segment& seg) {
  return is_bend(seg) ? effective_mu(config.initial_roll_deg, seg) : normalize_degrees(config.initial_roll_deg);
}

Sample sample_at(const SimConfig& config, const std::vector<double>& bounds, double s) {
  const RobotParams& robot = config.robot;
  Sample out;
  out.segment = segment_at(bounds, s);
  const Segment& seg = config.network.segments[out.segment];
  out.mu_deg = segment_mu(config, seg);
  out.ratios = track_speed_ratios(seg, out.mu_deg, config.network.spec);

  OutputDemand<double> demand;
  demand.ratios = out.ratios;
  const DifferentialState<double> state =
      solve_demand(demand, robot.input_rpm, robot.input_torque_Nmm, robot.geartrain);
  out.side = state.omega_side;
  out.v_track = sprocket_to_track_speeds(state.omega_out, robot);
  out.v_robot = robot_speed(out.v_track);
  for (int i = 0; i < kModuleCount; ++i)
    out.compression(i) = spring_compression(seg, out.ratios(i), robot.spring);
  return out;
}

Triple faulted(const Triple& v, const std::optional<TrackFault>& fault, double t) {
  Triple out = v;
  if (fault && t >= fault->t_start_s && t < fault->t_end_s) out(fault->track) += fault->extra_mm_s;
  return out;
}

}  // namespace

void SimConfig::validate() const {
  network.validate();
  robot.validate();
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw ConfigError("sim: dt must be > 0");
  if (record_stride < 1) throw ConfigError("sim: record stride must be >= 1");
  if (!std::isfinite(initial_roll_deg)) throw ConfigError("sim: roll must be finite");
  if (fault) {
    if (fault->track < 0 || fault->track >= kModuleCount) throw ConfigError("fault: track must be A, B or C");
    if (!(fault->t_end_s >= fault->t_start_s)) throw ConfigError("fault: window end precedes start");
  }
}

std::pair<TraversalTrace, TraversalSummary> run(const SimConfig& config) {
  TraversalTrace trace;
  TraversalSummary summary;
  if (config.network.segments.empty()) return {trace, summary};
  config.validate();

  const std::vector<double> bounds = config.network.boundaries();
  const double half_body = 0.5 * config.robot.length_mm;
  const double s_start = half_body;
  const double s_end = bounds.back() - half_body;
  if (!(s_end > s_start)) return {trace, summary};

  const double dt = config.dt_s;
  const auto& gear = config.robot.geartrain;
  const std::size_t n_segments = config.network.segments.size();

  std::vector<SegmentTiming> timing(n_segments);
  std::vector<bool> visited(n_segments, false);
  std::vector<SegmentTally> tally(n_segments);
  for (std::size_t i = 0; i < n_segments; ++i) {
    timing[i].segment_index = i;
    timing[i].nominal_length_mm = arc_length(config.network.segments[i]);
    tally[i].segment_index = i;
    tally[i].mu_deg = segment_mu(config, config.network.segments[i]);
  }

  summary.min_compression_mm.setConstant(std::numeric_limits<double>::infinity());
  summary.max_compression_mm.setConstant(-std::numeric_limits<double>::infinity());

  auto emit = [&](double t, double s, const Sample& smp, const Triple& dist, const Vector6<double>& side_accel) {
    TraceRow row;
    row.t_s = t;
    row.s_mm = s;
    row.segment = smp.segment;
    row.mu_deg = smp.mu_deg;
    row.v_track = faulted(smp.v_track, config.fault, t);
    row.v_robot = smp.v_robot;
    row.dist_track = dist;
    row.compression = smp.compression;
    row.tau_out = output_torques(config.robot.input_torque_Nmm, side_accel, gear);
    trace.rows.push_back(row);
  };

  double t = 0.0;
  double s = s_start;
  Triple dist = Triple::Zero();
  Sample prev = sample_at(config, bounds, s);
  visited[prev.segment] = true;
  bool have_prev_side = false;

  for (std::size_t step = 0;; ++step) {
    const Sample cur = step == 0 ? prev : sample_at(config, bounds, s);
    // Finite-difference accelerations of S7..S12 (rpm/s); joints give one-step spikes.
    Vector6<double> accel = Vector6<double>::Zero();
    if (have_prev_side) accel = (cur.side.tail<6>() - prev.side.tail<6>()) / dt;

    summary.min_compression_mm = summary.min_compression_mm.cwiseMin(cur.compression);
    summary.max_compression_mm = summary.max_compression_mm.cwiseMax(cur.compression);

    if (step % static_cast<std::size_t>(config.record_stride) == 0) emit(t, s, cur, dist, accel);

    // Advance; the final step is shortened to land exactly on the path end.
    double ds = cur.v_robot * dt;
    double h = dt;
    const bool last = s + ds >= s_end;
    if (last) {
      ds = s_end - s;
      h = ds / cur.v_robot;
    }
    const Triple v_surface = faulted(cur.v_track, config.fault, t);

    // Split the centerline advance across any joints it crosses. Track
    // distance follows the same time split but keeps the step's ratios.
    double covered = 0.0;
    std::size_t seg = cur.segment;
    while (true) {
      const double seg_end = seg + 1 < n_segments ? bounds[seg + 1] : std::numeric_limits<double>::infinity();
      const double piece = std::min(ds - covered, seg_end - (s + covered));
      const double frac = ds > 0.0 ? piece / ds : 0.0;
      tally[seg].centerline_mm += piece;
      tally[seg].time_s += frac * h;
      tally[seg].track_mm += frac * h * v_surface;
      covered += piece;
      if (covered >= ds || seg + 1 >= n_segments) break;
      const double t_cross = t + h * (covered / ds);
      timing[seg].exit_t = t_cross;
      ++seg;
      visited[seg] = true;
      timing[seg].enter_t = t_cross;
    }

    dist += h * v_surface;
    t += h;
    s = last ? s_end : s + ds;
    prev = cur;
    have_prev_side = true;
    ++summary.steps;

    if (last) {
      const Sample end = sample_at(config, bounds, s);
      const Vector6<double> end_accel =
          h > 0.0 ? Vector6<double>((end.side.tail<6>() - cur.side.tail<6>()) / h) : Vector6<double>::Zero();
      emit(t, s, end, dist, end_accel);
      timing[seg].exit_t = t;
      break;
    }
  }

  summary.total_time_s = t;
  summary.path_length_mm = s_end - s_start;
  summary.robot_speed_mm_s = sprocket_to_track_speed(config.robot.equal_load_output_rpm(), config.robot);
  summary.track_distance_mm = dist;

  for (std::size_t i = 0; i < n_segments; ++i) {
    if (!visited[i]) continue;
    timing[i].path_length_mm = std::min(bounds[i + 1], s_end) - std::max(bounds[i], s_start);
    summary.segment_times.push_back(timing[i]);
    trace.tallies.push_back(tally[i]);

    SegmentSpeeds speeds;
    speeds.segment_index = i;
    speeds.bend = is_bend(config.network.segments[i]);
    const Triple g = track_speed_ratios(config.network.segments[i], tally[i].mu_deg, config.network.spec);
    speeds.theory_mm_s = summary.robot_speed_mm_s * g;
    if (tally[i].time_s > 0.0) speeds.simulated_mm_s = tally[i].track_mm / tally[i].time_s;
    for (int m = 0; m < kModuleCount; ++m) {
      speeds.ape_percent(m) = ape(speeds.simulated_mm_s(m), speeds.theory_mm_s(m));
      summary.ape_per_track(m) = std::max(summary.ape_per_track(m), std::abs(speeds.ape_percent(m)));
    }
    summary.segment_speeds.push_back(speeds);
  }
  summary.slip_mm = slip_drag_metric(trace, config.network);
  return {trace, summary};
}

Triple slip_drag_metric(const TraversalTrace& trace, const PipeNetwork& network) {
  Triple worst = Triple::Zero();
  for (const SegmentTally& tally : trace.tallies) {
    if (tally.segment_index >= network.segments.size())
      throw OutOfRange("tally refers to segment " + std::to_string(tally.segment_index));
    const Segment& seg = network.segments[tally.segment_index];
    const Triple g = track_speed_ratios(seg, tally.mu_deg, network.spec);
    const Triple mismatch = (tally.track_mm - g * tally.centerline_mm).cwiseAbs();
    worst = worst.cwiseMax(mismatch);
  }
  return worst;
}

double ape(double sim_value, double theory_value) {
  if (theory_value == 0.0) throw DivisionByZero("APE is undefined for a zero theoretical value");
  return (sim_value - theory_value) / theory_value * 100.0;
}

std::vector<TimingRow> segment_timing(const TraversalSummary& summary) {
  std::vector<TimingRow> rows;
  rows.reserve(summary.segment_times.size());
  for (const SegmentTiming& st : summary.segment_times) {
    TimingRow row;
    row.segment_index = st.segment_index;
    row.enter_t = st.enter_t;
    row.exit_t = st.exit_t;
    row.duration_s = st.exit_t - st.enter_t;
    row.path_length_mm = st.path_length_mm;
    row.mean_speed_mm_s = row.duration_s > 0.0 ? st.path_length_mm / row.duration_s : 0.0;
    row.analytic_duration_s =
        summary.robot_speed_mm_s > 0.0 ? st.path_length_mm / summary.robot_speed_mm_s : 0.0;
    row.consistent = std::abs(row.duration_s - row.analytic_duration_s) <= 0.01 * row.analytic_duration_s;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ood
