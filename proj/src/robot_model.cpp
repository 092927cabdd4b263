#include "ood/robot_model.hpp"

#include <algorithm>
#include <cmath>

#include "ood/errors.hpp"

namespace ood {

void SpringModel::validate() const {
  if (!(preload_mm >= 0.0)) throw ValidationError("spring: preload must be >= 0");
  if (!(bend_extra_mm >= 0.0)) throw ValidationError("spring: bend extra must be >= 0");
  if (!(preload_mm + bend_extra_mm <= max_compression_mm))
    throw ValidationError("spring: preload + bend extra must not exceed max compression");
  if (!(deviation_threshold >= 0.0)) throw ValidationError("spring: deviation threshold must be >= 0");
}

void RobotParams::validate() const {
  if (!(sprocket_diameter_mm > 0.0)) throw ValidationError("robot: sprocket diameter must be > 0");
  if (!(length_mm > 0.0)) throw ValidationError("robot: length must be > 0");
  if (!(input_rpm > 0.0)) throw ValidationError("robot: input speed must be > 0");
  if (!(pi > 3.0 && pi < 3.3)) throw ValidationError("robot: pi must be an approximation of pi");
  if (!(asym_yz_mm >= 0.0)) throw ValidationError("robot: YZ must be >= 0");
  if (!(asym_xz_mm > 0.0)) throw ValidationError("robot: XZ must be > 0");
  if (!std::isfinite(input_torque_Nmm)) throw ValidationError("robot: input torque must be finite");
  geartrain.validate();
  spring.validate();
}

double sprocket_to_track_speed(double omega_out_rpm, const RobotParams& params) {
  return params.pi * params.sprocket_diameter_mm * omega_out_rpm / 60.0;
}

Triple sprocket_to_track_speeds(const Triple& omega_out_rpm, const RobotParams& params) {
  return (params.pi * params.sprocket_diameter_mm / 60.0) * omega_out_rpm;
}

double robot_speed(const Triple& track_speeds) { return track_speeds.mean(); }

double max_asym_angle(const RobotParams& params) {
  return std::atan(params.asym_yz_mm / params.asym_xz_mm) * 180.0 / std::numbers::pi;
}

double spring_compression(const Segment& segment, double ratio, const SpringModel& spring) {
  double c = spring.preload_mm;
  if (is_bend(segment) && std::abs(ratio - 1.0) > spring.deviation_threshold) c += spring.bend_extra_mm;
  return std::clamp(c, 0.0, spring.max_compression_mm);
}

AsymFeasibility asym_feasibility(const Segment& bend, double contact_mm, const RobotParams& params) {
  const auto* b = std::get_if<Bend>(&bend);
  if (b == nullptr) throw NotABend("asymmetry check needs a bend");
  if (!(contact_mm >= 0.0)) throw ValidationError("contact length must be >= 0");
  AsymFeasibility out;
  out.required_deg = contact_mm / (2.0 * b->radius_mm) * 180.0 / std::numbers::pi;
  out.limit_deg = max_asym_angle(params);
  out.feasible = out.required_deg <= out.limit_deg;
  return out;
}

}  // namespace ood
