#include "ood/pipe_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ood/errors.hpp"

namespace ood {

namespace {

const Bend& require_bend(const Segment& segment) {
  const Bend* bend = std::get_if<Bend>(&segment);
  if (bend == nullptr) throw NotABend("segment is straight");
  return *bend;
}

}  // namespace

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

double normalize_degrees(double deg) {
  double out = std::fmod(deg, 360.0);
  if (out < 0.0) out += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  return out >= 360.0 ? 0.0 : out;
}

void PipeSpec::validate() const {
  if (!(inner_radius_mm > 0.0) || !std::isfinite(inner_radius_mm))
    throw ValidationError("pipe: inner radius r must be > 0");
}

bool is_bend(const Segment& segment) { return std::holds_alternative<Bend>(segment); }

void PipeNetwork::validate() const {
  spec.validate();
  if (segments.empty()) throw ValidationError("network: at least one segment is required");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (const auto* s = std::get_if<Straight>(&segments[i])) {
      if (!(s->length_mm > 0.0) || !std::isfinite(s->length_mm))
        throw ValidationError(where + "length must be > 0");
    } else {
      const auto& b = std::get<Bend>(segments[i]);
      if (!(b.theta_deg > 0.0 && b.theta_deg <= 360.0))
        throw ValidationError(where + "bend angle must be in (0, 360]");
      if (!(b.radius_mm > spec.inner_radius_mm) || !std::isfinite(b.radius_mm))
        throw ValidationError(where + "bend radius R must exceed pipe radius r");
      if (!std::isfinite(b.roll_deg)) throw ValidationError(where + "roll must be finite");
    }
  }
}

double PipeNetwork::total_length() const { return boundaries().back(); }

std::vector<double> PipeNetwork::boundaries() const {
  std::vector<double> out;
  out.reserve(segments.size() + 1);
  double s = 0.0;
  out.push_back(s);
  for (const Segment& seg : segments) {
    s += arc_length(seg);
    out.push_back(s);
  }
  return out;
}

double arc_length(const Segment& segment) {
  if (const auto* s = std::get_if<Straight>(&segment)) return s->length_mm;
  const auto& b = std::get<Bend>(segment);
  return b.radius_mm * to_radians(b.theta_deg);
}

double effective_radius(int module_index, double mu_deg, const Segment& bend, const PipeSpec& spec) {
  const Bend& b = require_bend(bend);
  if (module_index < 0 || module_index >= kModuleCount)
    throw OutOfRange("module index must be 0, 1 or 2");
  return b.radius_mm - spec.inner_radius_mm * std::cos(to_radians(mu_deg + 120.0 * module_index));
}

Triple track_speed_ratios(const Segment& segment, double mu_deg, const PipeSpec& spec) {
  if (!is_bend(segment)) return Triple::Ones();
  const double radius = std::get<Bend>(segment).radius_mm;
  Triple g;
  for (int i = 0; i < kModuleCount; ++i) g(i) = effective_radius(i, mu_deg, segment, spec) / radius;
  return g;
}

PathPosition locate(const PipeNetwork& network, double s_global) {
  if (network.segments.empty()) throw OutOfRange("network has no segments");
  const std::vector<double> bounds = network.boundaries();
  if (!(s_global >= 0.0 && s_global <= bounds.back()))
    throw OutOfRange("position " + std::to_string(s_global) + " mm is outside the network");
  auto it = std::upper_bound(bounds.begin(), bounds.end(), s_global);
  std::size_t index = static_cast<std::size_t>(std::distance(bounds.begin(), it)) - 1;
  index = std::min(index, network.segments.size() - 1);
  return {index, s_global - bounds[index], s_global};
}

double effective_mu(double global_roll_deg, const Segment& bend) {
  return normalize_degrees(global_roll_deg - require_bend(bend).roll_deg);
}

}  // namespace ood
