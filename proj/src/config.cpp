#include "ood/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ood/errors.hpp"

namespace ood {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_number(std::string_view text, std::size_t line, std::string_view key) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError(line, "value of '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
  return value;
}

// key=value pairs of one directive, consumed by name; leftovers are errors.
class Fields {
 public:
  Fields(const std::vector<std::string_view>& tokens, std::size_t first, std::size_t line) : line_(line) {
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const std::string_view tok = tokens[i];
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw ParseError(line, "expected key=value, got '" + std::string(tok) + "'");
      std::string key(tok.substr(0, eq));
      if (values_.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
      values_.emplace(std::move(key), tok.substr(eq + 1));
    }
  }

  void number(const char* key, double& out) {
    auto it = values_.find(key);
    if (it == values_.end()) return;
    out = parse_number(it->second, line_, key);
    values_.erase(it);
  }

  void integer(const char* key, int& out) {
    double v = out;
    number(key, v);
    if (v != static_cast<double>(static_cast<int>(v)))
      throw ParseError(line_, std::string("value of '") + key + "' must be an integer");
    out = static_cast<int>(v);
  }

  bool has(const char* key) const { return values_.count(key) != 0; }

  std::string_view text(const char* key) {
    auto it = values_.find(key);
    if (it == values_.end()) return {};
    std::string_view v = it->second;
    values_.erase(it);
    return v;
  }

  void require(const char* key) const {
    if (!has(key)) throw ParseError(line_, std::string("missing required key '") + key + "'");
  }

  void finish(std::string_view directive) const {
    if (!values_.empty())
      throw ParseError(line_, "unknown key '" + values_.begin()->first + "' for '" + std::string(directive) + "'");
  }

 private:
  std::size_t line_;
  std::map<std::string, std::string_view> values_;
};

void parse_inertias(std::string_view text, std::size_t line, Vector6<double>& out) {
  std::array<double, 6> values{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    if (count == values.size()) throw ParseError(line, "inertia takes exactly six values");
    values[count++] = parse_number(text.substr(start, end - start), line, "inertia");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != values.size()) throw ParseError(line, "inertia takes exactly six values");
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<int>(i)) = values[i];
}

int parse_track(std::string_view text, std::size_t line) {
  if (text == "A") return 0;
  if (text == "B") return 1;
  if (text == "C") return 2;
  throw ParseError(line, "fault track must be A, B or C");
}

void put(std::ostringstream& os, const char* key, double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  os << ' ' << key << '=' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  std::set<std::string> seen;
  bool any_directive = false;
  std::size_t last_content_line = 1;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<std::string_view> tokens = split_ws(line);
    if (tokens.empty()) continue;
    any_directive = true;
    last_content_line = line_no;

    const std::string directive(tokens[0]);
    if (directive != "segment") {
      if (seen.count(directive)) throw ParseError(line_no, "directive '" + directive + "' given twice");
      seen.insert(directive);
    }

    if (directive == "pipe") {
      Fields f(tokens, 1, line_no);
      f.require("r_mm");
      f.number("r_mm", config.network.spec.inner_radius_mm);
      f.finish(directive);
    } else if (directive == "robot") {
      Fields f(tokens, 1, line_no);
      RobotParams& r = config.robot;
      f.number("Ds_mm", r.sprocket_diameter_mm);
      f.number("LR_mm", r.length_mm);
      f.number("input_rpm", r.input_rpm);
      f.number("tau_Nmm", r.input_torque_Nmm);
      f.number("k", r.geartrain.k);
      f.number("j", r.geartrain.j);
      f.number("pi", r.pi);
      f.number("yz_mm", r.asym_yz_mm);
      f.number("xz_mm", r.asym_xz_mm);
      if (f.has("inertia")) parse_inertias(f.text("inertia"), line_no, r.geartrain.inertias);
      f.finish(directive);
    } else if (directive == "spring") {
      Fields f(tokens, 1, line_no);
      SpringModel& s = config.robot.spring;
      f.number("preload_mm", s.preload_mm);
      f.number("bend_extra_mm", s.bend_extra_mm);
      f.number("max_mm", s.max_compression_mm);
      f.number("threshold", s.deviation_threshold);
      f.finish(directive);
    } else if (directive == "sim") {
      Fields f(tokens, 1, line_no);
      f.number("mu_deg", config.initial_roll_deg);
      f.number("dt_s", config.dt_s);
      f.integer("stride", config.record_stride);
      f.finish(directive);
    } else if (directive == "fault") {
      Fields f(tokens, 1, line_no);
      TrackFault fault;
      f.require("track");
      fault.track = parse_track(f.text("track"), line_no);
      f.number("t0_s", fault.t_start_s);
      f.number("t1_s", fault.t_end_s);
      f.number("extra_mm_s", fault.extra_mm_s);
      f.finish(directive);
      config.fault = fault;
    } else if (directive == "segment") {
      if (tokens.size() < 2) throw ParseError(line_no, "segment needs a kind: straight or bend");
      Fields f(tokens, 2, line_no);
      if (tokens[1] == "straight") {
        Straight s;
        f.require("len_mm");
        f.number("len_mm", s.length_mm);
        f.finish("segment straight");
        config.network.segments.emplace_back(s);
      } else if (tokens[1] == "bend") {
        Bend b;
        f.require("theta_deg");
        f.require("R_mm");
        f.number("theta_deg", b.theta_deg);
        f.number("R_mm", b.radius_mm);
        f.number("roll_deg", b.roll_deg);
        f.finish("segment bend");
        config.network.segments.emplace_back(b);
      } else {
        throw ParseError(line_no, "unknown segment kind '" + std::string(tokens[1]) + "'");
      }
    } else {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
  }

  if (!any_directive) throw ParseError(last_content_line, "configuration is empty");
  if (!seen.count("pipe")) throw ParseError(last_content_line, "missing 'pipe' directive");
  config.validate();
  return config;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SimConfig& config) {
  std::ostringstream os;
  os << "pipe";
  put(os, "r_mm", config.network.spec.inner_radius_mm);
  os << "\nrobot";
  const RobotParams& r = config.robot;
  put(os, "Ds_mm", r.sprocket_diameter_mm);
  put(os, "LR_mm", r.length_mm);
  put(os, "input_rpm", r.input_rpm);
  put(os, "tau_Nmm", r.input_torque_Nmm);
  put(os, "k", r.geartrain.k);
  put(os, "j", r.geartrain.j);
  put(os, "pi", r.pi);
  put(os, "yz_mm", r.asym_yz_mm);
  put(os, "xz_mm", r.asym_xz_mm);
  std::ostringstream inertia;
  for (int i = 0; i < 6; ++i) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), r.geartrain.inertias(i));
    (void)ec;
    inertia << (i ? "," : "") << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
  }
  os << " inertia=" << inertia.str();
  os << "\nspring";
  put(os, "preload_mm", r.spring.preload_mm);
  put(os, "bend_extra_mm", r.spring.bend_extra_mm);
  put(os, "max_mm", r.spring.max_compression_mm);
  put(os, "threshold", r.spring.deviation_threshold);
  os << "\nsim";
  put(os, "mu_deg", config.initial_roll_deg);
  put(os, "dt_s", config.dt_s);
  os << " stride=" << config.record_stride;
  if (config.fault) {
    os << "\nfault track=" << "ABC"[config.fault->track];
    put(os, "t0_s", config.fault->t_start_s);
    put(os, "t1_s", config.fault->t_end_s);
    put(os, "extra_mm_s", config.fault->extra_mm_s);
  }
  for (const Segment& seg : config.network.segments) {
    if (const auto* s = std::get_if<Straight>(&seg)) {
      os << "\nsegment straight";
      put(os, "len_mm", s->length_mm);
    } else {
      const auto& b = std::get<Bend>(seg);
      os << "\nsegment bend";
      put(os, "theta_deg", b.theta_deg);
      put(os, "R_mm", b.radius_mm);
      put(os, "roll_deg", b.roll_deg);
    }
  }
  os << '\n';
  return os.str();
}

bool operator==(const SimConfig& a, const SimConfig& b) {
  const auto seg_eq = [](const Segment& x, const Segment& y) {
    if (x.index() != y.index()) return false;
    if (const auto* s = std::get_if<Straight>(&x)) return s->length_mm == std::get<Straight>(y).length_mm;
    const auto& p = std::get<Bend>(x);
    const auto& q = std::get<Bend>(y);
    return p.theta_deg == q.theta_deg && p.radius_mm == q.radius_mm && p.roll_deg == q.roll_deg;
  };
  if (a.network.segments.size() != b.network.segments.size()) return false;
  for (std::size_t i = 0; i < a.network.segments.size(); ++i)
    if (!seg_eq(a.network.segments[i], b.network.segments[i])) return false;
  const RobotParams& p = a.robot;
  const RobotParams& q = b.robot;
  const bool fault_eq =
      a.fault.has_value() == b.fault.has_value() &&
      (!a.fault || (a.fault->track == b.fault->track && a.fault->t_start_s == b.fault->t_start_s &&
                    a.fault->t_end_s == b.fault->t_end_s && a.fault->extra_mm_s == b.fault->extra_mm_s));
  return a.network.spec.inner_radius_mm == b.network.spec.inner_radius_mm &&
         p.sprocket_diameter_mm == q.sprocket_diameter_mm && p.length_mm == q.length_mm &&
         p.input_rpm == q.input_rpm && p.input_torque_Nmm == q.input_torque_Nmm && p.pi == q.pi &&
         p.geartrain.k == q.geartrain.k && p.geartrain.j == q.geartrain.j &&
         p.geartrain.inertias == q.geartrain.inertias && p.asym_yz_mm == q.asym_yz_mm &&
         p.asym_xz_mm == q.asym_xz_mm && p.spring.preload_mm == q.spring.preload_mm &&
         p.spring.bend_extra_mm == q.spring.bend_extra_mm &&
         p.spring.max_compression_mm == q.spring.max_compression_mm &&
         p.spring.deviation_threshold == q.spring.deviation_threshold &&
         a.initial_roll_deg == b.initial_roll_deg && a.dt_s == b.dt_s && a.record_stride == b.record_stride &&
         fault_eq;
}

}  // namespace ood
