#include "ood/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ood/errors.hpp"

namespace ood {

namespace {

constexpr std::array<char, 3> kModuleNames{'A', 'B', 'C'};

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string format_fixed(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  if (ec != std::errc()) return std::isnan(value) ? "nan" : "inf";
  return {buf.data(), ptr};
}

std::vector<Table1Row> compute_table1(const PipeSpec& spec, const Bend& bend, const RobotParams& robot,
                                      std::span<const double> mu_list) {
  const double v_robot = sprocket_to_track_speed(robot.equal_load_output_rpm(), robot);
  std::vector<Table1Row> rows;
  rows.reserve(mu_list.size());
  for (const double mu : mu_list) {
    Table1Row row;
    row.mu_deg = normalize_degrees(mu);
    row.ratios = track_speed_ratios(bend, row.mu_deg, spec);
    row.robot_speed_mm_s = v_robot;
    row.speeds_mm_s = v_robot * row.ratios;
    rows.push_back(row);
  }
  return rows;
}

std::string table1_report(const PipeSpec& spec, const Bend& bend, const RobotParams& robot,
                          std::span<const double> mu_list) {
  std::ostringstream os;
  os << "# " << kReportFormatVersion << " table1\n";
  os << "# r_mm=" << format_fixed(spec.inner_radius_mm, 3) << " R_mm=" << format_fixed(bend.radius_mm, 3)
     << " v_R_mm_s=" << format_fixed(sprocket_to_track_speed(robot.equal_load_output_rpm(), robot), 2) << '\n';
  os << pad("mu_deg", 8) << pad("ratio A:B:C", 24) << pad("vA_mm_s", 10) << pad("vB_mm_s", 10)
     << pad("vC_mm_s", 10) << "  role\n";
  for (const Table1Row& row : compute_table1(spec, bend, robot, mu_list)) {
    const std::string ratios = format_fixed(row.ratios(0), 3) + " : " + format_fixed(row.ratios(1), 3) + " : " +
                               format_fixed(row.ratios(2), 3);
    os << pad(format_fixed(row.mu_deg, 1), 8) << pad(ratios, 24);
    for (int m = 0; m < 3; ++m) os << pad(format_fixed(row.speeds_mm_s(m), 2), 10);
    os << "  ";
    for (int m = 0; m < 3; ++m) {
      const double g = row.ratios(m);
      const char* role = std::abs(g - 1.0) <= 1e-9 ? "center" : (g < 1.0 ? "inner" : "outer");
      os << kModuleNames[static_cast<std::size_t>(m)] << '=' << role << (m < 2 ? " " : "");
    }
    os << '\n';
  }
  return os.str();
}

std::size_t emit_csv(const TraversalTrace& trace, std::ostream& out) {
  out << kCsvHeader << '\n';
  std::string line;
  for (const TraceRow& row : trace.rows) {
    line.clear();
    line += format_fixed(row.t_s);
    line += ',';
    line += format_fixed(row.s_mm);
    line += ',';
    line += std::to_string(row.segment);
    line += ',';
    line += format_fixed(row.mu_deg);
    for (int m = 0; m < 3; ++m) {
      line += ',';
      line += format_fixed(row.v_track(m));
    }
    line += ',';
    line += format_fixed(row.v_robot);
    for (const Triple* triple : {&row.dist_track, &row.compression, &row.tau_out}) {
      for (int m = 0; m < 3; ++m) {
        line += ',';
        line += format_fixed((*triple)(m));
      }
    }
    out << line << '\n';
  }
  if (!out) throw IoError("failed writing CSV telemetry");
  return trace.rows.size();
}

std::size_t emit_csv(const TraversalTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::size_t n = emit_csv(trace, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return n;
}

std::string timing_report(const TraversalSummary& summary) {
  std::ostringstream os;
  os << "# " << kReportFormatVersion << " timings\n";
  os << pad("segment", 8) << pad("enter_s", 10) << pad("exit_s", 10) << pad("dur_s", 9) << pad("path_mm", 11)
     << pad("nominal_mm", 12) << pad("mean_mm_s", 11) << pad("expect_s", 10) << "  check\n";
  const std::vector<TimingRow> rows = segment_timing(summary);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TimingRow& r = rows[i];
    os << pad(std::to_string(r.segment_index), 8) << pad(format_fixed(r.enter_t, 3), 10)
       << pad(format_fixed(r.exit_t, 3), 10) << pad(format_fixed(r.duration_s, 3), 9)
       << pad(format_fixed(r.path_length_mm, 2), 11)
       << pad(format_fixed(summary.segment_times[i].nominal_length_mm, 2), 12)
       << pad(format_fixed(r.mean_speed_mm_s, 2), 11) << pad(format_fixed(r.analytic_duration_s, 3), 10) << "  "
       << (r.consistent ? "ok" : "MISMATCH") << '\n';
  }
  os << "total_time_s " << format_fixed(summary.total_time_s, 3) << "  path_mm "
     << format_fixed(summary.path_length_mm, 2) << "  v_R_mm_s " << format_fixed(summary.robot_speed_mm_s, 4)
     << '\n';
  return os.str();
}

std::string summary_report(const TraversalSummary& summary, const SummaryOptions& options) {
  std::ostringstream os;
  os << "# " << kReportFormatVersion << " summary\n";
  os << timing_report(summary);

  os << "track_distance_mm";
  for (int m = 0; m < 3; ++m)
    os << ' ' << kModuleNames[static_cast<std::size_t>(m)] << '=' << format_fixed(summary.track_distance_mm(m), 2);
  os << '\n';

  // Compression bounds are an invariant of the spring model; anything outside
  // [0, max] would be a bug and is flagged rather than printed silently.
  os << "compression_mm";
  for (int m = 0; m < 3; ++m) {
    os << ' ' << kModuleNames[static_cast<std::size_t>(m)] << "=[" << format_fixed(summary.min_compression_mm(m), 2)
       << ',' << format_fixed(summary.max_compression_mm(m), 2) << ']';
    if (summary.min_compression_mm(m) < 0.0) os << "!NEGATIVE";
  }
  os << "  max " << format_fixed(summary.steps ? summary.max_compression_mm.maxCoeff() : 0.0, 2) << '\n';

  os << "slip_drag_mm";
  for (int m = 0; m < 3; ++m)
    os << ' ' << kModuleNames[static_cast<std::size_t>(m)] << '=' << format_fixed(summary.slip_mm(m), 4);
  os << '\n';

  os << "ape_percent bound=" << format_fixed(options.ape_bound_percent, 1) << '\n';
  bool flagged = false;
  for (const SegmentSpeeds& sp : summary.segment_speeds) {
    std::string label = "segment " + std::to_string(sp.segment_index);
    if (sp.segment_index < options.segment_labels.size()) label += " (" + options.segment_labels[sp.segment_index] + ")";
    os << "  " << label << (sp.bend ? " bend" : " straight");
    for (int m = 0; m < 3; ++m) {
      const double a = sp.ape_percent(m);
      const bool over = std::abs(a) > options.ape_bound_percent;
      flagged = flagged || over;
      os << ' ' << kModuleNames[static_cast<std::size_t>(m)] << ": sim " << format_fixed(sp.simulated_mm_s(m), 2)
         << " theory " << format_fixed(sp.theory_mm_s(m), 2) << " ape " << format_fixed(a, 3)
         << (over ? " !OVER" : "");
    }
    os << '\n';
  }
  os << "ape_max_abs_percent";
  for (int m = 0; m < 3; ++m)
    os << ' ' << kModuleNames[static_cast<std::size_t>(m)] << '=' << format_fixed(summary.ape_per_track(m), 3);
  os << (flagged ? "  FLAGGED" : "  within bound") << '\n';
  return os.str();
}

}  // namespace ood
