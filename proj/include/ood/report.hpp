#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ood/pipe_geometry.hpp"
#include "ood/robot_model.hpp"
#include "ood/traversal.hpp"

namespace ood {

inline constexpr const char* kCsvHeader =
    "t_s,s_mm,segment,mu_deg,vA_mm_s,vB_mm_s,vC_mm_s,vR_mm_s,dA_mm,dB_mm,dC_mm,cA_mm,cB_mm,cC_mm,tau1,tau2,tau3";

inline constexpr const char* kReportFormatVersion = "ood-report/1";

/// Theoretical bend speeds for one robot orientation.
struct Table1Row {
  double mu_deg = 0.0;
  Triple ratios = Triple::Ones();
  Triple speeds_mm_s = Triple::Zero();
  double robot_speed_mm_s = 0.0;
};

std::vector<Table1Row> compute_table1(const PipeSpec& spec, const Bend& bend, const RobotParams& robot,
                                      std::span<const double> mu_list);
std::string table1_report(const PipeSpec& spec, const Bend& bend, const RobotParams& robot,
                          std::span<const double> mu_list);

/// Writes header + one row per trace row. Returns rows written.
std::size_t emit_csv(const TraversalTrace& trace, std::ostream& out);
/// Throws IoError when the file cannot be written.
std::size_t emit_csv(const TraversalTrace& trace, const std::filesystem::path& path);

struct SummaryOptions {
  double ape_bound_percent = 5.0;
  std::vector<std::string> segment_labels;
};

std::string summary_report(const TraversalSummary& summary, const SummaryOptions& options = {});
std::string timing_report(const TraversalSummary& summary);

/// Fixed-point decimal with `digits` fractional digits, independent of locale.
std::string format_fixed(double value, int digits = 6);

}  // namespace ood
