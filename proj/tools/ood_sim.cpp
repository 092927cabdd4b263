// ood_sim: command-line driver for the three-output differential climber.
//
//   ood_sim run   --config net.cfg [--mu 30] [--dt 0.01] [--out DIR] [--report all]
//   ood_sim table1 [--config net.cfg] [--mu 0,30,60] [--out DIR]
//   ood_sim sweep --config net.cfg --mu 0,30,60 [--out DIR] [--report all]
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure.

#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ood/config.hpp"
#include "ood/errors.hpp"
#include "ood/reference.hpp"
#include "ood/report.hpp"
#include "ood/traversal.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct RunManifest {
  std::string config_path;
  std::string out_dir = "out";
  std::string report = "all";
  std::vector<double> mu_list;
  std::optional<double> dt;
};

bool wants(const RunManifest& m, const char* what) { return m.report == "all" || m.report == what; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ood::IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ood::IoError("failed writing '" + path.string() + "'");
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ood::IoError("cannot create output directory '" + dir.string() + "'");
}

ood::SimConfig load(const RunManifest& m) {
  ood::SimConfig config = ood::load_config(m.config_path);
  if (m.dt) {
    config.dt_s = *m.dt;
    config.validate();
  }
  return config;
}

// First bend of the network, or the reference elbow when there is none.
std::pair<ood::PipeSpec, ood::Bend> table_geometry(const std::optional<ood::SimConfig>& config) {
  if (config) {
    for (const ood::Segment& seg : config->network.segments)
      if (const auto* b = std::get_if<ood::Bend>(&seg)) return {config->network.spec, *b};
    throw ood::ValidationError("table1 needs a network with at least one bend");
  }
  const ood::PipeNetwork ref = ood::reference::network();
  return {ref.spec, std::get<ood::Bend>(ref.segments[1])};
}

std::string mu_tag(double mu) { return "mu" + ood::format_fixed(ood::normalize_degrees(mu), 1); }

struct RunOutput {
  double mu = 0.0;
  std::string summary;
};

RunOutput run_one(const RunManifest& m, ood::SimConfig config, double mu) {
  config.initial_roll_deg = ood::normalize_degrees(mu);
  const auto [trace, summary] = ood::run(config);
  const fs::path dir(m.out_dir);
  const std::string tag = mu_tag(mu);
  RunOutput out{config.initial_roll_deg, ood::summary_report(summary)};
  if (wants(m, "telemetry")) ood::emit_csv(trace, dir / ("telemetry_" + tag + ".csv"));
  if (wants(m, "timings")) write_text(dir / ("timings_" + tag + ".txt"), ood::timing_report(summary));
  if (m.report == "all") write_text(dir / ("summary_" + tag + ".txt"), out.summary);
  return out;
}

int cmd_run(const RunManifest& m, bool concurrent) {
  const ood::SimConfig config = load(m);
  ensure_out_dir(m.out_dir);
  std::vector<double> mus = m.mu_list;
  if (mus.empty()) mus.push_back(config.initial_roll_deg);

  if (wants(m, "table1")) {
    const auto [spec, bend] = table_geometry(config);
    write_text(fs::path(m.out_dir) / "table1.txt", ood::table1_report(spec, bend, config.robot, mus));
  }

  std::vector<RunOutput> results;
  if (concurrent && mus.size() > 1) {
    std::vector<std::future<RunOutput>> jobs;
    for (const double mu : mus) jobs.push_back(std::async(std::launch::async, run_one, m, config, mu));
    for (auto& job : jobs) results.push_back(job.get());
  } else {
    for (const double mu : mus) results.push_back(run_one(m, config, mu));
  }
  for (const RunOutput& r : results) std::cout << "== mu " << ood::format_fixed(r.mu, 1) << " deg\n" << r.summary;
  return 0;
}

int cmd_table1(const RunManifest& m) {
  std::optional<ood::SimConfig> config;
  if (!m.config_path.empty()) config = load(m);
  std::vector<double> mus = m.mu_list;
  if (mus.empty()) mus = {0.0, 30.0, 60.0};
  const auto [spec, bend] = table_geometry(config);
  const ood::RobotParams robot = config ? config->robot : ood::reference::robot();
  const std::string text = ood::table1_report(spec, bend, robot, mus);
  std::cout << text;
  if (!m.out_dir.empty()) {
    ensure_out_dir(m.out_dir);
    write_text(fs::path(m.out_dir) / "table1.txt", text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-output open differential pipe-climber simulator"};
  app.require_subcommand(1);

  RunManifest manifest;
  const std::vector<std::string> reports{"table1", "timings", "telemetry", "all"};

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* cfg = sub->add_option("--config", manifest.config_path, "Configuration file");
    if (config_required) cfg->required();
    cfg->check(CLI::ExistingFile);
    sub->add_option("--mu", manifest.mu_list, "Robot roll(s) in degrees")->delimiter(',');
    sub->add_option("--out", manifest.out_dir, "Output directory");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate one traversal per --mu value");
  add_common(run, true);
  run->add_option("--dt", manifest.dt, "Time step in seconds");
  run->add_option("--report", manifest.report, "Reports to write")->check(CLI::IsMember(reports));

  CLI::App* sweep = app.add_subcommand("sweep", "Simulate a roll sweep concurrently");
  add_common(sweep, true);
  sweep->add_option("--dt", manifest.dt, "Time step in seconds");
  sweep->add_option("--report", manifest.report, "Reports to write")->check(CLI::IsMember(reports));

  CLI::App* table1 = app.add_subcommand("table1", "Print theoretical bend speeds");
  add_common(table1, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (table1->parsed()) {
      if (table1->count("--out") == 0) manifest.out_dir.clear();
      return cmd_table1(manifest);
    }
    if (sweep->parsed() && manifest.mu_list.empty()) manifest.mu_list = {0.0, 30.0, 60.0};
    return cmd_run(manifest, sweep->parsed());
  } catch (const ood::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ood::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
