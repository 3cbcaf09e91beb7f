// Copyright 2026 The backflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Sweeps the three channel families, writes CSV or
// JSON rows with shortest-round-trip float formatting (so identical configs
// produce byte-identical files), and exposes the verification and oracle
// suites as subcommands.
//
// Exit codes: 0 success, 2 invalid flags or runtime error, 3 check failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "backflow/backflow.hpp"
#include "checks.hpp"
#include "format.hpp"
#include "parallel.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace backflow;

constexpr const char* kDephasingHeader = "s,n_lqfi,n_lqu";
constexpr const char* kAmplitudeHeader = "lambda_over_gamma0,n_lqfi,n_lqu";
constexpr const char* kDepolarizingHeader = "nu,Upsilon,Q,U,dQdt,dUdt";
constexpr const char* kDephasingDetailHeader = "t,gamma,P,Q,U,dQdt,dUdt";
constexpr const char* kAmplitudeDetailHeader = "t,absR,Q,U,dQdt,dUdt";

// Threshold below which an accumulated measure is reported as "no backflow";
// the summary lines quote where each sweep first crosses it.
constexpr double kOnset = 1e-6;

struct CommonOpts {
  std::string out;  // empty = "<command>.<format>"
  std::string format = "csv";
  int threads = 1;
  int grid = 400;  // scan points for the increase-interval search
};

// Path of the key=value config file requested by whichever subcommand ran.
std::string g_config_path;

void add_config_flag(CLI::App* cmd) {
  cmd->add_option("--config", g_config_path,
                  "key=value file; explicit flags take precedence");
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "output path (default <command>.<format>)");
  cmd->add_option("--format", c.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "worker threads for sweep points")
      ->check(CLI::Range(1, 512));
  cmd->add_option("--grid", c.grid, "scan grid size for increase intervals")
      ->check(CLI::Range(100, 1000000));
  add_config_flag(cmd);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Fills unset options of the parsed subcommand from a key=value file. Done
// by hand because CLI11 only processes config files attached to the app that
// parse() was called on, not to subcommands. Explicit flags keep precedence
// (an option that already has a result is left alone); file values pass
// through the same validators as command-line values.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error(where + ": expected key=value");
    if (key == "config")
      throw std::runtime_error(where + ": config cannot nest config files");
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw std::runtime_error(where + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::string resolve_out(const CommonOpts& c, const std::string& command) {
  if (!c.out.empty()) return c.out;
  return command + (c.format == "csv" ? ".csv" : ".json");
}

void write_output(const std::string& path, const std::string& text) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  cli::write_text_file(path, text);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = a;
    return g;
  }
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        (a * (n - 1 - i) + b * i) / (n - 1);  // endpoints land exactly
  return g;
}

// ---------------------------------------------------------------------------
// Parameter sweeps (one accumulated-measure row per parameter value).

struct SweepRow {
  double x;  // swept parameter
  double n_q;
  double n_u;
};

struct SweepSummary {
  std::optional<double> first_x;  // onset of N_lqfi > kOnset
  std::optional<double> last_x;
  double peak_x = 0.0;
  double peak_q = 0.0;
  double peak_u = 0.0;
};

SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  for (const SweepRow& r : rows) {
    if (r.n_q > kOnset) {
      if (!s.first_x) s.first_x = r.x;
      s.last_x = r.x;
    }
    if (r.n_q > s.peak_q) {
      s.peak_x = r.x;
      s.peak_q = r.n_q;
      s.peak_u = r.n_u;
    }
  }
  return s;
}

void print_summary(const char* label, const SweepSummary& s) {
  if (s.first_x)
    std::printf("N_lqfi exceeds 1e-6 for %s in [%s, %s]\n", label,
                cli::format_double(*s.first_x).c_str(),
                cli::format_double(*s.last_x).c_str());
  else
    std::printf("N_lqfi never exceeds 1e-6 in this sweep\n");
  std::printf("peak: %s=%s N_lqfi=%s N_lqu=%s\n", label,
              cli::format_double(s.peak_x).c_str(),
              cli::format_double(s.peak_q).c_str(),
              cli::format_double(s.peak_u).c_str());
}

ordered_json summary_json(const SweepSummary& s) {
  ordered_json j;
  j["first_x_above_1e-6"] = s.first_x ? ordered_json(*s.first_x)
                                      : ordered_json(nullptr);
  j["last_x_above_1e-6"] = s.last_x ? ordered_json(*s.last_x)
                                    : ordered_json(nullptr);
  j["peak_x"] = s.peak_x;
  j["peak_n_lqfi"] = s.peak_q;
  j["peak_n_lqu"] = s.peak_u;
  return j;
}

// Emits either CSV rows or the {config, rows, report} JSON document.
void emit_sweep(const std::string& path, const CommonOpts& c,
                const ordered_json& config, const char* header,
                const char* x_name, const std::vector<SweepRow>& rows) {
  if (c.format == "csv") {
    cli::Csv csv;
    csv.header = header;
    for (const SweepRow& r : rows)
      csv.rows.push_back(cli::csv_line({r.x, r.n_q, r.n_u}));
    write_output(path, csv.render());
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["rows"] = ordered_json::array();
    for (const SweepRow& r : rows) {
      ordered_json row;
      row[x_name] = r.x;
      row["n_lqfi"] = r.n_q;
      row["n_lqu"] = r.n_u;
      doc["rows"].push_back(row);
    }
    doc["report"] = summary_json(summarize(rows));
    write_output(path, doc.dump(2) + "\n");
  }
  std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
}

// ---------------------------------------------------------------------------
// dephasing: accumulated backflow vs the spectral exponent s.

struct DephasingOpts {
  CommonOpts common;
  double s_min = 1.0;
  double s_max = 6.0;
  int s_steps = 50;
  double omega_c = 1.0;
  double t_max = 0.0;  // 0 = auto (30 / omega_c)
  std::string detail_dir;
  int detail_steps = 200;
};

std::vector<SweepRow> dephasing_rows(const DephasingOpts& o) {
  const std::vector<double> grid = linspace(o.s_min, o.s_max, o.s_steps);
  std::vector<SweepRow> rows(grid.size());
  cli::parallel_for(grid.size(), o.common.threads, [&](std::size_t i) {
    const ChannelSpec spec{DephasingParams{grid[i], o.omega_c}};
    const NonMarkovReport rep =
        channel_report(spec, 0.0, o.t_max, o.common.grid);
    rows[i] = SweepRow{grid[i], rep.n_lqfi, rep.n_lqu};
  });
  return rows;
}

void write_dephasing_detail(const DephasingOpts& o) {
  fs::create_directories(o.detail_dir);
  for (double s : linspace(o.s_min, o.s_max, o.s_steps)) {
    const DephasingParams p{s, o.omega_c};
    const ChannelSpec spec{p};
    const auto f_q = [&](double t) { return lqfi(evolve(spec, t)); };
    const auto f_u = [&](double t) { return lqu(evolve(spec, t)); };
    cli::Csv csv;
    csv.header = kDephasingDetailHeader;
    for (double t : linspace(0.0, o.t_max, o.detail_steps)) {
      const MeasurePair m = measures_from_eig(evolve(spec, t).eig());
      csv.rows.push_back(cli::csv_line(
          {t, dephasing_rate(t, p), dephasing_coherence(t, p), m.lqfi, m.lqu,
           derivative(f_q, t), derivative(f_u, t)}));
    }
    const std::string path =
        o.detail_dir + "/dephasing_s_" + cli::format_double(s) + ".csv";
    write_output(path, csv.render());
    std::printf("wrote %s (%d rows)\n", path.c_str(), o.detail_steps);
  }
}

int run_dephasing(DephasingOpts& o) {
  if (o.t_max <= 0.0) o.t_max = 30.0 / o.omega_c;
  const std::string path = resolve_out(o.common, "dephasing");

  ordered_json config;
  config["command"] = "dephasing";
  config["s_min"] = o.s_min;
  config["s_max"] = o.s_max;
  config["s_steps"] = o.s_steps;
  config["omega_c"] = o.omega_c;
  config["t_max"] = o.t_max;
  config["grid"] = o.common.grid;
  config["threads"] = o.common.threads;

  const std::vector<SweepRow> rows = dephasing_rows(o);
  emit_sweep(path, o.common, config, kDephasingHeader, "s", rows);
  print_summary("s", summarize(rows));
  if (!o.detail_dir.empty()) write_dephasing_detail(o);
  return 0;
}

// ---------------------------------------------------------------------------
// amplitude: accumulated backflow vs the coupling ratio lambda/gamma0.

struct AmplitudeOpts {
  CommonOpts common;
  double ratio_min = 0.1;
  double ratio_max = 1.0;
  int steps = 50;
  double gamma0 = 1.0;
  double delta = 0.0;
  double t_max = 0.0;  // 0 = auto (25 / gamma0)
  std::string detail_dir;
  int detail_steps = 200;
};

std::vector<SweepRow> amplitude_rows(const AmplitudeOpts& o) {
  const std::vector<double> grid = linspace(o.ratio_min, o.ratio_max, o.steps);
  std::vector<SweepRow> rows(grid.size());
  cli::parallel_for(grid.size(), o.common.threads, [&](std::size_t i) {
    const ChannelSpec spec{
        AmplitudeDampingParams{grid[i] * o.gamma0, o.gamma0, o.delta}};
    const NonMarkovReport rep =
        channel_report(spec, 0.0, o.t_max, o.common.grid);
    rows[i] = SweepRow{grid[i], rep.n_lqfi, rep.n_lqu};
  });
  return rows;
}

void write_amplitude_detail(const AmplitudeOpts& o) {
  fs::create_directories(o.detail_dir);
  for (double ratio : linspace(o.ratio_min, o.ratio_max, o.steps)) {
    const AmplitudeDampingParams p{ratio * o.gamma0, o.gamma0, o.delta};
    const ChannelSpec spec{p};
    const auto f_q = [&](double t) { return lqfi(evolve(spec, t)); };
    const auto f_u = [&](double t) { return lqu(evolve(spec, t)); };
    cli::Csv csv;
    csv.header = kAmplitudeDetailHeader;
    for (double t : linspace(0.0, o.t_max, o.detail_steps)) {
      const MeasurePair m = measures_from_eig(evolve(spec, t).eig());
      csv.rows.push_back(cli::csv_line({t, std::abs(ad_amplitude(t, p)),
                                        m.lqfi, m.lqu, derivative(f_q, t),
                                        derivative(f_u, t)}));
    }
    const std::string path =
        o.detail_dir + "/amplitude_ratio_" + cli::format_double(ratio) + ".csv";
    write_output(path, csv.render());
    std::printf("wrote %s (%d rows)\n", path.c_str(), o.detail_steps);
  }
}

int run_amplitude(AmplitudeOpts& o) {
  if (o.t_max <= 0.0) o.t_max = 25.0 / o.gamma0;
  const std::string path = resolve_out(o.common, "amplitude");

  ordered_json config;
  config["command"] = "amplitude";
  config["ratio_min"] = o.ratio_min;
  config["ratio_max"] = o.ratio_max;
  config["steps"] = o.steps;
  config["gamma0"] = o.gamma0;
  config["delta"] = o.delta;
  config["t_max"] = o.t_max;
  config["grid"] = o.common.grid;
  config["threads"] = o.common.threads;

  const std::vector<SweepRow> rows = amplitude_rows(o);
  emit_sweep(path, o.common, config, kAmplitudeHeader, "lambda_over_gamma0",
             rows);
  print_summary("lambda/gamma0", summarize(rows));
  if (!o.detail_dir.empty()) write_amplitude_detail(o);
  return 0;
}

// ---------------------------------------------------------------------------
// depolarizing: per-nu trajectory of both measures and their derivatives,
// plus the accumulated-measure report for the window.

struct DepolOpts {
  CommonOpts common;
  double mu = 3.0;
  double r1 = 0.6;
  double r2 = 0.4;
  double r3 = -0.2;
  double nu_max = 10.0;
  int steps = 1000;
};

struct DepolRow {
  double nu, upsilon, q, u, dq, du;
};

std::vector<DepolRow> depolarizing_rows(const DepolOpts& o,
                                        const DepolarizingParams& p) {
  const ChannelSpec spec{p};
  const auto f_q = [&](double nu) { return lqfi(evolve(spec, nu)); };
  const auto f_u = [&](double nu) { return lqu(evolve(spec, nu)); };
  const std::vector<double> grid = linspace(0.0, o.nu_max, o.steps);
  std::vector<DepolRow> rows(grid.size());
  cli::parallel_for(grid.size(), o.common.threads, [&](std::size_t i) {
    const double nu = grid[i];
    const MeasurePair m = measures_from_eig(evolve(spec, nu).eig());
    rows[i] = DepolRow{nu,      depol_memory(nu, p.mu),  m.lqfi,
                       m.lqu,   derivative(f_q, nu),     derivative(f_u, nu)};
  });
  return rows;
}

ordered_json intervals_json(const std::vector<IncreaseInterval>& intervals) {
  ordered_json arr = ordered_json::array();
  for (const IncreaseInterval& iv : intervals) {
    ordered_json j;
    j["start"] = iv.t_start;
    j["end"] = iv.t_end;
    j["delta"] = iv.delta;
    arr.push_back(j);
  }
  return arr;
}

int run_depolarizing(DepolOpts& o) {
  const DepolarizingParams p{o.mu, CorrelationTriple{o.r1, o.r2, o.r3}};
  const std::string path = resolve_out(o.common, "depolarizing");

  ordered_json config;
  config["command"] = "depolarizing";
  config["mu"] = o.mu;
  config["r1"] = o.r1;
  config["r2"] = o.r2;
  config["r3"] = o.r3;
  config["nu_max"] = o.nu_max;
  config["steps"] = o.steps;
  config["grid"] = o.common.grid;
  config["threads"] = o.common.threads;

  const std::vector<DepolRow> rows = depolarizing_rows(o, p);
  const NonMarkovReport rep =
      channel_report(ChannelSpec{p}, 0.0, o.nu_max, o.common.grid);

  if (o.common.format == "csv") {
    cli::Csv csv;
    csv.header = kDepolarizingHeader;
    for (const DepolRow& r : rows)
      csv.rows.push_back(
          cli::csv_line({r.nu, r.upsilon, r.q, r.u, r.dq, r.du}));
    write_output(path, csv.render());
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["rows"] = ordered_json::array();
    for (const DepolRow& r : rows) {
      ordered_json row;
      row["nu"] = r.nu;
      row["Upsilon"] = r.upsilon;
      row["Q"] = r.q;
      row["U"] = r.u;
      row["dQdt"] = r.dq;
      row["dUdt"] = r.du;
      doc["rows"].push_back(row);
    }
    ordered_json report;
    report["n_lqfi"] = rep.n_lqfi;
    report["n_lqu"] = rep.n_lqu;
    report["ratio"] = rep.ratio ? ordered_json(*rep.ratio)
                                : ordered_json(nullptr);
    report["q_intervals"] = intervals_json(rep.q_intervals);
    report["u_intervals"] = intervals_json(rep.u_intervals);
    doc["report"] = report;
    write_output(path, doc.dump(2) + "\n");
  }

  std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
  std::printf("N_lqfi=%s N_lqu=%s ratio=%s\n",
              cli::format_double(rep.n_lqfi).c_str(),
              cli::format_double(rep.n_lqu).c_str(),
              rep.ratio ? cli::format_double(*rep.ratio).c_str() : "n/a");
  std::printf("increase intervals: Q=%zu U=%zu\n", rep.q_intervals.size(),
              rep.u_intervals.size());
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: regenerate every figure data set into one directory.

struct SweepOpts {
  std::string out_dir = "figures";
  std::string format = "csv";
  int threads = 1;
  int grid = 400;
  int s_steps = 50;
  int ratio_steps = 50;
  int nu_steps = 1000;
};

int run_sweep(const SweepOpts& o) {
  fs::create_directories(o.out_dir);
  const std::string ext = o.format == "csv" ? ".csv" : ".json";

  DephasingOpts dep;
  dep.common = CommonOpts{o.out_dir + "/dephasing" + ext, o.format, o.threads,
                          o.grid};
  dep.s_steps = o.s_steps;
  run_dephasing(dep);

  AmplitudeOpts amp;
  amp.common = CommonOpts{o.out_dir + "/amplitude" + ext, o.format, o.threads,
                          o.grid};
  amp.steps = o.ratio_steps;
  run_amplitude(amp);

  for (double mu : {3.0, 5.0}) {
    DepolOpts depol;
    depol.common = CommonOpts{
        o.out_dir + "/depolarizing_mu" + cli::format_double(mu) + ext,
        o.format, o.threads, o.grid};
    depol.mu = mu;
    depol.steps = o.nu_steps;
    run_depolarizing(depol);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "backflow: non-Markovianity of open two-qubit dynamics via local "
      "quantum Fisher information and local quantum uncertainty"};
  app.require_subcommand(1);

  DephasingOpts dep;
  CLI::App* dep_cmd = app.add_subcommand(
      "dephasing", "sweep the spectral exponent s of the dephasing channel");
  dep_cmd->add_option("--s-min", dep.s_min, "lowest spectral exponent")
      ->check(CLI::PositiveNumber);
  dep_cmd->add_option("--s-max", dep.s_max, "highest spectral exponent")
      ->check(CLI::PositiveNumber);
  dep_cmd->add_option("--s-steps", dep.s_steps, "number of s values")
      ->check(CLI::Range(1, 100000));
  dep_cmd->add_option("--omega-c", dep.omega_c, "reservoir cutoff frequency")
      ->check(CLI::PositiveNumber);
  dep_cmd->add_option("--t-max", dep.t_max, "window end (default 30/omega_c)")
      ->check(CLI::PositiveNumber);
  dep_cmd->add_option("--detail-dir", dep.detail_dir,
                      "also write per-s trajectory files here");
  dep_cmd->add_option("--detail-steps", dep.detail_steps,
                      "rows per trajectory file")
      ->check(CLI::Range(2, 1000000));
  add_common(dep_cmd, dep.common);

  AmplitudeOpts amp;
  CLI::App* amp_cmd = app.add_subcommand(
      "amplitude",
      "sweep the coupling ratio lambda/gamma0 of the amplitude-damping "
      "channel");
  amp_cmd->add_option("--ratio-min", amp.ratio_min, "lowest lambda/gamma0")
      ->check(CLI::PositiveNumber);
  amp_cmd->add_option("--ratio-max", amp.ratio_max, "highest lambda/gamma0")
      ->check(CLI::PositiveNumber);
  amp_cmd->add_option("--steps", amp.steps, "number of ratio values")
      ->check(CLI::Range(1, 100000));
  amp_cmd->add_option("--gamma0", amp.gamma0, "coupling strength")
      ->check(CLI::PositiveNumber);
  amp_cmd->add_option("--delta", amp.delta, "detuning from reservoir center");
  amp_cmd->add_option("--t-max", amp.t_max, "window end (default 25/gamma0)")
      ->check(CLI::PositiveNumber);
  amp_cmd->add_option("--detail-dir", amp.detail_dir,
                      "also write per-ratio trajectory files here");
  amp_cmd->add_option("--detail-steps", amp.detail_steps,
                      "rows per trajectory file")
      ->check(CLI::Range(2, 1000000));
  add_common(amp_cmd, amp.common);

  DepolOpts depol;
  CLI::App* depol_cmd = app.add_subcommand(
      "depolarizing",
      "trace both measures along the depolarizing channel's dimensionless "
      "time nu");
  depol_cmd->add_option("--mu", depol.mu, "memory oscillation parameter")
      ->check(CLI::PositiveNumber);
  depol_cmd->add_option("--r1", depol.r1, "initial correlation r1");
  depol_cmd->add_option("--r2", depol.r2, "initial correlation r2");
  depol_cmd->add_option("--r3", depol.r3, "initial correlation r3");
  depol_cmd->add_option("--nu-max", depol.nu_max, "window end")
      ->check(CLI::PositiveNumber);
  depol_cmd->add_option("--steps", depol.steps, "number of nu rows")
      ->check(CLI::Range(2, 10000000));
  add_common(depol_cmd, depol.common);

  SweepOpts sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "regenerate all figure data sets with default parameters");
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory");
  sweep_cmd->add_option("--format", sweep.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads")
      ->check(CLI::Range(1, 512));
  sweep_cmd->add_option("--grid", sweep.grid, "scan grid size")
      ->check(CLI::Range(100, 1000000));
  sweep_cmd->add_option("--s-steps", sweep.s_steps, "dephasing sweep points")
      ->check(CLI::Range(1, 100000));
  sweep_cmd
      ->add_option("--ratio-steps", sweep.ratio_steps,
                   "amplitude sweep points")
      ->check(CLI::Range(1, 100000));
  sweep_cmd->add_option("--nu-steps", sweep.nu_steps, "depolarizing rows")
      ->check(CLI::Range(2, 10000000));
  add_config_flag(sweep_cmd);

  std::uint64_t verify_seed = 12345;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the invariant suites; nonzero exit on any failure");
  verify_cmd->add_option("--seed", verify_seed, "random-state seed");
  add_config_flag(verify_cmd);

  std::uint64_t oracle_seed = 12345;
  int oracle_states = 25;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle",
      "cross-check the eigenvalue formulas and the closed-form amplitude "
      "against their slow arbiters");
  oracle_cmd->add_option("--seed", oracle_seed, "random-state seed");
  oracle_cmd->add_option("--states", oracle_states, "random states to test")
      ->check(CLI::Range(1, 10000));
  add_config_flag(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!g_config_path.empty())
      apply_config(app.get_subcommands().front(), g_config_path);
    if (*dep_cmd) return run_dephasing(dep);
    if (*amp_cmd) return run_amplitude(amp);
    if (*depol_cmd) return run_depolarizing(depol);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*verify_cmd) return cli::report_checks(cli::run_verify_checks(verify_seed));
    if (*oracle_cmd)
      return cli::report_checks(
          cli::run_oracle_checks(oracle_seed, oracle_states));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
