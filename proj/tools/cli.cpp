#include "cli.hpp"

#include "rydberg/blockade.hpp"
#include "rydberg/embedding.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/io.hpp"
#include "rydberg/mis.hpp"
#include "rydberg/parallel.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>

namespace rydberg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string out;
  std::size_t threads = default_thread_count();
};

fs::path output_dir(const Common& c, const std::string& command) {
  fs::path root;
  if (!c.out.empty()) {
    root = c.out;
  } else if (const char* env = std::getenv(kOutputRootEnv); env && *env) {
    root = env;
  } else {
    root = "out";
  }
  return root / command;
}

void write_config(const fs::path& dir, const json& config) { write_json_file(dir / "config.json", config); }

std::string fmt(double v) { return format_number(v); }

// --- pair -------------------------------------------------------------------

struct PairOptions {
  std::vector<std::string> scenarios{"sequential", "global", "local"};
  std::vector<double> omegas{1.0, 3.0};
  double ratio = 3.0;
  double delta = 0.0;
  double duration = 50.0;
  double dt = 0.05;
  std::size_t points = 30;
  double r_min_factor = 0.5;
  double r_max_factor = 2.0;
  double tol = 1e-3;
};

DriveScenario make_scenario(DriveKind kind, double omega, double ratio, double delta) {
  switch (kind) {
    case DriveKind::Sequential: return DriveScenario::sequential(omega, delta);
    case DriveKind::Global: return DriveScenario::global(omega, delta);
    case DriveKind::Local: {
      // the pair averages to omega with omega1 / omega0 = ratio
      const double o0 = 2.0 * omega / (1.0 + ratio);
      return DriveScenario::local(o0, ratio * o0, delta);
    }
  }
  throw ValidationError("unknown scenario");
}

int run_pair(const Common& common, const PairOptions& o, std::ostream& out) {
  if (o.points < 2) throw ValidationError("pair: --points must be >= 2");
  if (!(o.ratio > 0.0)) throw ValidationError("pair: --ratio must be positive");
  if (!(o.r_max_factor > o.r_min_factor && o.r_min_factor > 0.0)) throw ValidationError("pair: invalid r range factors");
  std::vector<DriveScenario> jobs;
  for (const std::string& name : o.scenarios) {
    const DriveKind kind = drive_kind_from_string(name);
    if (kind != DriveKind::Sequential && o.delta != 0.0) {
      throw ValidationError("pair: the global and local models are defined at zero detuning only");
    }
    for (double omega : o.omegas) {
      if (!(omega > 0.0)) throw ValidationError("pair: amplitudes must be positive");
      jobs.push_back(make_scenario(kind, omega, o.ratio, o.delta));
    }
  }

  struct Result {
    std::vector<std::vector<std::string>> scan;
    std::vector<std::string> rb;
  };
  const auto results = parallel_map(jobs.size(), common.threads, [&](std::size_t i) {
    const DriveScenario& s = jobs[i];
    const double omega_ref = s.kind == DriveKind::Sequential ? s.omega1 : 0.5 * (s.omega0 + s.omega1);
    const double rb_ref = rb_pi(omega_ref);
    Result r;
    for (std::size_t p = 0; p < o.points; ++p) {
      const double f = o.r_min_factor + (o.r_max_factor - o.r_min_factor) * static_cast<double>(p) / static_cast<double>(o.points - 1);
      const double rr = f * rb_ref;
      r.scan.push_back({to_string(s.kind), fmt(s.omega0), fmt(s.omega1), fmt(s.delta), fmt(rr),
                        fmt(simulate_prr(s, rr, o.duration, o.dt)), fmt(prr_model(s, rr))});
    }
    const double rb_sim = rb_from_simulation(s, o.duration, o.tol, {0.0, 0.0, o.dt});
    r.rb = {to_string(s.kind), fmt(s.omega0), fmt(s.omega1), fmt(rb_sim), fmt(rb_model(s))};
    return r;
  });

  json config{{"command", "pair"},       {"version", kVersion},    {"scenarios", o.scenarios},
              {"omegas", o.omegas},      {"ratio", o.ratio},       {"delta", o.delta},
              {"duration", o.duration},  {"dt", o.dt},             {"points", o.points},
              {"r_min_factor", o.r_min_factor}, {"r_max_factor", o.r_max_factor}, {"tol", o.tol}};
  CsvTable scan({"scenario", "omega0", "omega1", "delta", "r_um", "prr_sim", "prr_model"});
  CsvTable rb({"scenario", "omega0", "omega1", "rb_sim_um", "rb_model_um"});
  for (const auto& r : results) {
    for (const auto& row : r.scan) scan.add_row(row);
    rb.add_row(r.rb);
  }
  const fs::path dir = output_dir(common, "pair");
  write_config(dir, config);
  scan.write(dir / "prr_scan.csv", config);
  rb.write(dir / "rb.csv", config);
  out << "wrote " << (dir / "prr_scan.csv").string() << " and " << (dir / "rb.csv").string() << "\n";
  return kExitOk;
}

// --- fit --------------------------------------------------------------------

struct FitOptions {
  std::size_t count = 61;
  double omega_min = 2.0;
  double omega_max = 20.0;
  double ratio_min = 0.4;
  double ratio_max = 1.0;
  double duration = 15.0;
  double dt = 0.01;
  double r_min = 5.0;
  double r_max = 24.75;
  double r_step = 0.25;
};

// First upward crossing of 0.5 on the sampled curve, linearly interpolated.
std::optional<double> sampled_crossing(const FitSample& s) {
  for (std::size_t i = 1; i < s.r_values.size(); ++i) {
    const double a = s.prr_values[i - 1] - 0.5, b = s.prr_values[i] - 0.5;
    if (a < 0.0 && b >= 0.0) return s.r_values[i - 1] + (s.r_values[i] - s.r_values[i - 1]) * (-a) / (b - a);
  }
  return std::nullopt;
}

int run_fit(const Common& common, const FitOptions& o, std::ostream& out) {
  if (o.count == 0) throw ValidationError("fit: --count must be positive");
  if (!(o.r_step > 0.0) || !(o.r_max > o.r_min) || !(o.r_min > 0.0)) throw ValidationError("fit: invalid r grid");
  std::vector<double> rs;
  for (std::size_t i = 0;; ++i) {
    const double r = o.r_min + static_cast<double>(i) * o.r_step;
    if (r > o.r_max + 1e-9) break;
    rs.push_back(r);
  }
  const auto pairs = halton_amplitude_pairs(o.count, o.omega_min, o.omega_max, o.ratio_min, o.ratio_max);

  struct Result {
    FitSample sample;
    GradientFit fit;
  };
  const auto results = parallel_map(pairs.size(), common.threads, [&](std::size_t i) {
    FitSample s = simulate_fit_sample(pairs[i].first, pairs[i].second, rs, o.duration, o.dt);
    const GradientFit f = fit_local_gradient(s);
    return Result{std::move(s), f};
  });

  CsvTable sweep({"omega0", "omega1", "inv_rb_eff", "grad_fit", "fluctuability_mean", "unimodal", "max_residual"});
  CsvTable resid({"omega0", "omega1", "r_um", "prr_sim", "prr_model", "fluctuability"});
  CsvTable radii({"omega0", "omega1", "rb_sim_um", "rb_model_um"});
  std::vector<SweepPoint> points;
  for (const auto& r : results) {
    const FitSample& s = r.sample;
    double worst = 0.0;
    for (std::size_t j = 0; j < s.r_values.size(); ++j) {
      const double model = prr_local(s.r_values[j], s.omega0, s.omega1);
      worst = std::max(worst, std::abs(model - s.prr_values[j]));
      resid.add_row({fmt(s.omega0), fmt(s.omega1), fmt(s.r_values[j]), fmt(s.prr_values[j]), fmt(model), fmt(s.fluctuability[j])});
    }
    const SweepPoint p{s.omega0, s.omega1, 1.0 / r.fit.rb_pi_eff, r.fit.slope, s.mean_fluctuability(), r.fit.unimodal, worst};
    points.push_back(p);
    sweep.add_row({fmt(p.omega0), fmt(p.omega1), fmt(p.inv_rb_eff), fmt(p.gradient), fmt(p.fluctuability_mean),
                   p.unimodal ? "1" : "0", fmt(p.max_residual)});
    const auto crossing = sampled_crossing(s);
    radii.add_row({fmt(s.omega0), fmt(s.omega1), crossing ? fmt(*crossing) : "NA", fmt(rb_local(s.omega0, s.omega1))});
  }
  const double slope = sweep_slope(points);

  json config{{"command", "fit"},        {"version", kVersion},     {"count", o.count},     {"omega_min", o.omega_min},
              {"omega_max", o.omega_max}, {"ratio_min", o.ratio_min}, {"ratio_max", o.ratio_max},
              {"duration", o.duration},  {"dt", o.dt},              {"r_min", o.r_min},     {"r_max", o.r_max},
              {"r_step", o.r_step}};
  const fs::path dir = output_dir(common, "fit");
  write_config(dir, config);
  sweep.write(dir / "gradient_sweep.csv", config);
  resid.write(dir / "residuals.csv", config);
  radii.write(dir / "rb_local.csv", config);
  write_json_file(dir / "summary.json", {{"slope", slope}, {"combinations", points.size()}, {"config_hash", config_hash(config)}});
  out << "slope " << fmt(slope) << " over " << points.size() << " combinations; wrote " << dir.string() << "\n";
  return kExitOk;
}

// --- embed ------------------------------------------------------------------

struct EmbedOptions {
  std::string instance;
  std::vector<std::string> protocols{"local"};
  std::vector<double> ratios{0.8, 2.0};
  double duration = 100.0;
  double dt = 0.05;
  double base_omega = std::numbers::pi;
  double special_omega = std::numbers::pi / 20.0;
  std::vector<std::size_t> special;
  double probability = 3.0 / 7.0;
  std::optional<std::uint64_t> seed;
  std::size_t draws = 1;
};

int run_embed(const Common& common, EmbedOptions o, std::ostream& out) {
  const Instance inst = parse_instance(o.instance);
  if (inst.target_edges && *inst.target_edges != inst.graph.edges()) {
    throw ValidationError("embed: target edges must equal the instance geometry");
  }
  if (o.draws == 0) throw ValidationError("embed: --draws must be positive");
  if (o.special.empty()) {
    // vertices drawn larger than the smallest disk carry the special amplitude
    const double r_min = *std::min_element(inst.graph.radii().begin(), inst.graph.radii().end());
    for (std::size_t v = 0; v < inst.graph.size(); ++v) {
      if (inst.graph.radii()[v] > r_min * (1.0 + 1e-9)) o.special.push_back(v);
    }
  }

  struct Job {
    EmbeddingProtocol protocol;
    std::string label;
  };
  std::vector<Job> jobs;
  for (const std::string& name : o.protocols) {
    EmbeddingProtocol p;
    p.kind = protocol_kind_from_string(name);
    p.base_omega = o.base_omega;
    p.special_omega = o.special_omega;
    p.special_vertices = o.special;
    p.probability = o.probability;
    if (p.kind == ProtocolKind::ShuffledLocalDrive) {
      if (!o.seed) throw ValidationError("embed: the shuffled protocol requires --seed");
      for (std::size_t d = 0; d < o.draws; ++d) {
        p.seed = *o.seed + d;
        jobs.push_back({p, name});
      }
    } else {
      jobs.push_back({p, name});
    }
  }
  for (const Job& j : jobs) j.protocol.validate();

  std::vector<std::vector<EmbeddingReport>> reports;
  for (const Job& j : jobs) reports.push_back(lambda_sweep(inst.graph, j.protocol, o.ratios, o.duration, o.dt, common.threads));

  json config{{"command", "embed"},        {"version", kVersion},       {"instance", inst.name},
              {"instance_path", o.instance}, {"protocols", o.protocols}, {"ratios", o.ratios},
              {"duration", o.duration},    {"dt", o.dt},                {"base_omega", o.base_omega},
              {"special_omega", o.special_omega}, {"special_vertices", o.special}, {"probability", o.probability},
              {"seed", o.seed ? json(*o.seed) : json(nullptr)}, {"draws", o.draws}};
  const fs::path dir = output_dir(common, "embed");
  write_config(dir, config);

  CsvTable violation({"protocol", "seed", "lambda_ratio", "violation"});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const bool shuffled = jobs[j].protocol.kind == ProtocolKind::ShuffledLocalDrive;
    const std::string seed = shuffled ? std::to_string(jobs[j].protocol.seed) : "";
    for (const EmbeddingReport& r : reports[j]) {
      violation.add_row({jobs[j].label, seed, fmt(r.lambda_ratio), fmt(r.violation)});
      std::vector<std::string> cols;
      for (Eigen::Index c = 0; c < r.correlation.cols(); ++c) cols.push_back("c" + std::to_string(c));
      CsvTable corr(cols);
      for (Eigen::Index a = 0; a < r.correlation.rows(); ++a) {
        std::vector<std::string> row;
        for (Eigen::Index b = 0; b < r.correlation.cols(); ++b) row.push_back(fmt(r.correlation(a, b)));
        corr.add_row(row);
      }
      std::string file = "correlation_" + jobs[j].label + (shuffled ? "_seed" + seed : "") + "_ratio" + fmt(r.lambda_ratio) + ".csv";
      corr.write(dir / file, config, {"protocol: " + jobs[j].label, "lambda_ratio: " + fmt(r.lambda_ratio)});
    }
  }
  violation.write(dir / "violation.csv", config);
  out << violation.render(config);
  return kExitOk;
}

// --- mis --------------------------------------------------------------------

struct MisOptions {
  std::vector<std::string> instances;
  std::vector<std::string> modes{"local", "global"};
  OptimizeBounds bounds;
  std::size_t grid = 21;
  std::size_t simplex_iterations = 300;
};

int run_mis(const Common& common, const MisOptions& o, std::ostream& out) {
  if (o.instances.empty()) throw ValidationError("mis: at least one --instance is required");
  o.bounds.validate();
  std::vector<DriveMode> modes;
  for (const auto& m : o.modes) modes.push_back(drive_mode_from_string(m));

  CsvTable reports({"instance", "mode", "kappa_opt", "delta_f_opt", "p_mis", "violation_weight", "ground_degeneracy", "informative"});
  CsvTable deltas({"instance", "k", "delta_k", "p_mis_k_local", "p_mis_k_global"});
  OptimizeBudget budget;
  budget.grid = o.grid;
  budget.simplex_iterations = o.simplex_iterations;
  budget.threads = common.threads;

  for (const std::string& path : o.instances) {
    const Instance inst = parse_instance(path);
    const AbstractGraph target = inst.target();
    std::map<DriveMode, MisReport> by_mode;
    for (DriveMode m : modes) {
      const MisReport r = optimize_drive(inst.graph, target, m, o.bounds, budget);
      reports.add_row({inst.name, to_string(m), fmt(r.params.kappa), fmt(r.params.delta_f), fmt(r.p_mis),
                       fmt(r.violation_weight), std::to_string(r.ground_degeneracy), r.informative ? "1" : "0"});
      by_mode.emplace(m, r);
    }
    if (by_mode.count(DriveMode::Local) && by_mode.count(DriveMode::Global)) {
      const auto& l = by_mode.at(DriveMode::Local).p_mis_k;
      const auto& g = by_mode.at(DriveMode::Global).p_mis_k;
      for (std::size_t k = 0; k < l.size(); ++k) {
        const auto d = delta_k(l[k], g[k]);
        deltas.add_row({inst.name, std::to_string(k), d ? fmt(*d) : "NA", fmt(l[k]), fmt(g[k])});
      }
    }
  }

  json config{{"command", "mis"},        {"version", kVersion},  {"instances", o.instances}, {"modes", o.modes},
              {"kappa_min", o.bounds.kappa_lo}, {"kappa_max", o.bounds.kappa_hi}, {"delta_min", o.bounds.delta_lo},
              {"delta_max", o.bounds.delta_hi}, {"grid", o.grid}, {"simplex_iterations", o.simplex_iterations}};
  const fs::path dir = output_dir(common, "mis");
  write_config(dir, config);
  reports.write(dir / "mis_reports.csv", config);
  deltas.write(dir / "delta_k.csv", config);
  out << reports.render(config) << deltas.render(config);
  return kExitOk;
}

// --- realize ----------------------------------------------------------------

struct RealizeCliOptions {
  std::string target;
  std::vector<double> palette;
  std::optional<std::uint64_t> seed;
  std::string name;
  std::string output;
  std::string description;
  RealizeOptions search;
};

int run_realize(const Common& common, RealizeCliOptions o, std::ostream& out, std::ostream& err) {
  if (!o.seed) throw ValidationError("realize: --seed is required");
  if (o.palette.empty()) throw ValidationError("realize: --palette is required");
  const AbstractGraph target = named_graph(o.target);
  o.search.threads = common.threads;
  const RealizeResult result = realize_disk(target, o.palette, *o.seed, o.search);
  const std::string name = o.name.empty() ? o.target : o.name;
  Instance inst{name, result.graph, std::nullopt, *o.seed, o.description};
  fs::path path = o.output.empty() ? output_dir(common, "realize") / (name + ".json") : fs::path(o.output);

  json config{{"command", "realize"}, {"version", kVersion}, {"target", o.target}, {"palette", o.palette},
              {"seed", *o.seed},      {"iterations", o.search.iterations}, {"restarts", o.search.restarts},
              {"margin", o.search.margin}};
  if (!result.success) {
    path.replace_extension(".failed.json");
    write_instance(path, inst);
    err << json{{"error",
                 {{"kind", "numerical"},
                  {"message", "realize: no realization met the margins within the iteration budget"},
                  {"violations", result.violations},
                  {"best_found", path.string()}}}}
               .dump()
        << "\n";
    return kExitNumerical;
  }
  inst.target_edges = target.edges();
  write_instance(path, inst);
  // sidecar named after the instance file
  fs::path sidecar = path;
  sidecar.replace_extension(".config.json");
  write_json_file(sidecar, config);
  out << "wrote " << path.string() << " (margin " << fmt(realization_margin(result.graph, target)) << ")\n";
  return kExitOk;
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rydberg blockade modelling, disk-graph embedding and MIS drive optimisation"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out, std::string("Output root (default: $") + kOutputRootEnv + " or ./out)");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);

  PairOptions pair;
  auto* pair_cmd = app.add_subcommand("pair", "Two-atom P_RR scans and blockade-radius extraction");
  pair_cmd->add_option("--scenario", pair.scenarios, "sequential, global, local")->delimiter(',');
  pair_cmd->add_option("--omega", pair.omegas, "Amplitudes (rad/us); the local pair averages to each")->delimiter(',');
  pair_cmd->add_option("--ratio", pair.ratio, "Local drive omega1/omega0");
  pair_cmd->add_option("--delta", pair.delta, "Detuning (rad/us), sequential only");
  pair_cmd->add_option("--duration", pair.duration, "Quench duration (us)");
  pair_cmd->add_option("--dt", pair.dt, "Sampling step (us)");
  pair_cmd->add_option("--points", pair.points, "r grid points");
  pair_cmd->add_option("--r-min-factor", pair.r_min_factor, "Grid start in units of (C6/omega)^(1/6)");
  pair_cmd->add_option("--r-max-factor", pair.r_max_factor, "Grid end in units of (C6/omega)^(1/6)");
  pair_cmd->add_option("--tol", pair.tol, "Bisection tolerance (um)");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Local-drive gradient fit over an amplitude sweep");
  fit_cmd->add_option("--count", fit.count, "Number of (omega0, omega1) combinations");
  fit_cmd->add_option("--omega-min", fit.omega_min);
  fit_cmd->add_option("--omega-max", fit.omega_max);
  fit_cmd->add_option("--ratio-min", fit.ratio_min);
  fit_cmd->add_option("--ratio-max", fit.ratio_max);
  fit_cmd->add_option("--duration", fit.duration, "Quench duration (us)");
  fit_cmd->add_option("--dt", fit.dt, "Sampling step (us)");
  fit_cmd->add_option("--r-min", fit.r_min);
  fit_cmd->add_option("--r-max", fit.r_max);
  fit_cmd->add_option("--r-step", fit.r_step);

  EmbedOptions embed;
  std::uint64_t embed_seed = 0;
  auto* embed_cmd = app.add_subcommand("embed", "Violation and correlation sweeps over lambda / lambda_c");
  embed_cmd->add_option("--instance", embed.instance, "Instance JSON")->required();
  embed_cmd->add_option("--protocol", embed.protocols, "global, local, shuffled")->delimiter(',');
  embed_cmd->add_option("--ratios", embed.ratios, "lambda / lambda_c values")->delimiter(',');
  embed_cmd->add_option("--duration", embed.duration, "Quench duration (us)");
  embed_cmd->add_option("--dt", embed.dt, "Sampling step (us)");
  embed_cmd->add_option("--base-omega", embed.base_omega);
  embed_cmd->add_option("--special-omega", embed.special_omega);
  embed_cmd->add_option("--special", embed.special, "Special vertices (default: radius above the minimum)")->delimiter(',');
  embed_cmd->add_option("--probability", embed.probability, "Shuffled special-amplitude probability");
  auto* seed_opt = embed_cmd->add_option("--seed", embed_seed, "Seed of the first shuffled draw");
  embed_cmd->add_option("--draws", embed.draws, "Shuffled draws (seeds seed, seed+1, ...)");

  MisOptions mis;
  auto* mis_cmd = app.add_subcommand("mis", "Optimise (kappa, delta_f) per drive mode and report P_MIS-k");
  mis_cmd->add_option("--instance", mis.instances, "Instance JSON files")->delimiter(',')->required();
  mis_cmd->add_option("--modes", mis.modes, "local, global")->delimiter(',');
  mis_cmd->add_option("--kappa-min", mis.bounds.kappa_lo);
  mis_cmd->add_option("--kappa-max", mis.bounds.kappa_hi);
  mis_cmd->add_option("--delta-min", mis.bounds.delta_lo);
  mis_cmd->add_option("--delta-max", mis.bounds.delta_hi);
  mis_cmd->add_option("--grid", mis.grid, "Grid points per axis");
  mis_cmd->add_option("--simplex-iterations", mis.simplex_iterations);

  RealizeCliOptions realize;
  std::uint64_t realize_seed = 0;
  auto* realize_cmd = app.add_subcommand("realize", "Search disk coordinates for a target graph");
  realize_cmd->add_option("--target", realize.target, "k23, g3, g4, g5, k16, p3")->required();
  realize_cmd->add_option("--palette", realize.palette, "Radii (um)")->delimiter(',')->required();
  auto* realize_seed_opt = realize_cmd->add_option("--seed", realize_seed, "Master seed")->required();
  realize_cmd->add_option("--name", realize.name);
  realize_cmd->add_option("--output", realize.output, "Instance file to write");
  realize_cmd->add_option("--description", realize.description);
  realize_cmd->add_option("--iterations", realize.search.iterations);
  realize_cmd->add_option("--restarts", realize.search.restarts);
  realize_cmd->add_option("--margin", realize.search.margin);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  }
  if (seed_opt->count() > 0) embed.seed = embed_seed;
  if (realize_seed_opt->count() > 0) realize.seed = realize_seed;

  try {
    if (*pair_cmd) return run_pair(common, pair, out);
    if (*fit_cmd) return run_fit(common, fit, out);
    if (*embed_cmd) return run_embed(common, embed, out);
    if (*mis_cmd) return run_mis(common, mis, out);
    if (*realize_cmd) return run_realize(common, realize, out, err);
  } catch (const ValidationError& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    report_error(err, "numerical", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    report_error(err, "io", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace rydberg::cli
