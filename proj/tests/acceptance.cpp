#include "rydberg/blockade.hpp"
#include "rydberg/embedding.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/io.hpp"
#include "rydberg/mis.hpp"
#include "rydberg/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace rydberg;
using std::numbers::pi;

namespace {

const std::filesystem::path kInstances = std::filesystem::path(RYDBERG_DATA_DIR) / "instances";

// Tolerances and ranges, fixed.
constexpr double kAc1RbPiLo = 7.885, kAc1RbPiHi = 7.925;
constexpr double kAc1RbPi20Lo = 12.99, kAc1RbPi20Hi = 13.05;
constexpr int kAc2Draws = 1000;
constexpr double kAc2Tol = 1e-8;
constexpr int kAc3Points = 30;
constexpr double kAc3Tol = 0.05;
constexpr double kAc3Duration = 50.0;
constexpr double kLocalRatio = 3.0;
constexpr double kAc4RelTol = 0.03;
constexpr double kAc4Amplitudes[8] = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
constexpr std::size_t kFitCombinations = 61;
constexpr std::size_t kAc5MinCombinations = 20;
constexpr double kAc5Tol = 0.02;
constexpr double kFitDuration = 15.0;
constexpr double kFitDt = 0.01;
constexpr double kAc6Target = 3.475;
constexpr double kAc6RelTol = 0.10;
constexpr double kAc7Duration = 100.0;
constexpr double kAc7Connected = 0.8, kAc7Disconnected = 2.0;
constexpr double kAc7ViolationMax = 0.2;
constexpr double kAc7ShuffledLo = 0.6, kAc7ShuffledHi = 0.95;
constexpr double kAc7BrokenMin = 0.8;
constexpr double kAc7CorrelationMax = 0.2;
constexpr int kAc7Seeds = 10;
constexpr double kAc8SoftRatio = 10.0;

std::size_t g_threads = 1;
int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("AC%d %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

DriveScenario pair_scenario(DriveKind kind, double omega) {
  switch (kind) {
    case DriveKind::Sequential: return DriveScenario::sequential(omega);
    case DriveKind::Global: return DriveScenario::global(omega);
    case DriveKind::Local: {
      const double o0 = 2.0 * omega / (1.0 + kLocalRatio);
      return DriveScenario::local(o0, kLocalRatio * o0);
    }
  }
  throw ValidationError("unknown scenario");
}

double reference_omega(const DriveScenario& s) {
  return s.kind == DriveKind::Sequential ? s.omega1 : 0.5 * (s.omega0 + s.omega1);
}

void ac1() {
  const double a = rb_global(pi), b = rb_global(pi / 20);
  const bool pass = a >= kAc1RbPiLo && a <= kAc1RbPiHi && b >= kAc1RbPi20Lo && b <= kAc1RbPi20Hi;
  report(1, pass, "rb_global(pi)=" + f("%.4f", a) + " rb_global(pi/20)=" + f("%.4f", b));
}

void ac2() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ua(-10.0, 10.0), ub(0.0, 10.0);
  double worst = 0.0;
  int done = 0, failed = 0;
  while (done < kAc2Draws) {
    const FourLevelParams p{ua(rng), ub(rng), ua(rng)};
    if (p.b == 0.0) continue;
    try {
      if (cubic_invariants(p).p <= 0.0) continue;
      Eigen::SelfAdjointEigenSolver<RMatrix> solver(four_level_matrix(p));
      const auto e = symmetric_block_eigenvalues(p);
      std::vector<double> closed{p.a, e[0], e[1], e[2]};
      std::sort(closed.begin(), closed.end());
      for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(closed[i] - solver.eigenvalues()(i)));
    } catch (const NumericalError&) {
      ++failed;
    }
    ++done;
  }
  report(2, worst < kAc2Tol && failed == 0,
         "draws=" + std::to_string(done) + " max_abs_err=" + f("%.3e", worst) + " out_of_regime=" + std::to_string(failed));
}

void ac3() {
  const DriveKind kinds[] = {DriveKind::Sequential, DriveKind::Global, DriveKind::Local};
  std::vector<DriveScenario> jobs;
  for (DriveKind k : kinds)
    for (double omega : {1.0, 3.0}) jobs.push_back(pair_scenario(k, omega));
  const auto errs = parallel_map(jobs.size(), g_threads, [&](std::size_t j) {
    const DriveScenario& s = jobs[j];
    const double rb = rb_pi(reference_omega(s));
    double worst = 0.0;
    for (int p = 0; p < kAc3Points; ++p) {
      const double r = (0.5 + 1.5 * p / (kAc3Points - 1)) * rb;
      worst = std::max(worst, std::abs(simulate_prr(s, r, kAc3Duration) - prr_model(s, r)));
    }
    return worst;
  });
  bool pass = true;
  std::string detail;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    pass &= errs[j] <= kAc3Tol;
    detail += std::string(to_string(jobs[j].kind)) + "@" + f("%g", reference_omega(jobs[j])) + "=" + f("%.4f", errs[j]) + " ";
  }
  report(3, pass, "max_abs_err " + detail);
}

void ac4() {
  const DriveKind kinds[] = {DriveKind::Sequential, DriveKind::Global, DriveKind::Local};
  std::vector<DriveScenario> jobs;
  for (DriveKind k : kinds)
    for (double omega : kAc4Amplitudes) jobs.push_back(pair_scenario(k, omega));
  const auto rel = parallel_map(jobs.size(), g_threads, [&](std::size_t j) {
    return rb_from_simulation(jobs[j], kAc3Duration, 1e-4) / rb_model(jobs[j]) - 1.0;
  });
  bool pass = true;
  std::string detail;
  for (std::size_t k = 0; k < 3; ++k) {
    double worst = 0.0, at = 0.0;
    int bad = 0;
    for (std::size_t a = 0; a < 8; ++a) {
      const double e = std::abs(rel[k * 8 + a]);
      if (e > worst) {
        worst = e;
        at = kAc4Amplitudes[a];
      }
      bad += e > kAc4RelTol;
    }
    pass &= bad == 0;
    detail += std::string(to_string(kinds[k])) + ": worst " + f("%.2f%%", 100 * worst) + " at omega " + f("%g", at) +
              ", " + std::to_string(bad) + "/8 over; ";
  }
  report(4, pass, detail);
}

std::vector<SweepPoint> fit_sweep() {
  std::vector<double> r;
  for (int i = 0; i < 80; ++i) r.push_back(5.0 + 0.25 * i);
  const auto pairs = halton_amplitude_pairs(kFitCombinations);
  return run_fit_sweep(pairs, r, kFitDuration, kFitDt, g_threads);
}

void ac5(const std::vector<SweepPoint>& sweep) {
  double worst = 0.0;
  std::size_t within = 0;
  for (const auto& p : sweep) {
    worst = std::max(worst, p.max_residual);
    within += p.max_residual <= kAc5Tol;
  }
  const bool pass = sweep.size() >= kAc5MinCombinations && within == sweep.size();
  report(5, pass, "combinations=" + std::to_string(sweep.size()) + " within_0.02=" + std::to_string(within) +
                      " max_residual=" + f("%.4f", worst));
}

void ac6(const std::vector<SweepPoint>& sweep) {
  const double slope = sweep_slope(sweep);
  const std::size_t unimodal = std::count_if(sweep.begin(), sweep.end(), [](const SweepPoint& p) { return p.unimodal; });
  report(6, std::abs(slope / kAc6Target - 1.0) <= kAc6RelTol,
         "slope=" + f("%.4f", slope) + " target=3.475 rel_err=" + f("%.2f%%", 100 * std::abs(slope / kAc6Target - 1.0)) +
             " unimodal=" + std::to_string(unimodal) + "/" + std::to_string(sweep.size()));
}

void ac7() {
  const DiskGraph udg = parse_instance(kInstances / "star_udg.json").graph;
  const DiskGraph dg = parse_instance(kInstances / "star_dg.json").graph;
  const std::vector<double> ratios{kAc7Connected, kAc7Disconnected};

  struct Job {
    const DiskGraph* instance;
    EmbeddingProtocol protocol;
  };
  std::vector<Job> jobs{{&udg, {ProtocolKind::GlobalDrive, pi, 0.0, {}, 0.0, 0}},
                        {&dg, {ProtocolKind::LocalDrive, pi, pi / 20, {0, 4, 5}, 0.0, 0}}};
  for (int s = 0; s < kAc7Seeds; ++s) jobs.push_back({&dg, {ProtocolKind::ShuffledLocalDrive, pi, pi / 20, {}, 3.0 / 7.0, static_cast<std::uint64_t>(s)}});
  const auto reports = parallel_map(jobs.size(), g_threads, [&](std::size_t j) {
    return lambda_sweep(*jobs[j].instance, jobs[j].protocol, ratios, kAc7Duration, kDefaultDt, 1);
  });

  const double g08 = reports[0][0].violation, l08 = reports[1][0].violation;
  double shuffled_mean = 0.0, broken_min = std::min(reports[0][1].violation, reports[1][1].violation);
  for (int s = 0; s < kAc7Seeds; ++s) {
    shuffled_mean += reports[2 + s][0].violation / kAc7Seeds;
    broken_min = std::min(broken_min, reports[2 + s][1].violation);
  }
  const RMatrix& c = reports[1][0].correlation;
  const double corr_max = std::max({c(0, 4), c(0, 5), c(4, 5)});

  const bool a = g08 < kAc7ViolationMax && l08 < kAc7ViolationMax;
  const bool b = shuffled_mean >= kAc7ShuffledLo && shuffled_mean <= kAc7ShuffledHi;
  const bool d = broken_min > kAc7BrokenMin;
  const bool e = corr_max < kAc7CorrelationMax;
  report(7, a && b && d && e,
         "global@0.8=" + f("%.4f", g08) + " local@0.8=" + f("%.4f", l08) + (a ? " ok" : " FAIL") +
             "; shuffled_mean@0.8=" + f("%.4f", shuffled_mean) + (b ? " ok" : " FAIL (band 0.6-0.95)") +
             "; min@2=" + f("%.4f", broken_min) + (d ? " ok" : " FAIL") + "; local C(0-4,0-5,4-5) max=" +
             f("%.4f", corr_max) + (e ? " ok" : " FAIL"));
}

void ac8() {
  OptimizeBudget budget;
  budget.threads = g_threads;
  bool pass = true;
  std::string detail;
  for (const char* name : {"k23", "g3", "g4", "g5", "k16"}) {
    const Instance inst = parse_instance(kInstances / (std::string(name) + ".json"));
    const AbstractGraph g = inst.target();
    const MisReport l = optimize_drive(inst.graph, g, DriveMode::Local, {}, budget);
    const MisReport gl = optimize_drive(inst.graph, g, DriveMode::Global, {}, budget);
    const auto d0 = delta_k(l.p_mis, gl.p_mis);
    const bool ok = d0 && *d0 > 0.0 && l.violation_weight < gl.violation_weight;
    pass &= ok;
    const double ratio = gl.violation_weight / l.violation_weight;
    std::string soft;
    if (std::string(name) == "k23" || std::string(name) == "g4") soft = ratio > kAc8SoftRatio ? " (soft >10 met)" : " (soft >10 missed)";
    detail += std::string(name) + ": delta0=" + (d0 ? f("%.3f", *d0) : std::string("NA")) + " viol_ratio=" +
              f("%.3g", ratio) + soft + "; ";
  }
  report(8, pass, detail);
}

// Reduced versions of the unit-test property suites.
void ac9() {
  std::vector<std::string> failed;
  auto check = [&](const char* name, bool ok) {
    if (!ok) failed.push_back(name);
  };
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  {
    bool norm = true, energy = true, agree = true;
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t n = 2 + trial % 2;
      std::vector<Vec2> pos;
      std::vector<double> om, de;
      for (std::size_t i = 0; i < n; ++i) {
        pos.push_back({6.0 * static_cast<double>(i) + 4.0 * u(rng), 4.0 * u(rng)});
        om.push_back(0.5 + 2.5 * u(rng));
        de.push_back(-1.0 + 2.0 * u(rng));
      }
      const auto h = build_hamiltonian(AtomRegister(pos, om, de));
      const auto psi0 = QuantumState::all_ground(n);
      const auto traj = evolve(h, psi0, 20.0, 0.05);
      const double e0 = h.expectation(psi0.amplitudes());
      for (const auto& s : traj.states) {
        norm &= std::abs(s.amplitudes().norm() - 1.0) < 1e-9;
        energy &= std::abs(h.expectation(s.amplitudes()) - e0) <= 1e-8 * std::max(1.0, std::abs(e0));
      }
      const double scale = SpectralPropagator(h).energies().cwiseAbs().maxCoeff();
      const auto steps = static_cast<std::size_t>(std::ceil(0.05 / std::min(1e-3, 0.02 / scale)));
      const auto ref = evolve_reference(h, psi0, 20.0, 0.05 / static_cast<double>(steps), steps);
      for (std::size_t k = 0; k < traj.states.size(); ++k) {
        agree &= (traj.states[k].amplitudes() - ref.states[k].amplitudes()).cwiseAbs().maxCoeff() < 1e-6;
      }
    }
    check("norm", norm);
    check("energy", energy);
    check("spectral_vs_rk4", agree);
  }

  {
    bool mono = true;
    for (double omega : {0.3, 1.0, 3.0, 10.0}) {
      const std::vector<std::pair<double, std::function<double(double)>>> curves{
          {rb_sequential(omega, 0.0), [&](double r) { return prr_sequential(r, omega, 0.0); }},
          {rb_global(omega), [&](double r) { return prr_global_simplified(r, omega); }},
          {rb_local(omega, 0.5 * omega), [&](double r) { return prr_local(r, omega, 0.5 * omega); }}};
      for (const auto& [radius, fn] : curves) {
        double prev = -1.0;
        for (int i = 0; i < 200; ++i) {
          const double v = fn((0.3 + 2.7 * i / 199.0) * radius);
          mono &= v >= 0.0 && v <= 1.0 && v >= prev - 1e-12;
          prev = v;
        }
      }
    }
    check("prr_monotone", mono);
  }

  {
    const DiskGraph dg = star_instance(true);
    bool contain = true;
    for (double ratio : {0.8, 1.5}) {
      const std::vector<double> om{pi / 20, pi, pi, pi, pi / 20, pi / 20, pi};
      const AtomRegister base(dg.centers(), om, std::vector<double>(7, 0.0));
      const auto rep = embedding_metrics(scale_register(base, ratio * lambda_breaks(dg).lambda_c), dg.graph(), 30.0);
      for (const auto& [i, j] : dg.edges()) contain &= rep.violation >= rep.correlation(i, j) - 1e-12;
    }
    check("containment", contain);
  }

  {
    bool bounded = true;
    for (int i = 0; i < 10000; ++i) {
      const auto d = delta_k(i % 10 ? u(rng) : 0.0, i % 7 ? u(rng) : 0.0);
      bounded &= !d || std::abs(*d) <= 2.0;
    }
    check("delta_k_bound", bounded);
  }

  {
    bool mono = true, equiv = true;
    for (const char* name : {"k23", "g3", "g4", "g5", "k16"}) {
      const Instance inst = parse_instance(kInstances / (std::string(name) + ".json"));
      for (DriveMode m : {DriveMode::Local, DriveMode::Global}) {
        const auto rep = evaluate_drive(inst.graph, inst.target(), m, {0.3 + u(rng), 5.0 * u(rng)});
        for (std::size_t k = 1; k < rep.p_mis_k.size(); ++k) mono &= rep.p_mis_k[k] >= rep.p_mis_k[k - 1];
      }
    }
    const DiskGraph uniform({{0, 0}, {6, 0}, {12, 0}, {6, 6}, {0, 12}}, {8, 8, 8, 8, 8});
    for (int t = 0; t < 5; ++t) {
      const FinalDriveParams p{0.05 + 1.9 * u(rng), 10.0 * u(rng)};
      const auto a = evaluate_drive(uniform, uniform.graph(), DriveMode::Local, p);
      const auto b = evaluate_drive(uniform, uniform.graph(), DriveMode::Global, p);
      equiv &= std::abs(a.p_mis - b.p_mis) < 1e-9 && std::abs(a.violation_weight - b.violation_weight) < 1e-9;
    }
    check("p_mis_k_monotone", mono);
    check("local_global_equivalence", equiv);
  }

  {
    bool oracle = true;
    for (std::size_t n = 1; n <= 10; ++n) {
      for (int t = 0; t < 30; ++t) {
        std::vector<Edge> edges;
        const double p = u(rng);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (u(rng) < p) edges.emplace_back(i, j);
        const AbstractGraph g(n, edges);
        std::size_t best = 0;
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
          bool ok = true;
          for (const auto& [a, b] : edges) ok &= !(((s >> a) & 1u) && ((s >> b) & 1u));
          if (ok) best = std::max<std::size_t>(best, std::popcount(s));
        }
        oracle &= mis_enumerate(g).size == best;
      }
    }
    for (const char* name : {"k23", "g3", "g4", "g5", "k16", "p3"}) {
      const auto g = named_graph(name);
      std::size_t best = 0;
      for (std::uint32_t s = 0; s < (1u << g.n()); ++s)
        if (is_independent(g, VertexSet(s))) best = std::max<std::size_t>(best, std::popcount(s));
      oracle &= mis_enumerate(g).size == best;
    }
    check("mis_self_oracle", oracle);
  }

  std::string detail = failed.empty() ? "all 10 property groups hold" : "failed:";
  for (const auto& name : failed) detail += " " + name;
  report(9, failed.empty(), detail);
}

}  // namespace

int main() {
  g_threads = default_thread_count();
  auto guarded = [](int id, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("error: ") + e.what());
    }
  };
  guarded(1, ac1);
  guarded(2, ac2);
  guarded(3, ac3);
  guarded(4, ac4);
  std::vector<SweepPoint> sweep;
  guarded(5, [&] {
    sweep = fit_sweep();
    ac5(sweep);
  });
  guarded(6, [&] {
    if (sweep.empty()) throw NumericalError("fit sweep unavailable");
    ac6(sweep);
  });
  guarded(7, ac7);
  guarded(8, ac8);
  guarded(9, ac9);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
