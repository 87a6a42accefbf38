// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <dispmap/dispmap.hpp>

#include "oracles/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace dispmap;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SystemParams fig4(int n_c = 14) { return {-2005.0, -5.0, -200.0, -1.0, 1.0, 2, n_c}; }

Outcome vectorization() {
  const auto t0 = Clock::now();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  double worst = 0.0;
  auto compare = [&](const Matrix& h, const std::vector<CollapseTerm>& cs) {
    const Matrix l = build_superoperator(h, cs).data;
    const Matrix hu = extended_hamiltonian(h, cs).data;
    const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
    worst = std::max(worst, (Complex(0.0, -kTwoPi) * hu - l).cwiseAbs().maxCoeff() / scale);
  };
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 * 5;
    std::vector<CollapseTerm> cs;
    for (int j = 0; j < 2; ++j) cs.push_back({u(rng), oracle::random_matrix(n, rng)});
    compare(oracle::random_hermitian(n, rng), cs);
  }
  auto p = fig4(5);
  compare(system_hamiltonian(p, 12.5), {{p.kappa_c, resonator_lowering(p)}});
  const Matrix hu = build_extended_hamiltonian(p, 12.5).data;
  const Matrix l = build_superoperator(system_hamiltonian(p, 12.5), {{p.kappa_c, resonator_lowering(p)}}).data;
  worst = std::max(worst, (Complex(0.0, -kTwoPi) * hu - l).cwiseAbs().maxCoeff() /
                              std::max(1.0, l.cwiseAbs().maxCoeff()));
  const double rt = seconds_since(t0);
  return {worst <= 1e-12 && rt < 1.0,
          "max|diff|/max|L| = " + fmt("%.2e", worst) + " (tol 1e-12), runtime " + fmt("%.3f", rt) + " s"};
}

Outcome response() {
  const auto t0 = Clock::now();
  const auto p = fig4();
  const auto tr = solve_eta(p, PulseSpec::constant(20.1), 2000.0, 0.1);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, std::abs(tr.eta[i] - oracle::eta_step(p, 20.1, tr.times[i])));
  const auto sg = solve_eta(p, PulseSpec::square_gaussian(10.0, 1000.0, 100.0, 40.0), 2500.0, 0.1);
  std::vector<double> t_us, n;
  for (std::size_t i = 0; i < sg.size(); ++i) {
    if (sg.times[i] <= 1100.0) continue;
    t_us.push_back(sg.times[i] * 1e-3);
    n.push_back(sg.photon(i));
  }
  const double kappa_fit = -oracle::log_slope(t_us, n) / (2.0 * oracle::kPi);
  const double rel = std::abs(kappa_fit - p.kappa_c) / p.kappa_c;
  const double rt = seconds_since(t0);
  return {worst < 1e-8 && rel < 0.01 && rt < 1.0,
          "max|eta - closed form| = " + fmt("%.2e", worst) + " (tol 1e-8), fitted kappa " +
              fmt("%.6f", kappa_fit) + " MHz (rel " + fmt("%.1e", rel) + ", tol 1e-2), runtime " +
              fmt("%.3f", rt) + " s"};
}

Outcome calibration() {
  const SystemParams fig6{-2050.0, -50.0, -200.0, -1.0, 5.0, 2, 14};
  const double n6 = steady_state(fig6, 14.2).photons;
  const double omega4 = drive_for_photons(fig4(), 4.0);
  return {std::abs(n6 - 0.0201) <= 5e-4 && std::abs(omega4 - 20.1) <= 0.1,
          "n_ss(Fig. 6) = " + fmt("%.5f", n6) + " (0.0201 +- 5e-4), Omega(4 photons) = " +
              fmt("%.4f", omega4) + " MHz (20.1 +- 0.1)"};
}

Outcome gambetta() {
  SystemParams p{0.0, 0.0, 0.0, -2.0, 1.0, 2, 14};
  const double omega = 10.0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    p.delta_cd = -10.0 + 20.0 * i / 99.0;
    const double ours = rates(p, steady_state(p, omega).photons).dephasing;
    SystemParams shifted = p;
    shifted.delta_cd += p.chi_ac;
    worst = std::max(worst, std::abs(gambetta_rates(shifted, omega) - ours) / ours);
  }
  return {worst <= 1e-12, "max relative difference " + fmt("%.2e", worst) + " (tol 1e-12) over 100 points"};
}

Outcome benchmark_eig() {
  const auto t0 = Clock::now();
  const auto p = fig4();
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(20.1 * i / 11.0);
  const auto track = track_coherence(p, grid);
  const auto numeric = extract_rates(track, p);
  const double rt = seconds_since(t0);
  bool low_ok = true, monotone = true;
  double low_worst = 0.0, prev_dev = -1.0;
  std::ostringstream devs;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double n = track.photons[i];
    const double ratio = numeric[i].dephasing / rates(p, n).dephasing;
    const double dev = std::abs(ratio - 1.0);
    if (n <= 0.5) {
      low_worst = std::max(low_worst, dev);
      if (ratio < 0.95 || ratio > 1.05) low_ok = false;
    } else {
      if (!(dev > prev_dev)) monotone = false;
      prev_dev = dev;
      devs << fmt("%.1e", dev) << ' ';
    }
  }
  return {low_ok && monotone && rt < 120.0,
          "n <= 0.5: max |ratio - 1| = " + fmt("%.1e", low_worst) + " (tol 0.05); deviations above: " +
              devs.str() + (monotone ? "(monotone)" : "(NOT monotone)") + "; Omega_max = " +
              fmt("%.4f", grid.back()) + " MHz at n = " + fmt("%.3f", track.photons.back()) +
              ", runtime " + fmt("%.1f", rt) + " s"};
}

Outcome spectrum_properties() {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  double anti = 0.0;
  bool diag_zero = true, contracting = true;
  for (int draw = 0; draw < 500; ++draw) {
    double chi = u(rng);
    if (chi == 0.0) chi = 1.0;
    SystemParams p{0.0, u(rng), 0.0, chi, pos(rng), 4, 4};
    const double photon = pos(rng);
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; n <= 3; ++n) {
        const Complex e = effective_spectrum(p, m, n, photon).value;
        const Complex t = effective_spectrum(p, n, m, photon).value;
        anti = std::max(anti, std::abs(e + std::conj(t)) / std::max(1.0, std::abs(e)));
        if (m == n && e != Complex(0.0, 0.0)) diag_zero = false;
        if (m != n && !(e.imag() < 0.0)) contracting = false;
      }
  }
  return {diag_zero && contracting && anti <= 1e-12,
          std::string("E_nn == 0: ") + (diag_zero ? "yes" : "no") + ", antisymmetry " + fmt("%.1e", anti) +
              " (tol 1e-12), Im E < 0 off-diagonal: " + (contracting ? "yes" : "no") + " over 500 draws"};
}

Outcome cptp() {
  const SystemParams p{-2005.0, -5.0, -200.0, -1.0, 1.0, 3, 14};
  double lowest = 1e300;
  for (double t : {0.01, 0.1, 1.0}) lowest = std::min(lowest, choi_cptp_check(p, 10.0, t));
  Matrix mutant = map_multipliers(p, 10.0, 0.1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) mutant(a, b) /= std::norm(mutant(a, b));
  const double mutant_min = choi_min_eigenvalue(mutant);
  return {lowest >= -1e-10 && mutant_min < -1e-10,
          "min Choi eigenvalue " + fmt("%.2e", lowest) + " (>= -1e-10), sign-flipped mutant " +
              fmt("%.3e", mutant_min) + " (must be < -1e-10)"};
}

Outcome transient() {
  const SystemParams p{-2005.0, -5.0, -200.0, -1.0, 5.0, 2, 14};
  // constant drive, read at t = 10 / kappa_c (us)
  const auto step = solve_eta(p, PulseSpec::constant(50.0), 3000.0, 0.1);
  const std::vector<LevelPair> lv{{1, 0}, {0, 1}, {1, 1}};
  const auto cs = correlations_timedomain(step, p, lv);
  const auto i = static_cast<std::size_t>(std::llround(1e4 / p.kappa_c / step.dt));
  double limit = 0.0;
  for (const auto& l : lv) {
    const auto a = adiabatic_correlations(p, l.n_al, l.n_ar, step.photon(i));
    const auto& s = cs.at(l);
    for (auto [x, y] : {std::pair{s.a_ll[i], a.a_ll}, {s.a_rr[i], a.a_rr}, {s.b_lr[i], a.b_lr},
                        {s.c_lr[i], a.c_lr}})
      limit = std::max(limit, std::abs(x - y) / std::abs(y));
  }
  // SG pulse: derivative expansion against quadrature on the ramps
  const auto sg = solve_eta(p, PulseSpec::square_gaussian(50.0, 1000.0, 100.0, 50.0), 2000.0, 0.1);
  const auto q = correlations_timedomain(sg, p, {{1, 0}}).at({1, 0}).a_ll;
  double err[3] = {0, 0, 0};
  for (int order : {0, 2}) {
    const auto s = adiabatic_series_A(sg, p, 1, order);
    for (std::size_t k = 0; k < sg.size(); ++k) {
      const double t = sg.times[k];
      if (t <= 100.0 || (t >= 900.0 && t <= 1000.0)) err[order] = std::max(err[order], std::abs(s[k] - q[k]));
    }
  }
  const auto f = fourier_A(sg, p, 1, 131072);
  double fourier = 0.0;
  for (std::size_t k = 0; k < sg.size(); ++k) {
    const double t = sg.times[k];
    if (t >= 200.0 && t <= 800.0) fourier = std::max(fourier, std::abs(f[k] - q[k]) / std::abs(q[k]));
  }
  return {limit <= 1e-6 && err[2] < err[0] && fourier <= 1e-3,
          "adiabatic limit rel " + fmt("%.1e", limit) + " (tol 1e-6); ramp max-error order 2 " +
              fmt("%.3e", err[2]) + " vs order 0 " + fmt("%.3e", err[0]) + "; Fourier vs time domain " +
              fmt("%.1e", fourier) + " (tol 1e-3)"};
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const SystemParams p{0.0, -5.0, -200.0, -1.0, 1.0, 2, 10};
  const double n0 = 0.1;
  const double omega = drive_for_photons(p, n0);
  const auto pulse = PulseSpec::square_gaussian(omega, 1e6, 500.0, 200.0);
  const double gamma = rates(p, n0).dephasing;
  const double t_dephase = 1000.0 / (kTwoPi * gamma);
  const double t_end = std::ceil(3.0 * t_dephase / 1000.0) * 1000.0;
  const double dt = 0.125;

  Matrix rho = Matrix::Zero(20, 20);
  rho(0, 0) = rho(0, 10) = rho(10, 0) = rho(10, 10) = 0.5;
  PropagationOptions opts;
  opts.record_every_ns = 1000.0;
  const auto full = propagate(VectorizedState::from_density(rho), p, pulse, t_end, dt, opts);

  const auto traj = solve_eta(p, pulse, t_end, 0.5);
  std::vector<double> photon(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) photon[k] = traj.photon(k);
  Matrix q = Matrix::Constant(2, 2, 0.5);
  const auto eff = effective_map_apply(q, p, photon, traj.times);

  double worst = 0.0;
  for (std::size_t k = 0; k < full.times.size(); ++k) {
    const Matrix d = full.states[k].density();
    Complex r10 = 0.0;
    for (int c = 0; c < 10; ++c) r10 += d(10 + c, c);
    const auto idx = static_cast<std::size_t>(std::llround(full.times[k] / traj.dt));
    const double e = std::abs(eff[idx](1, 0));
    worst = std::max(worst, std::abs(std::abs(r10) - e) / e);
  }
  const double rt = seconds_since(t0);
  return {worst < 0.03 && rt < 60.0,
          "max relative |rho_10| deviation " + fmt("%.2e", worst) + " (tol 3e-2) over " +
              fmt("%.0f", t_end) + " ns = " + fmt("%.2f", t_end / t_dephase) +
              " dephasing times, trace drift " + fmt("%.1e", full.max_trace_drift) + ", runtime " +
              fmt("%.1f", rt) + " s"};
}

Outcome eigenstate_ordering() {
  const auto p = fig4();
  const double top = drive_for_photons(p, 0.04);
  std::vector<double> log_omega, inf0;
  bool ordered = true;
  for (int i = 0; i < 6; ++i) {
    const double omega = top * std::pow(10.0, -i / 5.0);
    const Complex eta = steady_state(p, omega).eta_ss;
    const auto h = build_extended_hamiltonian(p, omega);
    const auto exact = eigendecompose(h);
    double inf[3];
    for (int order = 0; order <= 2; ++order)
      inf[order] =
          eigenstate_fidelity(perturbative_eigenstate({1, 0}, p, eta, order), p, omega, h, exact).infidelity;
    if (!(inf[2] < inf[1] && inf[1] < inf[0])) ordered = false;
    log_omega.push_back(std::log(omega));
    inf0.push_back(inf[0]);
  }
  const double slope = oracle::log_slope(log_omega, inf0);
  return {ordered && std::abs(slope - 2.0) <= 0.4,
          std::string("ordering 2 < 1 < 0 at all 6 points: ") + (ordered ? "yes" : "no") +
              ", order-0 log-log slope " + fmt("%.4f", slope) + " (2 +- 0.4)"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"vectorization oracle", vectorization},
      {"response solver", response},
      {"photon calibration", calibration},
      {"gambetta equivalence", gambetta},
      {"drive-sweep diagonalization benchmark", benchmark_eig},
      {"spectrum properties", spectrum_properties},
      {"CPTP", cptp},
      {"transient consistency", transient},
      {"end-to-end propagation", end_to_end},
      {"eigenstate ordering", eigenstate_ordering},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s  criterion %2d  %-38s %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
