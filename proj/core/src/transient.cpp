#include <dispmap/error.hpp>
#include <dispmap/transient.hpp>

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <string>

namespace dispmap {

const CorrelationSeries& CorrelationSet::at(LevelPair levels) const {
  for (const auto& s : series) {
    if (s.levels == levels) return s;
  }
  throw DomainError("level pair (" + std::to_string(levels.n_al) + ", " +
                    std::to_string(levels.n_ar) + ") not present in correlation set");
}

namespace {

using Series = std::vector<Complex>;

void check_trajectory(const ResonatorTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2) throw DomainError("trajectory needs at least two samples");
  if (traj.eta.size() != n || traj.eta_d1.size() != n || traj.eta_d2.size() != n ||
      traj.eta_d3.size() != n) {
    throw DomainError("trajectory series lengths differ");
  }
  if (!(traj.dt > 0.0)) throw DomainError("trajectory step must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(traj.times[i] - static_cast<double>(i) * traj.dt) > 1e-9 * (1.0 + traj.times[i])) {
      throw DomainError("trajectory grid is not uniform from t = 0");
    }
  }
  if (traj.eta[0] != 0.0) throw DomainError("correlations require eta(0) = 0");
}

// y' = a y + f(t) with f sampled on the grid together with f'.
struct Source {
  const Series& f;
  const Series& df;
};

Complex hermite_mid(const Source& s, std::size_t i, double h) {
  return 0.5 * (s.f[i] + s.f[i + 1]) + h / 8.0 * (s.df[i] - s.df[i + 1]);
}

Series integrate_forward(Complex a, const Source& s, double h) {
  const std::size_t n = s.f.size();
  Series y(n);
  y[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex fm = hermite_mid(s, i, h);
    const Complex k1 = a * y[i] + s.f[i];
    const Complex k2 = a * (y[i] + 0.5 * h * k1) + fm;
    const Complex k3 = a * (y[i] + 0.5 * h * k2) + fm;
    const Complex k4 = a * (y[i] + h * k3) + s.f[i + 1];
    y[i + 1] = y[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

// Bounded solution for Re(a) > 0. The terminal value treats the source as a local
// exponential f ~ e^{mu t}, mu = f'/f, for which y = -f / (a - mu) is exact.
Series integrate_backward(Complex a, const Source& s, double h) {
  const std::size_t n = s.f.size();
  Series y(n);
  const Complex f = s.f[n - 1];
  const Complex df = s.df[n - 1];
  const Complex den = a * f - df;
  y[n - 1] = (den == 0.0) ? -f / a : -f * f / den;
  const double g = -h;
  for (std::size_t i = n - 1; i > 0; --i) {
    const Complex fm = hermite_mid(s, i - 1, h);
    const Complex k1 = a * y[i] + s.f[i];
    const Complex k2 = a * (y[i] + 0.5 * g * k1) + fm;
    const Complex k3 = a * (y[i] + 0.5 * g * k2) + fm;
    const Complex k4 = a * (y[i] + g * k3) + s.f[i - 1];
    y[i - 1] = y[i] + g / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

Series integrate(Complex a, const Source& s, double h) {
  return a.real() > 0.0 ? integrate_backward(a, s, h) : integrate_forward(a, s, h);
}

Series conj_series(const Series& x) {
  Series out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::conj(x[i]);
  return out;
}

// P(D) = int^t eta*(t') e^{iD(t-t')} dt' solves P' = iD P + eta*.
Series kernel_p(Complex d, const Series& eta_c, const Series& deta_c, double h) {
  return integrate(kI * d, Source{eta_c, deta_c}, h);
}

// Q(D) = int^t eta(t') e^{-iD(t-t')} dt' solves Q' = -iD Q + eta.
Series kernel_q(Complex d, const Series& eta, const Series& deta, double h) {
  return integrate(-kI * d, Source{eta, deta}, h);
}

}  // namespace

CorrelationSet correlations_timedomain(const ResonatorTrajectory& traj, const SystemParams& p,
                                       const std::vector<LevelPair>& levels) {
  validate(p);
  check_trajectory(traj);
  const std::size_t n = traj.size();
  const double h = traj.dt;
  const Series& eta = traj.eta;
  const Series& deta = traj.eta_d1;
  const Series eta_c = conj_series(eta);
  const Series deta_c = conj_series(deta);

  CorrelationSet out;
  out.times = traj.times;
  for (const LevelPair lv : levels) {
    if (lv.n_al < 0 || lv.n_ar < 0) throw DomainError("qubit levels must be non-negative");
    const Complex dl = angular(detuning_left(p, lv.n_al));
    const Complex dr = angular(detuning_right(p, lv.n_ar));
    const Complex dd = dl - dr;
    if (dl == 0.0 || dr == 0.0 || dd == 0.0) {
      throw SingularityError("correlation functions need nonzero detunings and kappa_c > 0");
    }
    const Series p_l = kernel_p(dl, eta_c, deta_c, h);
    const Series q_l = kernel_q(dl, eta, deta, h);
    const Series p_r = kernel_p(dr, eta_c, deta_c, h);
    const Series q_r = kernel_q(dr, eta, deta, h);

    Series dq_l(n), dp_r(n);
    for (std::size_t i = 0; i < n; ++i) {
      dq_l[i] = eta[i] - kI * dl * q_l[i];
      dp_r[i] = eta_c[i] + kI * dr * p_r[i];
    }
    // R = int^t Q_l(t') e^{-i D_r (t - t')} dt',  S = int^t P_r(t') e^{i D_l (t - t')} dt'.
    const Series r = integrate(-kI * dr, Source{q_l, dq_l}, h);
    const Series s = integrate(kI * dl, Source{p_r, dp_r}, h);

    const double s1 = kRadPerNsPerMHz;
    const double s2 = s1 * s1;
    CorrelationSeries cs;
    cs.levels = lv;
    cs.a_ll.resize(n);
    cs.a_rr.resize(n);
    cs.b_lr.resize(n);
    cs.c_lr.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e = eta[i];
      const Complex ec = eta_c[i];
      cs.a_ll[i] = s1 * (e * p_l[i] - ec * q_l[i]) / (2.0 * kI);
      cs.a_rr[i] = s1 * (e * p_r[i] - ec * q_r[i]) / (2.0 * kI);
      cs.b_lr[i] = s2 * ((e * p_r[i] + ec * q_l[i]) / (2.0 * kI * dd) + p_r[i] * q_l[i]);
      cs.c_lr[i] = s2 * (kI / (2.0 * dd) * (ec * q_r[i] + e * p_l[i]) - 0.5 * (ec * r[i] + e * s[i]));
    }
    out.series.push_back(std::move(cs));
  }
  return out;
}

std::vector<Complex> adiabatic_series_A(const ResonatorTrajectory& traj, const SystemParams& p,
                                        int level, int order) {
  if (order < 0 || order > 2) {
    throw UnsupportedOrderError("adiabatic series order must be 0..2, got " +
                                std::to_string(order));
  }
  const Complex d = angular(detuning_left(p, level));
  if (d == 0.0) throw SingularityError("vanishing detuning in adiabatic series");
  const std::size_t n = traj.size();
  Series out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = traj.eta[i];
    Complex a = std::norm(e) / d;
    if (order >= 1) {
      const Complex e1 = traj.eta_d1[i];
      a += (e * std::conj(e1) - std::conj(e) * e1) / (2.0 * kI * d * d);
    }
    if (order >= 2) {
      const Complex e2 = traj.eta_d2[i];
      a -= (e * std::conj(e2) + std::conj(e) * e2) / (2.0 * d * d * d);
    }
    out[i] = kRadPerNsPerMHz * a;
  }
  return out;
}

namespace {

struct FftwPlan {
  fftw_plan plan = nullptr;
  ~FftwPlan() {
    if (plan != nullptr) fftw_destroy_plan(plan);
  }
};

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw NumericError("FFT buffer allocation failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  Complex* get() { return reinterpret_cast<Complex*>(data); }
  fftw_complex* data;
};

// Periodic solution of a spectral multiplier: ifft(fft(x) * kernel(nu_k)) with nu_k in rad/ns.
template <class Kernel>
Series spectral_apply(const Series& x, std::size_t n_freq, double dt, Kernel kernel) {
  FftwBuffer in(n_freq), spec(n_freq);
  FftwPlan fwd, bwd;
  fwd.plan = fftw_plan_dft_1d(static_cast<int>(n_freq), in.data, spec.data, FFTW_FORWARD,
                              FFTW_ESTIMATE);
  bwd.plan = fftw_plan_dft_1d(static_cast<int>(n_freq), spec.data, in.data, FFTW_BACKWARD,
                              FFTW_ESTIMATE);
  Complex* a = in.get();
  for (std::size_t i = 0; i < n_freq; ++i) a[i] = i < x.size() ? x[i] : Complex{};
  fftw_execute(fwd.plan);
  Complex* b = spec.get();
  const double base = kTwoPi / (static_cast<double>(n_freq) * dt);
  for (std::size_t k = 0; k < n_freq; ++k) {
    const double kk = k < n_freq / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(n_freq);
    b[k] *= kernel(base * kk);
  }
  fftw_execute(bwd.plan);
  Series out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a[i] / static_cast<double>(n_freq);
  return out;
}

}  // namespace

std::vector<Complex> fourier_A(const ResonatorTrajectory& traj, const SystemParams& p, int level,
                               std::size_t n_freq) {
  const std::size_t n = traj.size();
  if (n_freq == 0 || (n_freq & (n_freq - 1)) != 0) {
    throw DomainError("n_freq must be a power of two");
  }
  if (n_freq < n) throw DomainError("n_freq must cover the trajectory samples");
  const Complex d = angular(detuning_left(p, level));
  const double nyquist = std::numbers::pi / traj.dt;
  if (std::abs(d.real()) >= nyquist) {
    throw SamplingError("detuning " + std::to_string(std::abs(d.real())) +
                        " rad/ns is beyond the grid Nyquist frequency " +
                        std::to_string(nyquist) + " rad/ns");
  }
  const Series eta_c = conj_series(traj.eta);
  // The kernel (w + w' + 2D) / (2 (w + D)(w' + D)) splits into 1/(w + D) + 1/(w' + D), so the
  // double integral is a sum of products of single transforms.
  const Series f2 = spectral_apply(traj.eta, n_freq, traj.dt, [&](double nu) {
    return 1.0 / (nu + d);
  });
  const Series f1 = spectral_apply(eta_c, n_freq, traj.dt, [&](double nu) {
    return 1.0 / (d - nu);
  });
  Series out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kRadPerNsPerMHz * 0.5 * (traj.eta[i] * f1[i] + eta_c[i] * f2[i]);
  }
  return out;
}

GeneratorSeries effective_generator_timedep(const CorrelationSet& corr,
                                            const ResonatorTrajectory& traj,
                                            const SystemParams& p,
                                            const std::vector<LevelPair>& levels) {
  if (corr.times.size() != traj.size()) throw DomainError("correlation and trajectory grids differ");
  GeneratorSeries out;
  out.times = corr.times;
  out.levels = levels;
  const double chi = p.chi_ac;
  for (const LevelPair lv : levels) {
    const CorrelationSeries& cs = corr.at(lv);
    const double nl = lv.n_al;
    const double nr = lv.n_ar;
    std::vector<Complex> e(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      e[i] = 2.0 * chi * traj.photon(i) * (nl - nr) -
             4.0 * chi * chi * (cs.a_ll[i] * nl * nl - cs.a_rr[i] * nr * nr) +
             kI * 4.0 * chi * chi * p.kappa_c * (cs.b_lr[i] / 6.0 + cs.c_lr[i] / 2.0) * nl * nr;
    }
    out.values.push_back(std::move(e));
  }
  return out;
}

}  // namespace dispmap
