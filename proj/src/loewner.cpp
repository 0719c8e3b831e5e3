#include "bmcx/loewner.hpp"

#include <cmath>
#include <cstdio>

#include "bmcx/rng.hpp"

namespace bmcx {

namespace {

std::vector<double> uniform_grid(double T, double dt, std::size_t& steps) {
  if (!(T > 0.0) || !(dt > 0.0)) fail(errc::bad_config, "need T > 0 and dt > 0");
  steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  std::vector<double> ts(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) ts[k] = std::min(T, static_cast<double>(k) * dt);
  ts[steps] = T;
  return ts;
}

// sqrt branch for slit maps: prefer the upper half-plane; on the real axis
// continue on the side the point came from.
cplx slit_sqrt(cplx u, cplx from) {
  cplx v = std::sqrt(u);
  if (v.imag() < 0.0) v = -v;
  if (v.imag() == 0.0 && from.real() < 0.0) v = -v;
  return v;
}

}  // namespace

DrivingFunction DrivingFunction::zero(double T, double dt) {
  DrivingFunction d;
  d.kind = Kind::zero;
  d.dt = dt;
  std::size_t steps;
  d.times = uniform_grid(T, dt, steps);
  d.values.assign(d.times.size(), 0.0);
  return d;
}

DrivingFunction DrivingFunction::constant_driver(double c, double T, double dt) {
  DrivingFunction d = zero(T, dt);
  d.kind = Kind::constant;
  d.constant = c;
  d.values.assign(d.times.size(), c);
  return d;
}

DrivingFunction DrivingFunction::sle(double kappa, double T, double dt, std::uint64_t seed,
                                     std::uint64_t stream) {
  if (kappa < 0.0) fail(errc::bad_config, "kappa must be nonnegative");
  DrivingFunction d = zero(T, dt);
  d.kind = Kind::sle;
  d.kappa = kappa;
  PathRng rng(seed, stream);
  double g1 = 0.0, g2 = 0.0;
  bool have_spare = false;
  for (std::size_t k = 1; k < d.times.size(); ++k) {
    double g;
    if (have_spare) {
      g = g2;
      have_spare = false;
    } else {
      rng.normal_pair(g1, g2);
      g = g1;
      have_spare = true;
    }
    const double step = d.times[k] - d.times[k - 1];
    d.values[k] = d.values[k - 1] + std::sqrt(kappa * step) * g;
  }
  return d;
}

double DrivingFunction::at(double t) const {
  if (times.empty()) return 0.0;
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const std::size_t hi = static_cast<std::size_t>(std::ceil(t / dt));
  const std::size_t k = std::min(std::max<std::size_t>(hi, 1), times.size() - 1);
  const double t0 = times[k - 1], t1 = times[k];
  const double w = (t - t0) / (t1 - t0);
  return values[k - 1] * (1.0 - w) + values[k] * w;
}

FlowPoint chordal_forward(cplx z, const DrivingFunction& driver, double T, double dt,
                          double swallow_tol) {
  if (!(z.imag() > 0.0)) fail(errc::bad_config, "chordal flow needs Im z > 0");
  if (!(T > 0.0) || !(dt > 0.0)) fail(errc::bad_config, "need T > 0 and dt > 0");

  cplx g = z;
  double t = 0.0;
  if (std::abs(g - driver.at(0.0)) < swallow_tol) return Swallowed{0.0};
  // A single touch of the driving value is an exact pass-through: the frozen
  // slit step continues the point along the real axis, away from lambda.
  // Swallowing is declared when the point stays within tolerance of the
  // driver across consecutive steps (the driver has captured it).
  int near_hits = 0;
  while (t < T) {
    const double h = std::min(dt, T - t);
    const double l0 = driver.at(t);
    const double lm = driver.at(t + 0.5 * h);
    const double l1 = driver.at(t + h);
    // The frozen slit step is exact for a locally constant driver, so the
    // protection zone can be generous there; for moving drivers it only
    // needs to shield the RK4 stages from the singularity.
    const double freeze2 = (l0 == lm && lm == l1) ? 400.0 : 16.0;
    const cplx w = g - lm;
    if (std::norm(w) <= freeze2 * h) {
      g = lm + slit_sqrt(w * w + 4.0 * h, w);
    } else {
      const cplx k1 = 2.0 / (g - l0);
      const cplx k2 = 2.0 / (g + 0.5 * h * k1 - lm);
      const cplx k3 = 2.0 / (g + 0.5 * h * k2 - lm);
      const cplx k4 = 2.0 / (g + h * k3 - l1);
      g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t += h;
    if (std::abs(g - driver.at(t)) < swallow_tol) {
      if (++near_hits >= 2) return Swallowed{t};
    } else {
      near_hits = 0;
    }
  }
  return g;
}

FlowPoint radial_forward(cplx w, const DrivingFunction& angle_driver, double T, double dt,
                         double swallow_tol) {
  if (!(std::abs(w) < 1.0)) fail(errc::bad_config, "radial flow needs |w| < 1");
  if (!(T > 0.0) || !(dt > 0.0)) fail(errc::bad_config, "need T > 0 and dt > 0");

  auto lam = [&](double t) {
    const double th = angle_driver.at(t);
    return cplx(std::cos(th), std::sin(th));
  };
  cplx g = w;
  double t = 0.0;
  if (std::abs(g - lam(0.0)) < swallow_tol) return Swallowed{0.0};
  while (t < T) {
    const double h = std::min(dt, T - t);
    const cplx l0 = lam(t), lm = lam(t + 0.5 * h), l1 = lam(t + h);
    const cplx k1 = radial_vector_field(g, l0);
    const cplx k2 = radial_vector_field(g + 0.5 * h * k1, lm);
    const cplx k3 = radial_vector_field(g + 0.5 * h * k2, lm);
    const cplx k4 = radial_vector_field(g + h * k3, l1);
    const cplx g_next = g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (std::abs(g_next - lam(t)) < swallow_tol) return Swallowed{t};
    if (std::abs(g_next) < std::abs(g) - 1e-10) return Swallowed{t};  // left the trustworthy region
    g = g_next;
  }
  return g;
}

std::vector<TracePoint> chordal_trace(const DrivingFunction& driver, double T, double dt,
                                      int samples) {
  if (samples < 1) fail(errc::bad_config, "need at least one sample");
  std::size_t steps;
  const std::vector<double> ts = uniform_grid(T, dt, steps);
  std::vector<double> lam(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) lam[k] = driver.at(ts[k]);

  std::vector<TracePoint> out;
  out.reserve(samples);
  const std::size_t n = std::min<std::size_t>(samples, steps);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t k = (j * steps) / n;
    const double delta = ts[k] - ts[k - 1];
    cplx w = cplx(lam[k], 0.0) + cplx(0.0, 2.0 * std::sqrt(delta));
    for (std::size_t i = k - 1; i >= 1; --i) {
      const double d_i = ts[i] - ts[i - 1];
      const cplx u = w - lam[i];
      cplx v = std::sqrt(u * u - 4.0 * d_i);
      if (v.imag() < 0.0) v = -v;
      w = lam[i] + v;
    }
    out.push_back({ts[k], w});
  }
  return out;
}

cplx chordal_discrete_forward(const DrivingFunction& driver, double T, double dt, cplx z) {
  std::size_t steps;
  const std::vector<double> ts = uniform_grid(T, dt, steps);
  cplx g = z;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double delta = ts[k] - ts[k - 1];
    const double c = driver.at(ts[k]);
    const cplx u = g - c;
    g = c + slit_sqrt(u * u + 4.0 * delta, u);
  }
  return g;
}

std::string trace_to_csv(const std::vector<TracePoint>& pts) {
  std::string out = "t,re,im\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.t, p.z.real(), p.z.imag());
    out += buf;
  }
  return out;
}

std::string driver_to_csv(const DrivingFunction& d) {
  std::string out = "t,lambda\n";
  char buf[96];
  for (std::size_t k = 0; k < d.times.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", d.times[k], d.values[k]);
    out += buf;
  }
  return out;
}

}  // namespace bmcx
