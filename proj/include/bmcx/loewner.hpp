#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bmcx/extended.hpp"

namespace bmcx {

// Driving path on a uniform time grid. For the radial equations the values
// are the boundary angles theta(t) with lambda = e^{i theta}.
struct DrivingFunction {
  enum class Kind { zero, constant, sle };
  Kind kind = Kind::zero;
  double constant = 0.0;
  double kappa = 0.0;
  double dt = 1e-3;
  std::vector<double> times;
  std::vector<double> values;

  static DrivingFunction zero(double T, double dt);
  static DrivingFunction constant_driver(double c, double T, double dt);
  // lambda(t_k) = lambda(t_{k-1}) + N(0, kappa dt), lambda(0) = 0
  static DrivingFunction sle(double kappa, double T, double dt, std::uint64_t seed,
                             std::uint64_t stream = 0);

  double duration() const { return times.empty() ? 0.0 : times.back(); }
  double at(double t) const;  // linear interpolation, clamped to the grid
};

struct Swallowed {
  double time;
};
using FlowPoint = std::variant<cplx, Swallowed>;

inline bool is_swallowed(const FlowPoint& p) { return std::holds_alternative<Swallowed>(p); }

// Chordal map g_t from d/dt g = 2/(g - lambda), g_0 = z, Im z > 0. RK4 away
// from the singularity; inside |g-lambda|^2 <~ dt the step uses the exact
// frozen-driver slit map, which continues boundary points along the real
// axis instead of blowing up. Swallowed is declared when the point lands
// within swallow_tol of the driving value.
FlowPoint chordal_forward(cplx z, const DrivingFunction& driver, double T, double dt,
                          double swallow_tol = 1e-6);

// Radial map g_t from d/dt g = g (lambda + g)/(lambda - g) on the unit disk,
// lambda = e^{i theta(t)}. |g_t| is nondecreasing along the exact flow; a
// numerical decrease beyond 1e-10 marks the point swallowed.
FlowPoint radial_forward(cplx w, const DrivingFunction& angle_driver, double T, double dt,
                         double swallow_tol = 1e-6);

// vector fields of the two radial normalizations (unit disk vs whole plane);
// they are negatives of each other
inline cplx radial_vector_field(cplx g, cplx lambda) { return g * (lambda + g) / (lambda - g); }
inline cplx whole_plane_vector_field(cplx g, cplx lambda) { return -g * (lambda + g) / (lambda - g); }

struct TracePoint {
  double t;
  cplx z;
};

// Trace by composing elementary vertical-slit inverse maps (discrete Loewner
// chain); the tip at t_k approximates f_{t_k}(lambda(t_k)). `samples` output
// points are spread evenly over (0, T].
std::vector<TracePoint> chordal_trace(const DrivingFunction& driver, double T, double dt,
                                      int samples = 512);

// forward slit-map composition G_k(z) = g^{(k)} o ... o g^{(1)}(z) at the
// same discretization (used to check the hydrodynamic normalization)
cplx chordal_discrete_forward(const DrivingFunction& driver, double T, double dt, cplx z);

std::string trace_to_csv(const std::vector<TracePoint>& pts);
std::string driver_to_csv(const DrivingFunction& d);

}  // namespace bmcx
