// SPDX-License-Identifier: Apache-2.0

// Fixed-step integration of the Rossler system
//
//   dx/dt = -y - z
//   dy/dt = x + a*y
//   dz/dt = b + z*(x - c)
//
// with Kutta's classical third-order Runge-Kutta scheme. Everything is
// binary64 with a fixed evaluation order so trajectories are reproducible
// bit for bit (build with -ffp-contract=off; see CMakeLists.txt).

#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <span>
#include <vector>

#include "chaos_prng/errors.hpp"

namespace chaos_prng {

struct SystemParams {
  double a = 0.2;
  double b = 0.2;
  double c = 5.7;

  /// Coefficients in the chaotic regime.
  static constexpr SystemParams chaotic() { return {0.2, 0.2, 5.7}; }

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) ||
        !std::isfinite(b) || !std::isfinite(c)) {
      throw DomainError("Rossler coefficients a, b, c must be positive and finite");
    }
  }
};

struct State3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const State3&, const State3&) = default;
};

struct StepConfig {
  double h = 0.01;

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw DomainError("step size h must be positive and finite");
    }
  }
};

/// Components with a magnitude above this are treated as an escape from the
/// attractor.
inline constexpr double kDivergenceBound = 1e6;

inline bool within_bound(const State3& s) noexcept {
  auto ok = [](double v) { return std::isfinite(v) && std::fabs(v) <= kDivergenceBound; };
  return ok(s.x) && ok(s.y) && ok(s.z);
}

inline State3 derivative(const State3& s, const SystemParams& p) noexcept {
  return {-s.y - s.z, s.x + p.a * s.y, p.b + s.z * (s.x - p.c)};
}

/// The shipped vector field. Tests substitute any callable
/// `State3(const State3&)`.
struct RosslerField {
  SystemParams params;
  State3 operator()(const State3& s) const noexcept { return derivative(s, params); }
};

namespace detail {

inline State3 axpy(const State3& s, double h, const State3& k) noexcept {
  return {s.x + h * k.x, s.y + h * k.y, s.z + h * k.z};
}

}  // namespace detail

/// One step of Kutta's third-order method:
///   k1 = f(s), k2 = f(s + h/2 k1), k3 = f(s + h(-k1 + 2 k2)),
///   s' = s + h/6 (k1 + 4 k2 + k3).
/// Throws DivergenceError (iteration 0) when the result leaves the bound.
template <typename Field>
  requires std::invocable<Field&, const State3&>
State3 rk3_step(const State3& s, Field&& field, double h) {
  const State3 k1 = field(s);
  const State3 k2 = field(detail::axpy(s, h / 2.0, k1));
  const State3 mid{-k1.x + 2.0 * k2.x, -k1.y + 2.0 * k2.y, -k1.z + 2.0 * k2.z};
  const State3 k3 = field(detail::axpy(s, h, mid));
  const double w = h / 6.0;
  const State3 next{s.x + w * ((k1.x + 4.0 * k2.x) + k3.x),
                    s.y + w * ((k1.y + 4.0 * k2.y) + k3.y),
                    s.z + w * ((k1.z + 4.0 * k2.z) + k3.z)};
  if (!within_bound(next)) {
    throw DivergenceError("trajectory diverged", 0);
  }
  return next;
}

inline State3 rk3_step(const State3& s, const SystemParams& p, double h) {
  return rk3_step(s, RosslerField{p}, h);
}

/// Applies `n` RK3 steps. A DivergenceError carries the 1-based index of
/// the step that failed.
template <typename Field>
  requires std::invocable<Field&, const State3&>
State3 integrate(State3 s, Field&& field, double h, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    try {
      s = rk3_step(s, field, h);
    } catch (const DivergenceError&) {
      throw DivergenceError("trajectory diverged", i + 1);
    }
  }
  return s;
}

inline State3 integrate(const State3& s0, const SystemParams& p, double h, std::size_t n) {
  return integrate(s0, RosslerField{p}, h, n);
}

struct TrajectoryPoint {
  double t = 0.0;
  State3 state;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Returns n+1 records, the first being (0, s0); t_k = k*h.
inline std::vector<TrajectoryPoint> trajectory(const State3& s0, const SystemParams& p,
                                               double h, std::size_t n) {
  if (n < 1) {
    throw InvalidArgument("trajectory needs at least one step");
  }
  std::vector<TrajectoryPoint> out;
  out.reserve(n + 1);
  out.push_back({0.0, s0});
  State3 s = s0;
  const RosslerField field{p};
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      s = rk3_step(s, field, h);
    } catch (const DivergenceError&) {
      throw DivergenceError("trajectory diverged", k);
    }
    out.push_back({static_cast<double>(k) * h, s});
  }
  return out;
}

/// CSV with header `t,x,y,z`; 17 significant digits round-trip binary64.
inline void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> points) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "t,x,y,z\n" << std::setprecision(17);
  for (const auto& p : points) {
    os << p.t << ',' << p.state.x << ',' << p.state.y << ',' << p.state.z << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace chaos_prng
