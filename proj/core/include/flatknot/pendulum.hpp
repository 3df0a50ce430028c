#pragma once

#include "flatknot/curve.hpp"

namespace flatknot {

// Swing solution sin(alpha/2) = xi * sn(omega t + t0 | xi) of
// alpha'' + omega^2 sin(alpha) = 0, with omega fixed by requiring r half
// periods of sn over t in [0, 2 pi]: 2 pi omega = 2 r K(xi).
struct PendulumParams {
  double xi = 0.0;
  int r = 2;
  double omega = 0.0;
  double t0 = 0.0;

  // Throws Error(kDomain) for |xi| >= 1 or r == 0.
  static PendulumParams make(double xi, int r, double t0 = 0.0);
};

// Node count for delta_x when none is given.
inline constexpr std::size_t kDeltaXNodes = 4096;

// alpha(t) = 2 asin(xi sn(omega t + t0 | xi)) on n uniform samples of [0, 2 pi).
// |xi sn| <= |xi| < 1, so the principal asin branch is already a smooth lift.
GaussRep pendulum_alpha(const PendulumParams& p, std::size_t n);

// Periodic trapezoid value of int_0^{2 pi} (1 - 2 xi^2 sn^2(r K(xi) t / pi | xi)) dt,
// the x-closure integral of the pendulum curve.
double delta_x(double xi, int r, std::size_t n = kDeltaXNodes);

// The zero of delta_x(., r) in (0, 1), by bisection to 1e-12.
double find_critical_xi(int r);

// Closed figure-eight critical curve of U_{x^2}, length 2 pi, base point at the origin.
// Throws Error(kParity) for odd r.
ClosedCurve build_infinity_curve(int r, std::size_t n);

}  // namespace flatknot
