#include "flatknot/pendulum.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "flatknot/elliptic.hpp"
#include "flatknot/errors.hpp"

namespace flatknot {

PendulumParams PendulumParams::make(double xi, int r, double t0) {
  if (!(std::abs(xi) < 1.0)) throw Error(ErrorCode::kDomain, "modulus out of range");
  if (r == 0) throw Error(ErrorCode::kDomain, "winding count r must be nonzero");
  PendulumParams p;
  p.xi = xi;
  p.r = r;
  p.t0 = t0;
  p.omega = r * elliptic_k(xi) / kPi;
  return p;
}

GaussRep pendulum_alpha(const PendulumParams& p, std::size_t n) {
  if (n < 64) throw Error(ErrorCode::kDomain, "pendulum_alpha needs n >= 64");
  GaussRep g;
  g.alpha.resize(n);
  g.step = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = g.step * static_cast<double>(i);
    g.alpha[i] = 2.0 * std::asin(p.xi * jacobi_sn(p.omega * t + p.t0, p.xi).sn);
  }
  g.end_value = 2.0 * std::asin(p.xi * jacobi_sn(p.omega * kTwoPi + p.t0, p.xi).sn);
  return g;
}

double delta_x(double xi, int r, std::size_t n) {
  if (!(std::abs(xi) < 1.0)) throw Error(ErrorCode::kDomain, "modulus out of range");
  if (r == 0) throw Error(ErrorCode::kDomain, "winding count r must be nonzero");
  if (n < 256) throw Error(ErrorCode::kDomain, "delta_x needs at least 256 nodes");
  const double rate = r * elliptic_k(xi) / kPi;
  const double h = kTwoPi / static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sn = jacobi_sn(rate * h * static_cast<double>(i), xi).sn;
    acc += 1.0 - 2.0 * xi * xi * sn * sn;
  }
  return acc * h;
}

double find_critical_xi(int r) {
  if (r == 0) throw Error(ErrorCode::kDomain, "winding count r must be nonzero");
  double lo = 0.0, hi = 0.99;
  const double f_lo = delta_x(lo, r), f_hi = delta_x(hi, r);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "delta_x does not change sign: delta_x(0) = " << f_lo << ", delta_x(0.99) = " << f_hi;
    throw Error(ErrorCode::kBracket, msg.str());
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (delta_x(mid, r) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ClosedCurve build_infinity_curve(int r, std::size_t n) {
  if (r == 0) throw Error(ErrorCode::kDomain, "winding count r must be nonzero");
  if (r % 2 != 0) {
    std::ostringstream msg;
    msg << "sin-integral obstruction: for odd r = " << r
        << " the curve cannot close, int sin(alpha) = 2 alpha'(0) / omega^2 != 0";
    throw Error(ErrorCode::kParity, msg.str());
  }
  if (n < 256) throw Error(ErrorCode::kDomain, "build_infinity_curve needs n >= 256");
  const double xi = find_critical_xi(r);
  const GaussRep g = pendulum_alpha(PendulumParams::make(xi, r), n);
  Reconstruction rec = curve_from_gauss(g);
  if (norm(rec.closure_gap) > 1e-5) {
    std::ostringstream msg;
    msg << "figure-eight closure gap " << norm(rec.closure_gap) << " exceeds 1e-5 at n = " << n;
    throw Error(ErrorCode::kDegenerate, msg.str());
  }
  return ClosedCurve(close_with_linear_correction(std::move(rec.points), rec.closure_gap));
}

}  // namespace flatknot
