#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flatknot/curve.hpp"

namespace flatknot {

// The integrand f of U_f(curve) = integral of f(curvature) dt, with its first
// two derivatives. Missing derivatives fall back to central differences.
class EnergyFunctional {
 public:
  using Fn = std::function<double(double)>;

  // Throws Error(kDomain) unless |f(0)| < 1e-12.
  EnergyFunctional(std::string name, Fn f, Fn f_prime = {}, Fn f_double_prime = {});

  // f(x) = x^p for integer p >= 1, |x|^p otherwise (p > 1).
  static EnergyFunctional power(double p);
  // Accepts "x", "x^2", "x^4", "x^2.5", ...
  static EnergyFunctional from_name(const std::string& name);

  const std::string& name() const { return name_; }
  double value(double x) const { return f_(x); }
  double first(double x) const { return f_prime_(x); }
  double second(double x) const { return f_double_prime_(x); }

  static constexpr double kFiniteDifferenceStep = 1e-5;

 private:
  std::string name_;
  Fn f_;
  Fn f_prime_;
  Fn f_double_prime_;
};

struct ELResidualReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double rms_residual = 0.0;
};

// kappa[i] = (alpha[i+1] - alpha[i]) / step on the periodic lift: the
// curvature between samples i and i+1. The one-sided stencil sees every
// Fourier mode; a centered one would miss the alternating mode.
std::vector<double> discrete_curvature(const GaussRep& g);

double energy_uf(const GaussRep& g, const EnergyFunctional& e);

// Three-point circumradius version of U_f at offset eps (arclength). The
// points at t +- eps are located by cubic interpolation along the polygon.
// Throws Error(kDomain) unless step < eps < pi/4.
double energy_uf_extended(const ClosedCurve& c, const EnergyFunctional& e, double eps);

// Signed curvature 1/R of the circle through three points; 0 when collinear.
double three_point_curvature(Vec2 a, Vec2 b, Vec2 c);

// Unprojected L2 gradient of energy_uf with respect to the alpha samples.
std::vector<double> uf_gradient_raw(const GaussRep& g, const EnergyFunctional& e);

// Removes the components of v along cos(alpha) and sin(alpha), the
// differentials of the two closure integrals.
std::vector<double> project_closure(const GaussRep& g, std::vector<double> v);

// uf_gradient_raw followed by project_closure.
std::vector<double> uf_gradient(const GaussRep& g, const EnergyFunctional& e);

// Discrete L2 norm sqrt(step * sum v_i^2).
double l2_norm(const GaussRep& g, const std::vector<double>& v);

// Least-squares fit of f''(kappa) alpha'' = c1 cos(alpha) + c2 sin(alpha).
ELResidualReport el_residual(const GaussRep& g, const EnergyFunctional& e);

}  // namespace flatknot
