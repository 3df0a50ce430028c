#include "flatknot/uniformization.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

EnergyFunctional::EnergyFunctional(std::string name, Fn f, Fn f_prime, Fn f_double_prime)
    : name_(std::move(name)), f_(std::move(f)), f_prime_(std::move(f_prime)),
      f_double_prime_(std::move(f_double_prime)) {
  if (!f_ || !(std::abs(f_(0.0)) < 1e-12)) {
    throw Error(ErrorCode::kDomain, "energy functional must satisfy f(0) = 0");
  }
  constexpr double h = kFiniteDifferenceStep;
  if (!f_prime_) {
    f_prime_ = [f = f_](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  }
  if (!f_double_prime_) {
    f_double_prime_ = [fp = f_prime_](double x) { return (fp(x + h) - fp(x - h)) / (2.0 * h); };
  }
}

EnergyFunctional EnergyFunctional::power(double p) {
  std::ostringstream name;
  name << "x";
  if (p != 1.0) name << "^" << p;
  const bool integral = p == std::floor(p) && p >= 1.0;
  if (integral) {
    const int k = static_cast<int>(p);
    auto ipow = [](double x, int e) {
      double r = 1.0;
      for (int i = 0; i < e; ++i) r *= x;
      return r;
    };
    return EnergyFunctional(
        name.str(), [=](double x) { return ipow(x, k); },
        [=](double x) { return k * ipow(x, k - 1); },
        [=](double x) { return k < 2 ? 0.0 : k * (k - 1) * ipow(x, k - 2); });
  }
  if (!(p > 1.0)) throw Error(ErrorCode::kDomain, "non-integer exponent must exceed 1");
  return EnergyFunctional(
      name.str(), [=](double x) { return std::pow(std::abs(x), p); },
      [=](double x) { return p * std::pow(std::abs(x), p - 1.0) * (x < 0 ? -1.0 : 1.0); },
      [=](double x) { return p * (p - 1.0) * std::pow(std::abs(x), p - 2.0); });
}

EnergyFunctional EnergyFunctional::from_name(const std::string& name) {
  if (name == "x") return power(1.0);
  if (name.size() > 2 && name.rfind("x^", 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(name.substr(2), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == name.size() - 2) return power(p);
  }
  throw Error(ErrorCode::kFormat, "unknown energy functional '" + name + "'");
}

std::vector<double> discrete_curvature(const GaussRep& g) {
  const long n = static_cast<long>(g.size());
  std::vector<double> kappa(g.size());
  for (long i = 0; i < n; ++i) {
    kappa[static_cast<std::size_t>(i)] = (g.lifted(i + 1) - g.lifted(i)) / g.step;
  }
  return kappa;
}

double energy_uf(const GaussRep& g, const EnergyFunctional& e) {
  double acc = 0.0;
  for (double k : discrete_curvature(g)) acc += e.value(k);
  return acc * g.step;
}

double three_point_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const double ab = distance(a, b), bc = distance(b, c), ca = distance(c, a);
  const double twice_area = cross(b - a, c - a);
  const double prod = ab * bc * ca;
  if (prod == 0.0 || std::abs(0.5 * twice_area) < 1e-14 * prod) return 0.0;
  // 1/R = 4 * area / (ab * bc * ca), signed by orientation.
  return 2.0 * twice_area / prod;
}

namespace {

// Point at arclength position s along the equi-spaced closed polygon, by
// uniform Catmull-Rom interpolation of the samples.
Vec2 sample_at(const ClosedCurve& c, double step, double s) {
  const double u = s / step;
  const double fl = std::floor(u);
  const double t = u - fl;
  const long i = static_cast<long>(fl);
  const std::size_t n = c.size();
  auto at = [&](long k) { return c[static_cast<std::size_t>(((k % static_cast<long>(n)) + n) % n)]; };
  const Vec2 p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  const double t2 = t * t, t3 = t2 * t;
  return 0.5 * ((2.0 * p1) + (p2 - p0) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                (3.0 * p1 - p0 - 3.0 * p2 + p3) * t3);
}

}  // namespace

double energy_uf_extended(const ClosedCurve& c, const EnergyFunctional& e, double eps) {
  const double step = c.length() / static_cast<double>(c.size());
  if (!(eps > step) || !(eps < 0.25 * kPi)) {
    std::ostringstream msg;
    msg << "eps = " << eps << " outside (" << step << ", pi/4)";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double s = step * static_cast<double>(i);
    acc += e.value(three_point_curvature(sample_at(c, step, s - eps), c[i], sample_at(c, step, s + eps)));
  }
  return acc * step;
}

std::vector<double> uf_gradient_raw(const GaussRep& g, const EnergyFunctional& e) {
  const std::vector<double> kappa = discrete_curvature(g);
  const std::size_t n = kappa.size();
  std::vector<double> fp(n);
  for (std::size_t i = 0; i < n; ++i) fp[i] = e.first(kappa[i]);
  std::vector<double> grad(n);
  for (std::size_t j = 0; j < n; ++j) {
    grad[j] = (fp[(j + n - 1) % n] - fp[j]) / g.step;
  }
  return grad;
}

std::vector<double> project_closure(const GaussRep& g, std::vector<double> v) {
  const std::size_t n = g.size();
  std::array<std::vector<double>, 2> basis{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    basis[0][i] = std::cos(g.alpha[i]);
    basis[1][i] = std::sin(g.alpha[i]);
  }
  auto inner = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  // Gram-Schmidt on {cos alpha, sin alpha}.
  std::size_t kept = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t j = 0; j < kept; ++j) {
      const double c = inner(basis[k], basis[j]);
      for (std::size_t i = 0; i < n; ++i) basis[k][i] -= c * basis[j][i];
    }
    const double nn = std::sqrt(inner(basis[k], basis[k]));
    if (nn < 1e-12 * std::sqrt(static_cast<double>(n))) continue;
    for (double& x : basis[k]) x /= nn;
    if (kept != k) basis[kept] = basis[k];
    ++kept;
  }
  for (std::size_t j = 0; j < kept; ++j) {
    const double c = inner(v, basis[j]);
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * basis[j][i];
  }
  return v;
}

std::vector<double> uf_gradient(const GaussRep& g, const EnergyFunctional& e) {
  return project_closure(g, uf_gradient_raw(g, e));
}

double l2_norm(const GaussRep& g, const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s * g.step);
}

ELResidualReport el_residual(const GaussRep& g, const EnergyFunctional& e) {
  const long n = static_cast<long>(g.size());
  std::vector<double> lhs(g.size());
  double scc = 0.0, scs = 0.0, sss = 0.0, syc = 0.0, sys = 0.0;
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double acc = (g.lifted(i + 1) - 2.0 * g.lifted(i) + g.lifted(i - 1)) / (g.step * g.step);
    const double kappa = (g.lifted(i + 1) - g.lifted(i - 1)) / (2.0 * g.step);
    lhs[k] = e.second(kappa) * acc;
    const double c = std::cos(g.alpha[k]), s = std::sin(g.alpha[k]);
    scc += c * c;
    scs += c * s;
    sss += s * s;
    syc += lhs[k] * c;
    sys += lhs[k] * s;
  }
  ELResidualReport r;
  const double det = scc * sss - scs * scs;
  if (std::abs(det) > 1e-12 * (scc + sss) * (scc + sss)) {
    r.c1 = (syc * sss - sys * scs) / det;
    r.c2 = (sys * scc - syc * scs) / det;
  } else if (scc + sss > 0.0) {
    // cos and sin are (nearly) parallel: single-direction fit along the dominant one.
    r.c1 = scc >= sss ? syc / scc : 0.0;
    r.c2 = scc >= sss ? 0.0 : sys / sss;
  }
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double res = lhs[k] - r.c1 * std::cos(g.alpha[k]) - r.c2 * std::sin(g.alpha[k]);
    sum += res * res;
  }
  r.rms_residual = std::sqrt(sum / static_cast<double>(n));
  return r;
}

}  // namespace flatknot
