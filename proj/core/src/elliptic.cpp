#include "flatknot/elliptic.hpp"

#include <array>
#include <cmath>

#include "flatknot/errors.hpp"
#include "flatknot/geometry.hpp"

namespace flatknot {

namespace {

double checked_modulus(double k) {
  const double a = std::abs(k);
  if (!(a < 1.0)) throw Error(ErrorCode::kDomain, "modulus out of range");
  return a;
}

// Complementary modulus sqrt(1 - k^2), evaluated without cancellation near 1.
double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

}  // namespace

double elliptic_k(double k) {
  const double m = checked_modulus(k);
  double a = 1.0;
  double b = complementary(m);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

EllipticValue jacobi_sn(double u, double k) {
  const double m = checked_modulus(k);
  EllipticValue v;
  v.u = u;
  v.k = k;
  if (m == 0.0) {
    v.sn = std::sin(u);
    v.cn = std::cos(u);
    v.dn = 1.0;
    return v;
  }
  const double period = 4.0 * elliptic_k(m);
  const double x = u - period * std::nearbyint(u / period);

  constexpr int kMaxLevels = 32;
  std::array<double, kMaxLevels + 1> a{}, c{};
  a[0] = 1.0;
  double b = complementary(m);
  c[0] = m;
  int levels = 0;
  while (levels < kMaxLevels && std::abs(c[levels]) > 1e-17) {
    const double an = 0.5 * (a[levels] + b);
    c[levels + 1] = 0.5 * (a[levels] - b);
    b = std::sqrt(a[levels] * b);
    a[levels + 1] = an;
    ++levels;
  }
  double phi = std::ldexp(a[levels] * x, levels);
  for (int n = levels; n >= 1; --n) phi = 0.5 * (phi + std::asin(c[n] * std::sin(phi) / a[n]));
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  // dn > 0 for real arguments; the product form avoids the 0/0 of
  // cn / cos(phi_1 - phi_0) at the quarter periods.
  v.dn = std::sqrt((1.0 - m * v.sn) * (1.0 + m * v.sn));
  return v;
}

}  // namespace flatknot
