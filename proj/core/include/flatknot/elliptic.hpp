#pragma once

// Jacobi elliptic functions and the complete elliptic integral of the first
// kind, in the MODULUS convention: the second argument k enters squared,
//
//   K(k)   = int_0^1 dt / sqrt((1 - t^2)(1 - k^2 t^2)),
//   sn(u|k) = sin(phi),  u = int_0^phi dt / sqrt(1 - k^2 sin^2 t).
//
// Many references (and scipy) take the parameter m = k^2 instead.

namespace flatknot {

struct EllipticValue {
  double u = 0.0;
  double k = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

// Arithmetic-geometric mean iteration. Negative k uses |k|; |k| >= 1 throws
// Error(kDomain) "modulus out of range".
double elliptic_k(double k);

// Descending Landen (AGM) scheme with the argument reduced modulo 4K(k).
EllipticValue jacobi_sn(double u, double k);

}  // namespace flatknot
