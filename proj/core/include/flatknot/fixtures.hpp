#pragma once

#include <cstdint>

#include "flatknot/diagram.hpp"

namespace flatknot::fixtures {

// Unit circle (length 2 pi), counterclockwise from (1, 0).
ClosedCurve circle(std::size_t n);
// The unit circle traversed twice (points repeat after n/2 samples).
ClosedCurve double_circle(std::size_t n);
ClosedCurve ellipse(double a, double b, std::size_t n);
// (sin t + 2 sin 2t, cos t - 2 cos 2t): three crossings.
ClosedCurve trefoil(std::size_t n);
// Gerono lemniscate (sin t, sin t cos t): one crossing at the origin, Whitney index 0.
ClosedCurve figure_eight(std::size_t n);
// Radial noise: p + amplitude * scale * w(t) * normal, w a smooth random
// trigonometric sum with |w| <= 1 and modes 2..8; deterministic in seed.
ClosedCurve noisy(const ClosedCurve& c, double amplitude, std::uint64_t seed);
// Smooth random star-shaped-free curve: a random trigonometric polynomial in
// x and y with `modes` harmonics and decaying amplitudes.
ClosedCurve random_fourier(std::size_t n, int modes, std::uint64_t seed);

// A round loop with a finger pushed down through its bottom arc: two
// crossings bounding a bigon. With `alternating` the loop passes over at one
// crossing and under at the other; otherwise the loop is over at both.
KnotDiagram clasp(std::size_t n, bool alternating);

}  // namespace flatknot::fixtures
