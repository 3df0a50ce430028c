#include "flatknot/fixtures.hpp"

#include <cmath>
#include <random>

namespace flatknot::fixtures {

namespace {

template <class F>
ClosedCurve sample(std::size_t n, F f) {
  std::vector<Vec2> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = f(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  return ClosedCurve(std::move(p));
}

}  // namespace

ClosedCurve circle(std::size_t n) {
  return sample(n, [](double t) { return Vec2{std::cos(t), std::sin(t)}; });
}

ClosedCurve double_circle(std::size_t n) {
  return sample(n, [](double t) { return Vec2{std::cos(2.0 * t), std::sin(2.0 * t)}; });
}

ClosedCurve ellipse(double a, double b, std::size_t n) {
  return resample_arclength(sample(4 * n, [&](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; }).points(), n);
}

ClosedCurve trefoil(std::size_t n) {
  return resample_arclength(
      sample(4 * n, [](double t) { return Vec2{std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t)}; })
          .points(),
      n);
}

ClosedCurve figure_eight(std::size_t n) {
  return resample_arclength(sample(4 * n, [](double t) { return Vec2{std::sin(t), std::sin(t) * std::cos(t)}; }).points(), n);
}

ClosedCurve noisy(const ClosedCurve& c, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  struct Mode {
    int k;
    double a, phi;
  };
  std::vector<Mode> modes;
  double total = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const double a = coef(rng);
    modes.push_back({k, a, phase(rng)});
    total += std::abs(a);
  }
  const std::size_t n = c.size();
  const double scale = c.length() / kTwoPi;
  std::vector<Vec2> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    double w = 0.0;
    for (const Mode& m : modes) w += m.a * std::sin(m.k * t + m.phi);
    const Vec2 tangent = c[i + 1] - c[i + n - 1];
    const Vec2 normal = Vec2{-tangent.y, tangent.x} / norm(tangent);
    p[i] = c[i] + normal * (amplitude * scale * w / total);
  }
  return ClosedCurve(std::move(p));
}

ClosedCurve random_fourier(std::size_t n, int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> ax, bx, ay, by;
  for (int k = 1; k <= modes; ++k) {
    const double s = 1.0 / static_cast<double>(k);
    ax.push_back(gauss(rng) * s);
    bx.push_back(gauss(rng) * s);
    ay.push_back(gauss(rng) * s);
    by.push_back(gauss(rng) * s);
  }
  const ClosedCurve dense = sample(8 * n, [&](double t) {
    Vec2 p;
    for (int k = 1; k <= modes; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      p.x += ax[i] * std::cos(k * t) + bx[i] * std::sin(k * t);
      p.y += ay[i] * std::cos(k * t) + by[i] * std::sin(k * t);
    }
    return p;
  });
  return resample_arclength(dense.points(), n);
}

KnotDiagram clasp(std::size_t n, bool alternating) {
  // Loop of radius 1 open at the top between x = -w and x = w, closed by a
  // finger of half-width w reaching down to y = -1.35.
  const double w = 0.3;
  const double top = std::sqrt(1.0 - w * w);
  const double start = std::atan2(top, -w);  // angle of (-w, top)
  const double stop = std::atan2(top, w) + kTwoPi;
  std::vector<Vec2> p;
  const int arc_samples = 2000;
  for (int i = 0; i <= arc_samples; ++i) {
    const double a = start + (stop - start) * i / arc_samples;
    p.push_back({std::cos(a), std::sin(a)});
  }
  // Finger: down at x = w, half circle at the bottom, up at x = -w.
  const double bottom = -1.35;
  const int leg = 800;
  for (int i = 1; i <= leg; ++i) p.push_back({w, top + (bottom - top) * i / leg});
  for (int i = 1; i < 400; ++i) {
    const double a = -kPi * i / 400.0;
    p.push_back({w * std::cos(a), bottom + w * std::sin(a)});
  }
  for (int i = 0; i < leg; ++i) p.push_back({-w, bottom + (top - bottom) * i / leg});
  // Round the corners with a few passes of neighbor averaging.
  for (int pass = 0; pass < 60; ++pass) {
    std::vector<Vec2> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] = (p[(i + p.size() - 1) % p.size()] + p[i] * 2.0 + p[(i + 1) % p.size()]) * 0.25;
    }
    p = std::move(q);
  }
  const ClosedCurve c = resample_arclength(p, n);
  std::vector<Crossing> xs = find_self_intersections(c);
  // Passage order along the traversal: loop meets both crossings first, then
  // the finger. The loop is over at both, or at the first one only.
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i].first_over = !alternating || i == 0;
  return KnotDiagram(c, std::move(xs));
}

}  // namespace flatknot::fixtures
