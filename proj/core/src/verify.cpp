#include "flatknot/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "flatknot/cycles.hpp"
#include "flatknot/elliptic.hpp"
#include "flatknot/errors.hpp"
#include "flatknot/fixtures.hpp"
#include "flatknot/flow.hpp"
#include "flatknot/io.hpp"
#include "flatknot/lattice.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/resistance.hpp"
#include "flatknot/uniformization.hpp"

namespace flatknot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects failures; passes when none were recorded.
class Check {
 public:
  template <class... Args>
  void expect(bool ok, const Args&... args) {
    if (ok) return;
    passed_ = false;
    if (!failures_.empty()) failures_ += "; ";
    std::ostringstream s;
    s << std::setprecision(10);
    (s << ... << args);
    failures_ += s.str();
  }
  template <class... Args>
  void note(const Args&... args) {
    std::ostringstream s;
    s << std::setprecision(10);
    (s << ... << args);
    if (!notes_.empty()) notes_ += ", ";
    notes_ += s.str();
  }
  bool passed() const { return passed_; }
  std::string detail() const { return passed_ ? notes_ : failures_; }

 private:
  bool passed_ = true;
  std::string failures_;
  std::string notes_;
};

const EnergyFunctional& x2() {
  static const EnergyFunctional e = EnergyFunctional::power(2.0);
  return e;
}

double u_of(const ClosedCurve& c, const EnergyFunctional& e) { return energy_uf(gauss_from_curve(c), e); }

void xi_root(Check& ck) {
  const auto t = Clock::now();
  const double xi2 = find_critical_xi(2);
  const double elapsed = seconds_since(t);
  const double xi4 = find_critical_xi(4);
  ck.expect(std::abs(xi2 - 0.90890856) <= 1e-6, "xi(2) = ", xi2);
  ck.expect(elapsed < 1.0, "root took ", elapsed, " s");
  ck.expect(std::abs(xi2 - xi4) < 1e-9, "|xi(2) - xi(4)| = ", std::abs(xi2 - xi4));
  ck.note("xi = ", xi2);
}

void grid_table(Check& ck) {
  static constexpr std::uint64_t kTable[] = {1, 13, 213, 9349, 1222363};
  const auto t = Clock::now();
  for (int n = 1; n <= 5; ++n) {
    const std::uint64_t got = grid_cycle_count(n);
    ck.expect(got == kTable[n - 1], "G(", n, ") = ", got, " expected ", kTable[n - 1]);
  }
  const double elapsed = seconds_since(t);
  ck.expect(elapsed < 60.0, "took ", elapsed, " s");
  ck.note("1 13 213 9349 1222363");
}

void trefoil_census(Check& ck, const std::filesystem::path& data_dir) {
  const auto t = Clock::now();
  const KnotDiagram d = data_dir.empty() ? detect_crossings(fixtures::trefoil(512))
                                         : io::diagram_from_json(io::read_file(data_dir / "trefoil.json"));
  const CycleCensus c = census(enumerate_cycles(d));
  const auto count = [&](std::size_t arcs) {
    const auto it = c.counts_by_arcs.find(arcs);
    return it == c.counts_by_arcs.end() ? std::uint64_t{0} : it->second;
  };
  ck.expect(c.total == 11, "total ", c.total);
  ck.expect(count(1) == 6 && count(2) == 3 && count(3) == 2 && c.counts_by_arcs.size() == 3, "split ", count(1), "/",
            count(2), "/", count(3));
  ck.expect(c.alternated == c.total, "alternated ", c.alternated, " of ", c.total);
  const double elapsed = seconds_since(t);
  ck.expect(elapsed < 1.0, "took ", elapsed, " s");
  ck.note("6/3/2, all alternated");
}

// Energies follow the length-2 pi convention: sampled circles are rescaled
// to exact length 2 pi before evaluation.
void circle_energies(Check& ck) {
  const ClosedCurve c = fixtures::circle(512).with_length(kTwoPi);
  const double u2 = u_of(c, x2());
  ck.expect(std::abs(u2 - kTwoPi) <= 1e-6, "U_x2(circle) = ", u2);
  const EnergyFunctional x1 = EnergyFunctional::power(1.0);
  const std::vector<std::pair<const char*, ClosedCurve>> curves = {
      {"circle", c},
      {"double circle", fixtures::double_circle(512).with_length(kTwoPi)},
      {"infinity curve", build_infinity_curve(2, 1024)},
  };
  for (const auto& [name, curve] : curves) {
    const double u1 = u_of(curve, x1);
    const int w = whitney_index(curve);
    ck.expect(std::abs(u1 - kTwoPi * w) <= 1e-3, "U_x(", name, ") = ", u1, " whitney ", w);
  }
  ck.note("U_x2 = ", u2);
}

void extended_convergence(Check& ck) {
  static constexpr double kEps[] = {0.1, 0.05, 0.025};
  // Circle: three samples always lie on one circle, so the extended value is
  // the same for every eps; the gap to U is the O(h^2) sampling floor.
  {
    const ClosedCurve c = fixtures::circle(2048).with_length(kTwoPi);
    const double u = u_of(c, x2());
    double lo = 1e300, hi = 0.0;
    for (double eps : kEps) {
      const double err = std::abs(energy_uf_extended(c, x2(), eps) - u);
      lo = std::min(lo, err);
      hi = std::max(hi, err);
    }
    ck.expect(hi < 1e-4 && hi - lo < 1e-2 * hi, "circle errors ", lo, "..", hi);
    ck.note("circle floor ", std::setprecision(3), hi);
  }
  {
    const ClosedCurve c = fixtures::ellipse(2.0, 1.0, 2048).with_length(kTwoPi);
    const double u = u_of(c, x2());
    double err[3];
    for (int k = 0; k < 3; ++k) err[k] = std::abs(energy_uf_extended(c, x2(), kEps[k]) - u);
    const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
    ck.expect(err[0] > err[1] && err[1] > err[2], "ellipse errors not decreasing");
    ck.expect(o1 >= 1.8 && o2 >= 1.8, "ellipse orders ", o1, ", ", o2);
    ck.note("ellipse orders ", std::setprecision(3), o1, ", ", o2);
  }
}

void infinity_criticality(Check& ck) {
  const GaussRep g = gauss_from_curve(build_infinity_curve(2, 1024));
  const ELResidualReport r = el_residual(g, x2());
  const double gn = l2_norm(g, uf_gradient(g, x2()));
  ck.expect(r.rms_residual < 1e-3, "EL rms ", r.rms_residual);
  ck.expect(gn < 1e-3, "projected gradient ", gn);
  ck.note("rms ", r.rms_residual, ", gradient ", gn);
}

void parity(Check& ck) {
  const double xi = find_critical_xi(2);
  const std::size_t n = 4096;
  const double s2 = closure_report(pendulum_alpha(PendulumParams::make(xi, 2), n)).sin_integral;
  const double s1 = closure_report(pendulum_alpha(PendulumParams::make(xi, 1), n)).sin_integral;
  ck.expect(std::abs(s2) < 1e-8, "r=2 sin integral ", s2);
  ck.expect(std::abs(s1) > 1e-2, "r=1 sin integral ", s1);
  ck.note("r=2 ", std::abs(s2), ", r=1 ", std::abs(s1));
}

void elliptic_identities(Check& ck) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> du(-50.0, 50.0), dk(0.0, 0.999);
  double worst1 = 0.0, worst2 = 0.0, worst_period = 0.0, worst_sin = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = du(rng), k = dk(rng);
    const EllipticValue v = jacobi_sn(u, k);
    worst1 = std::max(worst1, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0));
    worst2 = std::max(worst2, std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0));
    if (i < 1000) {
      worst_period = std::max(worst_period, std::abs(jacobi_sn(u + 4.0 * elliptic_k(k), k).sn - v.sn));
      worst_sin = std::max(worst_sin, std::abs(jacobi_sn(u, 0.0).sn - std::sin(u)));
    }
  }
  const double k0 = std::abs(elliptic_k(0.0) - 0.5 * kPi);
  ck.expect(worst1 < 1e-12, "sn^2+cn^2-1 = ", worst1);
  ck.expect(worst2 < 1e-12, "dn^2+k^2 sn^2-1 = ", worst2);
  ck.expect(worst_sin < 1e-12, "sn(u|0)-sin u = ", worst_sin);
  ck.expect(worst_period < 1e-11, "period defect ", worst_period);
  ck.expect(k0 < 1e-14, "K(0) - pi/2 = ", k0);
  ck.note("worst ", std::setprecision(3), std::max(worst1, worst2), ", period ", worst_period);
}

// Oracle: central differences of energy_uf in alpha, projected the same way.
void gradient_check(Check& ck) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ClosedCurve c = fixtures::noisy(fixtures::circle(128), 0.1, seed).with_length(kTwoPi);
    const EnergyFunctional e = EnergyFunctional::power(seed % 2 == 0 ? 2.0 : 4.0);
    GaussRep g = gauss_from_curve(c);
    g.end_value = g.alpha_end();
    const std::vector<double> analytic = uf_gradient(g, e);
    std::vector<double> fd(g.size());
    const double eps = 1e-5;
    for (std::size_t j = 0; j < g.size(); ++j) {
      GaussRep p = g, m = g;
      p.alpha[j] += eps;
      m.alpha[j] -= eps;
      if (j == 0) {
        *p.end_value += eps;
        *m.end_value -= eps;
      }
      fd[j] = (energy_uf(p, e) - energy_uf(m, e)) / (2.0 * eps * g.step);
    }
    fd = project_closure(g, fd);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      num += (analytic[j] - fd[j]) * (analytic[j] - fd[j]);
      den += fd[j] * fd[j];
    }
    const double rel = std::sqrt(num / den);
    worst = std::max(worst, rel);
    ck.expect(rel < 1e-5, "seed ", seed, " relative error ", rel);
  }
  ck.note("worst relative error ", std::setprecision(3), worst);
}

// Random Fourier curves; delta is effectively infinite so every cycle is
// delta-critical and the bounds are tested at full strength.
void gamma_bounds(Check& ck) {
  constexpr double kHuge = 1e9;
  int diagrams = 0, checked_bound = 0;
  std::string first_gamma, first_parc;
  for (std::uint64_t seed = 1; diagrams < 50 && seed < 5000; ++seed) {
    KnotDiagram d = [&]() -> KnotDiagram {
      try {
        return detect_crossings(fixtures::random_fourier(256, 3, seed));
      } catch (const Error&) {
        return KnotDiagram(fixtures::circle(16), {});
      }
    }();
    const std::size_t n = d.crossing_count();
    if (n < 1 || n > 8) continue;
    ++diagrams;
    const double bound = gamma_bound(n);
    const std::size_t watched = gamma_delta(d, kHuge).size();
    ++checked_bound;
    if (static_cast<double>(watched) > bound && first_gamma.empty()) {
      std::ostringstream s;
      s << "seed " << seed << ": n=" << n << " |Gamma|=" << watched << " > " << bound;
      first_gamma = s.str();
    }
    const CycleCensus cen = census(enumerate_cycles(d));
    for (const auto& [p, count] : cen.counts_by_arcs) {
      if (p == 0) continue;
      double limit = 1.0;
      for (std::size_t i = 1; i <= p; ++i) limit *= static_cast<double>(n) / static_cast<double>(i);
      if (!(static_cast<double>(count) < limit) && first_parc.empty()) {
        std::ostringstream s;
        s << "seed " << seed << ": n=" << n << " " << p << "-arc cycles " << count << " >= " << limit;
        first_parc = s.str();
      }
    }
  }
  ck.expect(diagrams == 50, "only ", diagrams, " diagrams generated");
  ck.expect(first_gamma.empty(), first_gamma);
  ck.expect(first_parc.empty(), first_parc);
  ck.note(checked_bound, " diagrams within both bounds");
}

void gstar_bound(Check& ck) {
  for (int n = 2; n <= 4; ++n) {
    const std::uint64_t got = gstar_alternated_count(n);
    const std::uint64_t lower = binomial(static_cast<unsigned>(n), static_cast<unsigned>(n / 2)) - 1;
    ck.expect(got >= lower, "G*(", n, ") alternated ", got, " < ", lower);
    ck.note("n=", n, ": ", got, " >= ", lower);
  }
}

double kappa_spread(const ClosedCurve& c) {
  const std::vector<double> k = discrete_curvature(gauss_from_curve(c));
  const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
  return *hi - *lo;
}

void flow_behaviour(Check& ck) {
  FlowConfig cfg;
  cfg.samples = 256;
  cfg.max_iters = 1500;
  cfg.delta = 0.5;
  std::vector<std::pair<std::string, FlowTrace>> traces;
  auto run = [&](const std::string& name, const KnotDiagram& d, const FlowConfig& c) -> const FlowTrace& {
    const auto t = Clock::now();
    traces.emplace_back(name, relax(d, c));
    const double elapsed = seconds_since(t);
    ck.expect(elapsed < 120.0, name, " took ", elapsed, " s");
    return traces.back().second;
  };

  // (a)
  {
    const FlowTrace& tr = run("circle", detect_crossings(fixtures::noisy(fixtures::circle(256), 0.05, 1)), cfg);
    const double spread = kappa_spread(*tr.final_curve);
    ck.expect(spread < 1e-3, "(a) kappa spread ", spread);
    ck.expect(tr.final_diagram->crossing_count() == 0, "(a) crossings remain");
    ck.note("(a) spread ", std::setprecision(3), spread);
  }
  // (b)
  {
    const FlowTrace& tr = run("figure-eight", detect_crossings(fixtures::noisy(fixtures::figure_eight(256), 0.05, 2)), cfg);
    const ClosedCurve target = build_infinity_curve(2, 1024);
    const double h = hausdorff_after_rigid_alignment(target.points(), tr.final_curve->points());
    ck.expect(h < 1e-2, "(b) Hausdorff ", h);
    ck.note("(b) Hausdorff ", std::setprecision(3), h);
  }
  // (d)
  {
    const FlowTrace& tr = run("trefoil", detect_crossings(fixtures::trefoil(256)), cfg);
    std::size_t small = 0;
    CycleOptions opt;
    opt.area_cap = cfg.delta;
    opt.alternated_only = true;
    small = enumerate_cycles(*tr.final_diagram, opt).size();
    ck.expect(small >= 1, "(d) no alternated cycle of area < ", cfg.delta);
    ck.note("(d) ", small, " small alternated cycles");
  }
  // Adversarial traces for the monitor: a clasp whose bigon can only
  // vanish through a forbidden move, with and without resistance.
  FlowConfig bare = cfg;
  bare.resistance = ResistanceFamily::kNone;
  run("clasp, no resistance", fixtures::clasp(256, true), bare);
  run("clasp, MRE", fixtures::clasp(256, true), cfg);
  run("clasp, unlinked", fixtures::clasp(256, false), bare);
  // (c)
  int bounded = 0;
  for (const auto& [name, tr] : traces) {
    if (!(tr.max_gmre() <= cfg.gmre_ceiling)) continue;
    ++bounded;
    ck.expect(!tr.has_forbidden(), "(c) ", name, " has a forbidden event with GMRE <= ceiling");
  }
  ck.note("(c) ", bounded, "/", traces.size(), " bounded traces clean");
}

void scaling(Check& ck) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(256));
  const double re = resistance_energy(d).total;
  const ClosedCurve c = fixtures::noisy(fixtures::circle(256), 0.05, 3).with_length(kTwoPi);
  const double u = u_of(c, x2());
  for (double s : {0.5, 2.0, 3.0}) {
    const double re_s = resistance_energy(d.scaled(s)).total;
    const double rel = std::abs(re_s * s * s - re) / re;
    ck.expect(rel < 1e-9, "RE at s=", s, " relative ", rel);
    const double u_s = u_of(c.scaled(s), x2());
    ck.expect(std::abs(u_s * s - u) < 1e-6, "U at s=", s, " off by ", std::abs(u_s * s - u));
  }
  ck.note("RE ~ 1/s^2, U ~ 1/s");
}

struct Criterion {
  int id;
  const char* group;
  const char* title;
  std::function<void(Check&, const VerifyOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "pendulum", "xi root", [](Check& c, const VerifyOptions&) { xi_root(c); }},
      {2, "cycles", "grid cycle table", [](Check& c, const VerifyOptions&) { grid_table(c); }},
      {3, "cycles", "trefoil census", [](Check& c, const VerifyOptions& o) { trefoil_census(c, o.data_dir); }},
      {4, "energy", "circle energies", [](Check& c, const VerifyOptions&) { circle_energies(c); }},
      {5, "energy", "extended functional convergence", [](Check& c, const VerifyOptions&) { extended_convergence(c); }},
      {6, "pendulum", "infinity curve criticality", [](Check& c, const VerifyOptions&) { infinity_criticality(c); }},
      {7, "pendulum", "closure parity", [](Check& c, const VerifyOptions&) { parity(c); }},
      {8, "pendulum", "elliptic identities", [](Check& c, const VerifyOptions&) { elliptic_identities(c); }},
      {9, "energy", "gradient vs finite differences", [](Check& c, const VerifyOptions&) { gradient_check(c); }},
      {10, "cycles", "watched cycle bound", [](Check& c, const VerifyOptions&) { gamma_bounds(c); }},
      {11, "cycles", "woven grid lower bound", [](Check& c, const VerifyOptions&) { gstar_bound(c); }},
      {12, "flow", "flow behaviour", [](Check& c, const VerifyOptions&) { flow_behaviour(c); }},
      {13, "energy", "scaling laws", [](Check& c, const VerifyOptions&) { scaling(c); }},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups = {"pendulum", "cycles", "energy", "flow"};
  return groups;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options) {
  const auto& groups = verify_groups();
  if (!options.only.empty() && std::find(groups.begin(), groups.end(), options.only) == groups.end()) {
    throw Error(ErrorCode::kDomain, "unknown group '" + options.only + "'");
  }
  std::vector<CriterionResult> results;
  for (const Criterion& c : criteria()) {
    if (!options.only.empty() && options.only != c.group) continue;
    if (!options.ids.empty() && std::find(options.ids.begin(), options.ids.end(), c.id) == options.ids.end()) continue;
    CriterionResult r{c.id, c.group, c.title, false, {}, 0.0};
    const auto t = Clock::now();
    try {
      Check ck;
      c.run(ck, options);
      r.passed = ck.passed();
      r.detail = ck.detail();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = seconds_since(t);
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << ' ' << std::left << std::setw(9) << r.group
    << std::setw(33) << r.title << r.detail << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
  return s.str();
}

}  // namespace flatknot
