#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "flatknot/errors.hpp"
#include "flatknot/io.hpp"
#include "flatknot/lattice.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/svg.hpp"
#include "flatknot/verify.hpp"

namespace flatknot::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingular: return kSingular;
    case ErrorCode::kCycleExplosion: return kExplosion;
    case ErrorCode::kParity:
    case ErrorCode::kFormat:
    case ErrorCode::kDomain: return kUsage;
    default: return 1;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kFormat, "cannot write " + path.string());
  f << text;
}

struct PendulumArgs {
  int r = 2;
  std::size_t samples = 1024;
  std::string out;
};

int cmd_pendulum(const PendulumArgs& a, std::ostream& out) {
  // Parity first: odd r has no closed curve, whatever xi is.
  const ClosedCurve c = build_infinity_curve(a.r, a.samples);
  const double xi = find_critical_xi(a.r);
  const ClosureReport cr = closure_report(pendulum_alpha(PendulumParams::make(xi, a.r), a.samples));
  out << std::setprecision(12) << std::fixed << "xi = " << xi << '\n';
  out << std::scientific << std::setprecision(3) << "delta_x = " << delta_x(xi, a.r) << '\n'
      << "closure: cos " << cr.cos_integral << ", sin " << cr.sin_integral << '\n'
      << std::defaultfloat << std::setprecision(10) << "whitney = " << cr.whitney << ", length = " << c.length()
      << ", copies of the r=2 curve = " << std::abs(a.r) / 2 << '\n';
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    const std::string stem = "infinity_r" + std::to_string(a.r);
    io::write_file(fs::path(a.out) / (stem + ".json"), io::to_json(c));
    RenderSpec spec;
    spec.caption = "r = " + std::to_string(a.r);
    write_text(fs::path(a.out) / (stem + ".svg"), render_svg(c, spec));
    out << "wrote " << (fs::path(a.out) / stem).string() << ".{json,svg}\n";
  }
  return kOk;
}

struct EnergyArgs {
  std::string input;
  std::string family = "RE";
  double delta = 0.5;
  std::string f = "x^2";
  bool alternated_four_arc = false;
};

int cmd_energy(const EnergyArgs& a, std::ostream& out) {
  const KnotDiagram d = io::diagram_from_json(io::read_file(a.input));
  const ResistanceFamily fam = resistance_family_from_name(a.family);
  const EnergyFunctional e = EnergyFunctional::from_name(a.f);
  const EnergyBreakdown b = fam == ResistanceFamily::kGMRE ? gmre(d, a.delta, {a.alternated_four_arc})
                                                           : resistance(d, fam, a.delta);
  const GaussRep g = gauss_from_curve(d.curve());
  io::EnergyReport rep{e.name(), energy_uf(g, e), l2_norm(g, uf_gradient(g, e)), el_residual(g, e)};
  io::Json j = io::to_json(b);
  j["uniformization"] = io::to_json(rep);
  out << j.dump(2) << '\n';
  return kOk;
}

struct CyclesArgs {
  int grid = 0;
  int gstar = 0;
  std::string diagram;
  std::uint64_t limit = 10'000'000;
};

int cmd_cycles(const CyclesArgs& a, std::ostream& out) {
  CycleOptions opt;
  opt.hard_limit = a.limit;
  CycleCensus c;
  if (a.grid > 0) {
    if (a.grid <= 4) {
      c = census(enumerate_cycles(grid_graph(a.grid), opt));
    } else {
      // Too many to materialize: total only.
      c.total = grid_cycle_count(a.grid);
      if (c.total > a.limit) {
        throw Error(ErrorCode::kCycleExplosion, "cycle explosion: G(" + std::to_string(a.grid) + ") has " +
                                                    std::to_string(c.total) + " cycles, limit " +
                                                    std::to_string(a.limit));
      }
    }
  } else if (a.gstar > 0) {
    c = census(enumerate_cycles(gstar_graph(a.gstar), opt));
  } else {
    c = census(enumerate_cycles(io::diagram_from_json(io::read_file(a.diagram)), opt));
  }
  out << io::to_json(c).dump() << '\n';
  return kOk;
}

struct RelaxArgs {
  std::string curve;
  std::string config;
  std::string outdir;
  int keyframe_every = 50;
};

int cmd_relax(const RelaxArgs& a, std::ostream& out) {
  const KnotDiagram d0 = io::diagram_from_json(io::read_file(a.curve));
  const FlowConfig cfg = io::flow_config_from_json(io::read_file(a.config));
  const fs::path dir(a.outdir);
  fs::create_directories(dir);
  std::ofstream trace(dir / "trace.jsonl");
  if (!trace) throw Error(ErrorCode::kFormat, "cannot write " + (dir / "trace.jsonl").string());

  RenderSpec spec;
  auto keyframe = [&](int iter, const KnotDiagram& d) {
    std::ostringstream name;
    name << "keyframe_" << std::setw(5) << std::setfill('0') << iter << ".svg";
    spec.caption = "iteration " + std::to_string(iter);
    write_text(dir / name.str(), render_svg(d, spec));
  };
  const FlowTrace tr = relax(d0, cfg, [&](const FlowRecord& r, const KnotDiagram& d) {
    trace << io::to_json(r).dump() << '\n';
    if (a.keyframe_every > 0 && r.iter % a.keyframe_every == 0) keyframe(r.iter, d);
  });
  for (const FlowEvent& e : tr.events) trace << io::to_json(e).dump() << '\n';
  trace << io::Json{{"terminated", to_string(tr.terminated)}, {"message", tr.message}}.dump() << '\n';

  if (tr.final_curve) io::write_file(dir / "final.json", io::to_json(*tr.final_curve));
  if (tr.final_diagram) {
    io::write_file(dir / "final_diagram.json", io::to_json(*tr.final_diagram));
    keyframe(tr.records.empty() ? 0 : tr.records.back().iter, *tr.final_diagram);
  }
  const FlowRecord& last = tr.records.back();
  out << "terminated: " << to_string(tr.terminated) << (tr.message.empty() ? "" : " (" + tr.message + ")") << '\n'
      << "iterations " << last.iter << ", U " << last.U << ", R " << last.R << ", crossings " << last.crossings
      << ", events " << tr.events.size() << ", max GMRE " << tr.max_gmre() << '\n';
  for (const FlowEvent& e : tr.events) {
    out << "  iter " << e.iter << ": " << to_string(e.kind) << (e.detail.empty() ? "" : " " + e.detail) << '\n';
  }
  switch (tr.terminated) {
    case Termination::kForbiddenEvent: return kForbidden;
    case Termination::kSingular: return kSingular;
    default: return kOk;
  }
}

struct RenderArgs {
  std::string input;
  std::string output;
  int width = 480;
  int height = 480;
  double stroke = 2.0;
  bool no_crossings = false;
  std::string cycles;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const KnotDiagram d = io::diagram_from_json(io::read_file(a.input));
  RenderSpec spec;
  spec.width = a.width;
  spec.height = a.height;
  spec.stroke = a.stroke;
  spec.show_crossings = !a.no_crossings;
  std::vector<DiagramCycle> shown;
  if (!a.cycles.empty()) {
    spec.show_cycles = true;
    std::vector<DiagramCycle> all = enumerate_cycles(d);
    if (a.cycles == "all") {
      shown = std::move(all);
    } else {
      std::stringstream ids(a.cycles);
      std::string tok;
      while (std::getline(ids, tok, ',')) {
        std::size_t id = 0;
        try {
          id = std::stoul(tok);
        } catch (const std::exception&) {
          throw Error(ErrorCode::kFormat, "bad cycle id '" + tok + "'");
        }
        if (id >= all.size()) throw Error(ErrorCode::kDomain, "cycle id " + tok + " out of range");
        shown.push_back(all[id]);
      }
    }
  }
  const std::string svg = render_svg(d, spec, shown);
  if (a.output.empty() || a.output == "-") {
    out << svg;
  } else {
    write_text(a.output, svg);
  }
  return kOk;
}

struct VerifyArgs {
  std::string only;
  std::string data;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions opt;
  opt.only = a.only;
  opt.data_dir = a.data;
  opt.on_result = [&](const CriterionResult& r) { out << format_result(r) << std::endl; };
  const std::vector<CriterionResult> results = run_verification(opt);
  std::size_t failed = 0;
  for (const CriterionResult& r : results) failed += r.passed ? 0 : 1;
  out << results.size() - failed << '/' << results.size() << " criteria passed\n";
  if (failed == 0) return kOk;
  out << "failed:";
  for (const CriterionResult& r : results) {
    if (!r.passed) out << ' ' << r.id << " (" << r.title << ')';
  }
  out << '\n';
  return kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energies, cycles and relaxation flows of planar knot diagrams", "flatknot"};
  app.require_subcommand(1);

  PendulumArgs pa;
  auto* pendulum = app.add_subcommand("pendulum", "Build the closed figure-eight extremal for even r");
  pendulum->add_option("--r", pa.r, "Half periods of sn over the curve (even, nonzero)");
  pendulum->add_option("--samples", pa.samples, "Samples of the output curve")->check(CLI::Range(256, 1 << 20));
  pendulum->add_option("--out", pa.out, "Directory for curve JSON and SVG");

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "Resistance and uniformization energies of a diagram");
  energy->add_option("diagram", ea.input, "Diagram or curve JSON")->required();
  energy->add_option("--family", ea.family, "none | RE | MRE | GMRE");
  energy->add_option("--delta", ea.delta, "Area threshold for MRE and GMRE");
  energy->add_option("--f", ea.f, "Uniformization integrand: x, x^2, x^p");
  energy->add_flag("--alternated-four-arc", ea.alternated_four_arc, "GMRE: require alternation for 4-arc cycles");

  CyclesArgs ca;
  auto* cycles = app.add_subcommand("cycles", "Cycle census of a diagram or lattice");
  auto* grid_opt = cycles->add_option("--grid", ca.grid, "Grid G(n)")->check(CLI::Range(1, 6));
  auto* gstar_opt = cycles->add_option("--gstar", ca.gstar, "Woven grid G*(n)")->check(CLI::Range(1, 8));
  auto* diag_opt = cycles->add_option("--diagram", ca.diagram, "Diagram or curve JSON");
  grid_opt->excludes(gstar_opt)->excludes(diag_opt);
  gstar_opt->excludes(diag_opt);
  cycles->add_option("--limit", ca.limit, "Hard limit on enumerated cycles");

  RelaxArgs ra;
  auto* relax_cmd = app.add_subcommand("relax", "Run the knot-type preserving gradient flow");
  relax_cmd->add_option("curve", ra.curve, "Curve or diagram JSON")->required();
  relax_cmd->add_option("config", ra.config, "Flow config JSON")->required();
  relax_cmd->add_option("outdir", ra.outdir, "Output directory")->required();
  relax_cmd->add_option("--keyframe-every", ra.keyframe_every, "SVG keyframe interval (0: final only)");

  RenderArgs rda;
  auto* render = app.add_subcommand("render", "Draw a curve or diagram as SVG");
  render->add_option("input", rda.input, "Diagram or curve JSON")->required();
  render->add_option("output", rda.output, "SVG path, '-' for stdout");
  render->add_option("--width", rda.width)->check(CLI::PositiveNumber);
  render->add_option("--height", rda.height)->check(CLI::PositiveNumber);
  render->add_option("--stroke", rda.stroke)->check(CLI::PositiveNumber);
  render->add_flag("--no-crossings", rda.no_crossings, "Skip over/under gaps");
  render->add_option("--cycles", rda.cycles, "Comma separated cycle ids, or 'all'");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--only", va.only, "pendulum | cycles | energy | flow");
  verify->add_option("--data", va.data, "Directory holding trefoil.json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (pendulum->parsed()) return cmd_pendulum(pa, out);
    if (energy->parsed()) return cmd_energy(ea, out);
    if (cycles->parsed()) {
      if (ca.grid == 0 && ca.gstar == 0 && ca.diagram.empty()) {
        err << "cycles: give one of --grid, --gstar, --diagram\n";
        return kUsage;
      }
      return cmd_cycles(ca, out);
    }
    if (relax_cmd->parsed()) return cmd_relax(ra, out);
    if (render->parsed()) return cmd_render(rda, out);
    if (verify->parsed()) return cmd_verify(va, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace flatknot::cli
