#include "prony2d/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "prony2d/error.hpp"
#include "prony2d/generate.hpp"
#include "prony2d/json_io.hpp"
#include "prony2d/pipeline.hpp"

namespace prony2d::cli {

namespace {

bool logging_enabled() {
  const char* v = std::getenv("PRONY2D_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log(const std::string& line) {
  if (logging_enabled()) std::cerr << "[prony2d] " << line << '\n';
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return io::read_file(path);
}

void emit(CommandResult& r, const std::optional<std::string>& path, const std::string& text) {
  if (path && *path != "-") {
    io::write_file(*path, text);
    r.outputs.push_back(*path);
  } else {
    r.stdout_text += text;
  }
}

// "polygon:k,N", "layered:N,D", "unifreq:N,D" or "rect:W,H".
LatticeSet2D parse_set(const std::string& spec) {
  const auto colon = spec.find(':');
  const auto comma = spec.find(',', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || comma == std::string::npos)
    throw Error(ErrorKind::InvalidParameter, "set must look like name:a,b, got \"" + spec + "\"");
  const std::string name = spec.substr(0, colon);
  int a = 0, b = 0;
  try {
    std::size_t used = 0;
    const std::string sa = spec.substr(colon + 1, comma - colon - 1), sb = spec.substr(comma + 1);
    a = std::stoi(sa, &used);
    if (used != sa.size()) throw std::invalid_argument(sa);
    b = std::stoi(sb, &used);
    if (used != sb.size()) throw std::invalid_argument(sb);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidParameter, "set parameters must be integers in \"" + spec + "\"");
  }
  if (name == "polygon") return polygon_grid(a, b);
  if (name == "layered") return layered_grid(a, b);
  if (name == "unifreq") return unifreq_grid(a, b);
  if (name == "rect") return rectangle(a, b);
  throw Error(ErrorKind::InvalidParameter, "unknown set \"" + name + "\"");
}

Polygon load_polygon(const std::string& path) { return io::polygon_from_json(io::parse(read_input(path))); }

std::string svg(const Polygon& P, const std::optional<LatticeSet2D>& A) {
  const double size = 400.0, pad = 20.0;
  std::ostringstream s;
  const double width = A ? 2.0 * size : size;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << width << ' ' << size << "\">\n";
  const double span = size - 2.0 * pad;
  s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << span << "\" height=\"" << span
    << "\" fill=\"none\" stroke=\"#999\"/>\n<polygon points=\"";
  for (const auto& v : P.vertices()) s << pad + v.x * span << ',' << size - pad - v.y * span << ' ';
  s << "\" fill=\"#1f77b4\" fill-opacity=\"0.3\" stroke=\"#1f77b4\"/>\n";
  if (A) {
    int mmax = 1, nmax = 1;
    for (const auto& p : *A) {
      mmax = std::max(mmax, p.m);
      nmax = std::max(nmax, p.n);
    }
    const double step = span / std::max(mmax, nmax);
    for (const auto& p : *A)
      s << "<circle cx=\"" << size + pad + p.m * step << "\" cy=\"" << size - pad - p.n * step << "\" r=\""
        << 1.0 + std::log1p(static_cast<double>(p.m + p.n)) << "\" fill=\"#d62728\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

struct Flags {
  std::optional<std::string> out, report, set, polygon, samples, p1, p2;
  std::string slopes = "axis", mode = "known";
  bool rectilinear = false, star = false;
  int max_vertices = 8, bound = 0, k = 2, trials = 20;
  std::uint64_t seed = 0;
};

CommandResult gen_polygon(const Flags& f) {
  if (f.rectilinear == f.star) throw Error(ErrorKind::InvalidParameter, "give exactly one of --rectilinear, --star");
  CounterRng rng(f.seed);
  const Polygon P =
      f.rectilinear ? random_rectilinear_polygon(rng, f.max_vertices) : random_star_polygon(rng, f.max_vertices);
  CommandResult r;
  emit(r, f.out, io::dump(io::to_json(P)));
  r.summary = "polygon with " + std::to_string(P.size()) + " vertices";
  return r;
}

CommandResult sample(const Flags& f) {
  const Polygon P = load_polygon(f.polygon.value());
  const LatticeSet2D A = parse_set(f.set.value());
  log("sampling " + std::to_string(A.size()) + " points");
  CommandResult r;
  emit(r, f.out, io::dump(io::to_json(sample_polygon(P, A))));
  r.summary = std::to_string(A.size()) + " samples on " + *f.set;
  return r;
}

CommandResult recover(const Flags& f) {
  if (f.bound < 1) throw Error(ErrorKind::InvalidParameter, "--bound must be >= 1");
  const SampleSet samples = io::samples_from_json(io::parse(read_input(f.samples.value())));
  const SlopeSet slopes = f.slopes == "axis" ? SlopeSet::axis() : io::slopes_from_json(io::parse(io::read_file(f.slopes)));
  log("recovering from " + std::to_string(samples.size()) + " samples with " + std::to_string(slopes.size()) +
      " slopes");
  const PolygonIdentification id = identify_polygon_report(samples, slopes, f.bound);
  CommandResult r;
  emit(r, f.out, io::dump(io::to_json(id.polygon)));
  if (f.report) {
    io::Json rep = io::to_json(id.report);
    rep["verification_residual"] = id.verification_residual;
    emit(r, f.report, io::dump(rep));
  }
  r.summary = "recovered polygon with " + std::to_string(id.polygon.size()) + " vertices, residual " +
              fmt(id.verification_residual);
  return r;
}

CommandResult verify(const Flags& f) {
  if (f.mode != "known" && f.mode != "unknown") throw Error(ErrorKind::InvalidParameter, "--mode is known or unknown");
  const auto mode = f.mode == "known" ? UniquenessMode::KnownSlopes : UniquenessMode::UnknownSlopes;
  const UniquenessReport rep =
      verify_uniqueness(load_polygon(f.p1.value()), load_polygon(f.p2.value()), f.k, f.bound, mode);
  io::Json j = io::to_json(rep);
  j["mode"] = mode_name(mode);
  CommandResult r;
  emit(r, f.out, io::dump(j));
  r.summary = verdict_name(rep.verdict) + " on " + rep.set_name + ", max difference " + fmt(rep.max_difference);
  return r;
}

CommandResult oracle_check(const Flags& f) {
  const Polygon P = load_polygon(f.polygon.value());
  const EdgeFrame frame = edge_frame(P);
  CounterRng rng(f.seed);
  double worst = 0.0, worst_rel = 0.0;
  for (int i = 0; i < f.trials; ++i) {
    Vec2 t;
    bool ok = false;
    while (!ok) {
      t = {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
      ok = std::all_of(frame.u.begin(), frame.u.end(), [&](Vec2 u) { return std::abs(dot(u, t)) >= 1e-2; });
    }
    const Complex tri = ft_triangle_oracle(P, t);
    const double d = std::abs(bb_transform(P, t) - tri);
    worst = std::max(worst, d);
    worst_rel = std::max(worst_rel, d / (1.0 + std::abs(tri)));
  }
  CommandResult r;
  emit(r, f.out, io::dump(io::Json{{"trials", f.trials}, {"max_discrepancy", worst}, {"max_relative", worst_rel}}));
  r.summary = "max bb-vs-triangle discrepancy " + fmt(worst) + " over " + std::to_string(f.trials) + " points";
  if (!(worst_rel < 1e-9)) throw Error(ErrorKind::Verification, r.summary);
  return r;
}

CommandResult plot(const Flags& f) {
  const Polygon P = load_polygon(f.polygon.value());
  std::optional<LatticeSet2D> A;
  if (f.set) A = parse_set(*f.set);
  CommandResult r;
  emit(r, f.out, svg(P, A));
  r.summary = "plotted polygon with " + std::to_string(P.size()) + " vertices";
  return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Fourier-sample recovery of polygons and exponential polynomials", "prony2d"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen-polygon", "Random polygon as JSON");
  gen->add_flag("--rectilinear", f.rectilinear, "Axis-parallel polyomino boundary");
  gen->add_flag("--star", f.star, "Star-shaped polygon with --max-vertices vertices");
  gen->add_option("--max-vertices", f.max_vertices)->check(CLI::Range(4, 256));
  gen->add_option("--seed", f.seed);
  gen->add_option("--out", f.out);

  auto* smp = app.add_subcommand("sample", "Fourier samples of a polygon indicator");
  smp->add_option("--polygon", f.polygon)->required();
  smp->add_option("--set", f.set, "polygon:k,N | layered:N,D | unifreq:N,D | rect:W,H")->required();
  smp->add_option("--out", f.out);

  auto* rec = app.add_subcommand("recover", "Identify a polygon from its samples");
  rec->add_option("--samples", f.samples)->required();
  rec->add_option("--slopes", f.slopes, "axis or a slopes JSON file");
  rec->add_option("--bound", f.bound, "Vertex bound N")->required();
  rec->add_option("--out", f.out);
  rec->add_option("--report", f.report);

  auto* ver = app.add_subcommand("verify-uniqueness", "Compare two polygons on the sampling set");
  ver->add_option("--p1", f.p1)->required();
  ver->add_option("--p2", f.p2)->required();
  ver->add_option("--k", f.k)->required();
  ver->add_option("--bound", f.bound)->required();
  ver->add_option("--mode", f.mode);
  ver->add_option("--out", f.out);

  auto* orc = app.add_subcommand("oracle-check", "Vertex formula against triangulation at random points");
  orc->add_option("--polygon", f.polygon)->required();
  orc->add_option("--trials", f.trials)->check(CLI::PositiveNumber);
  orc->add_option("--seed", f.seed);
  orc->add_option("--out", f.out);

  auto* plt = app.add_subcommand("plot", "SVG of a polygon and optionally a sampling set");
  plt->add_option("--polygon", f.polygon)->required();
  plt->add_option("--set", f.set);
  plt->add_option("--out", f.out);

  CommandResult r;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      r.stdout_text = app.help();
      r.summary = "help";
      return r;
    }
    r.exit_code = 2;
    r.summary = std::string("usage: ") + e.what();
    return r;
  }

  try {
    if (gen->parsed()) r = gen_polygon(f);
    else if (smp->parsed()) r = sample(f);
    else if (rec->parsed()) r = recover(f);
    else if (ver->parsed()) r = verify(f);
    else if (orc->parsed()) r = oracle_check(f);
    else r = plot(f);
  } catch (const Error& e) {
    r = CommandResult{};
    r.exit_code = 1;
    r.summary = e.what();
  }
  log(r.summary);
  return r;
}

}  // namespace prony2d::cli
