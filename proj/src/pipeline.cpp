#include "prony2d/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prony2d/error.hpp"
#include "prony2d/random.hpp"

namespace prony2d {

SampleSet sample_polygon(const Polygon& P, const LatticeSet2D& A) {
  SampleSet s;
  for (const auto& p : A) s.set(p, ft_triangle_oracle(P, {static_cast<double>(p.m), static_cast<double>(p.n)}));
  return s;
}

SlopeSet slopes_of(const SimpleFunction& F) {
  std::vector<Vec2> dirs;
  SlopeSet acc;
  for (const auto& part : F.parts) {
    const SlopeSet own = edge_frame(part.polygon).slopes;
    for (const auto& s : own.slopes())
      if (acc.index_of(s) < 0) {
        dirs.push_back(s);
        acc = SlopeSet(dirs);
      }
  }
  return acc;
}

int total_vertices(const SimpleFunction& F) {
  int n = 0;
  for (const auto& part : F.parts) n += static_cast<int>(part.polygon.size());
  return n;
}

void check_simple_function(const SimpleFunction& F, int k, int N) {
  const int n = total_vertices(F);
  if (n > N)
    throw Error(ErrorKind::InvalidParameter,
                std::to_string(n) + " vertices in total exceed N = " + std::to_string(N));
  const auto slopes = slopes_of(F).size();
  if (static_cast<int>(slopes) > k)
    throw Error(ErrorKind::InvalidParameter,
                std::to_string(slopes) + " distinct slopes exceed k = " + std::to_string(k));
}

SimpleFunction subtract(const SimpleFunction& F1, const SimpleFunction& F2) {
  SimpleFunction out{F1.parts, F1.N + F2.N, F1.k + F2.k};
  for (const auto& part : F2.parts) out.parts.push_back({-part.weight, part.polygon});
  return out;
}

SampleSet sample_simple_function(const SimpleFunction& F, const LatticeSet2D& A) {
  SampleSet out;
  for (const auto& p : A) out.set(p, Complex{});
  for (const auto& part : F.parts)
    for (const auto& [p, v] : sample_polygon(part.polygon, A)) out.set(p, out.at(p) + part.weight * v);
  return out;
}

namespace {

int degree_bound_for(const SlopeSet& slopes) { return std::max(1, static_cast<int>(slopes.size()) - 1); }

RecoveryReport recover_fp(const SampleSet& samples, const SlopeSet& slopes, int N, const IdentifyOptions& opts) {
  if (slopes.size() < 2) throw Error(ErrorKind::InvalidParameter, "need at least 2 slopes");
  if (N < 1) throw Error(ErrorKind::InvalidParameter, "N must be >= 1");
  samples.require(polygon_grid(static_cast<int>(slopes.size()), N));
  return recover_auto(clear_denominators(samples, slopes), 2 * N, degree_bound_for(slopes), opts.recovery);
}

double snap_unit(double v) {
  const double w = wrap01(v);
  return w > 1.0 - 1e-9 ? 0.0 : w;
}

// The slope pair {a, b} with p = c prod_{r != a, b} (s_r.t).
std::pair<int, int> incident_slopes(const Poly2D& p, const SlopeSet& slopes, const IdentifyOptions& opts) {
  const std::size_t k = slopes.size();
  if (k == 2) return {0, 1};
  CounterRng rng(opts.probe_seed);
  std::vector<Vec2> probes(3 * k * k);
  for (auto& t : probes) t = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  double scale = 0.0;
  for (const auto& t : probes) scale = std::max(scale, std::abs(p(t.x, t.y)));

  std::vector<std::pair<int, int>> matches;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const Poly2D q = linear_form_product(slopes, {a, b}, p.dim());
      // Scalar from the probe where the product is largest.
      const auto best = std::max_element(probes.begin(), probes.end(), [&](Vec2 l, Vec2 r) {
        return std::abs(q(l.x, l.y)) < std::abs(q(r.x, r.y));
      });
      const Complex c = p(best->x, best->y) / q(best->x, best->y);
      bool fits = std::abs(c) > 0.0;
      for (const auto& t : probes)
        fits = fits && std::abs(p(t.x, t.y) - c * q(t.x, t.y)) <= opts.pair_rel_tol * scale;
      if (fits) matches.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  if (matches.size() != 1)
    throw Error(ErrorKind::CoefficientStructure,
                std::to_string(matches.size()) + " slope pairs explain a vertex coefficient, expected 1");
  return matches.front();
}

}  // namespace

PolygonIdentification identify_polygon_report(const SampleSet& samples, const SlopeSet& slopes, int N,
                                              const IdentifyOptions& opts) {
  if (slopes.size() >= 2 && N >= 1) samples.require(polygon_grid(static_cast<int>(slopes.size()), N));
  if (samples.contains({0, 0}) && std::abs(samples.at(0, 0)) <= 1e-12)
    throw Error(ErrorKind::RecoveryInconclusive, "the area sample at (0,0) vanishes; no polygon has zero area");

  PolygonIdentification out;
  out.report = recover_fp(samples, slopes, N, opts);
  std::vector<IncidentVertex> vertices;
  for (const auto& term : out.report.result.terms) {
    const Vec2 v{snap_unit(-term.freq.x), snap_unit(-term.freq.y)};
    vertices.push_back({v, incident_slopes(term.p, slopes, opts)});
  }
  if (static_cast<int>(vertices.size()) > N)
    throw Error(ErrorKind::Verification,
                std::to_string(vertices.size()) + " recovered vertices exceed N = " + std::to_string(N));
  if (slopes.is_axis()) {
    std::vector<Vec2> pts;
    for (const auto& iv : vertices) pts.push_back(iv.v);
    out.polygon = reconnect_axis_parallel(pts);
  } else {
    out.polygon = reconnect_by_slopes(vertices, slopes);
  }

  double residual = 0.0;
  for (const auto& [p, value] : samples)
    residual = std::max(residual, std::abs(ft_triangle_oracle(out.polygon, {static_cast<double>(p.m),
                                                                            static_cast<double>(p.n)}) -
                                           value));
  out.verification_residual = residual;
  if (!(residual <= opts.verify_rel * (1.0 + samples.max_abs())))
    throw Error(ErrorKind::Verification, "re-sampled polygon deviates by " + std::to_string(residual));
  return out;
}

Polygon identify_polygon(const SampleSet& samples, const SlopeSet& slopes, int N, const IdentifyOptions& opts) {
  return identify_polygon_report(samples, slopes, N, opts).polygon;
}

ExpPoly2D recover_simple_function_exppoly(const SampleSet& samples, const SlopeSet& slopes, int N,
                                          const IdentifyOptions& opts) {
  return recover_fp(samples, slopes, N, opts).result;
}

std::string verdict_name(Verdict v) {
  return v == Verdict::DistinctConfirmed ? "distinct-confirmed" : "indistinguishable-on-set";
}

std::string mode_name(UniquenessMode m) { return m == UniquenessMode::KnownSlopes ? "known" : "unknown"; }

UniquenessReport verify_uniqueness(const Polygon& P1, const Polygon& P2, int k, int N, UniquenessMode mode) {
  if (k < 2 || N < 1) throw Error(ErrorKind::InvalidParameter, "need k >= 2 and N >= 1");
  for (const Polygon* P : {&P1, &P2}) {
    if (static_cast<int>(P->size()) > N)
      throw Error(ErrorKind::InvalidParameter,
                  "polygon with " + std::to_string(P->size()) + " vertices exceeds N = " + std::to_string(N));
    const auto slopes = edge_frame(*P).slopes.size();
    if (static_cast<int>(slopes) > k)
      throw Error(ErrorKind::InvalidParameter,
                  "polygon with " + std::to_string(slopes) + " slopes exceeds k = " + std::to_string(k));
  }
  const int kk = mode == UniquenessMode::KnownSlopes ? k : 2 * k;
  const int nn = mode == UniquenessMode::KnownSlopes ? N : 2 * N;
  const LatticeSet2D A = polygon_grid(kk, nn);

  UniquenessReport r;
  r.set_name = "polygon:" + std::to_string(kk) + "," + std::to_string(nn);
  r.set_size = A.size();
  double scale = 0.0;
  for (const auto& p : A) {
    const Vec2 t{static_cast<double>(p.m), static_cast<double>(p.n)};
    const Complex a = ft_triangle_oracle(P1, t), b = ft_triangle_oracle(P2, t);
    scale = std::max({scale, std::abs(a), std::abs(b)});
    const double d = std::abs(a - b);
    if (d > r.max_difference) {
      r.max_difference = d;
      r.argmax = p;
    }
  }
  r.tolerance = 1e-9 * (1.0 + scale);
  r.verdict = r.max_difference > r.tolerance ? Verdict::DistinctConfirmed : Verdict::IndistinguishableOnSet;
  return r;
}

namespace {

double max_difference_on(const ExpPoly2D& f, const ExpPoly2D& g, const LatticeSet2D& A) {
  double d = 0.0;
  for (const auto& p : A) d = std::max(d, std::abs(eval2d(f, p.m, p.n) - eval2d(g, p.m, p.n)));
  return d;
}

bool structurally_equal(const ExpPoly2D& a, const ExpPoly2D& b, double tol) {
  const Deviation d = deviation(a, b);
  return d.freq <= tol && d.coeff <= tol;
}

}  // namespace

FamilyCheck f_lambda_family_check(const ExpPoly2D& f1, const ExpPoly2D& f2, const LatticeSet2D& A,
                                  const std::vector<Complex>& lambdas) {
  FamilyCheck out;
  auto fail = [&](std::string why) {
    if (out.passed) out.diagnostic = std::move(why);
    out.passed = false;
  };
  double scale = 0.0;
  for (const auto& p : A) scale = std::max(scale, std::abs(eval2d(f1, p.m, p.n)));
  const double tol = 1e-9 * (1.0 + scale);
  if (max_difference_on(f1, f2, A) > tol) {
    fail("f1 and f2 differ on A");
    return out;
  }

  const ExpPoly2D c1 = canonicalize(f1), c2 = canonicalize(f2);
  const bool distinct = !structurally_equal(c1, c2, 1e-12);
  std::vector<double> xs;
  for (const auto* f : {&c1, &c2})
    for (const auto& t : f->terms) xs.push_back(t.freq.x);

  std::vector<ExpPoly2D> family;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const Complex lambda = lambdas[i];
    ExpPoly2D fl = linear_combine(lambda, f1, f2);
    const std::string tag = "lambda #" + std::to_string(i);
    if (max_difference_on(fl, c1, A) > tol) fail(tag + " disagrees with f1 on A");
    for (const auto& t : fl.terms)
      if (std::none_of(xs.begin(), xs.end(), [&](double x) { return torus_distance(x, t.freq.x) <= kDefaultMergeTol; }))
        fail(tag + " has an x-projection outside those of f1 and f2");
    if (lambda == Complex(1.0) && !structurally_equal(fl, c1, 1e-12)) fail(tag + " = 1 does not reproduce f1");
    family.push_back(std::move(fl));
  }
  if (distinct)
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        if (lambdas[i] != lambdas[j] && structurally_equal(family[i], family[j], 1e-12))
          fail("lambdas #" + std::to_string(i) + " and #" + std::to_string(j) + " give the same polynomial");
  if (out.passed && !distinct) out.diagnostic = "f1 = f2; the family is constant";
  return out;
}

}  // namespace prony2d
