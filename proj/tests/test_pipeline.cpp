#include <gtest/gtest.h>

#include <cmath>

#include "prony2d/error.hpp"
#include "prony2d/generate.hpp"
#include "prony2d/pipeline.hpp"

using namespace prony2d;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Format;
}

Polygon rect(double x0, double y0, double x1, double y1) { return validate_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}); }

Polygon l_shape() {
  return validate_polygon({{0.125, 0.125}, {0.75, 0.125}, {0.75, 0.375}, {0.375, 0.375}, {0.375, 0.75}, {0.125, 0.75}});
}

Polygon staircase() {
  return validate_polygon({{0.1, 0.1}, {0.7, 0.1}, {0.7, 0.3}, {0.5, 0.3}, {0.5, 0.5}, {0.3, 0.5}, {0.3, 0.7}, {0.1, 0.7}});
}

double max_diff(const SampleSet& a, const SampleSet& b) {
  double d = 0.0;
  for (const auto& [p, v] : a) d = std::max(d, std::abs(v - b.at(p)));
  return d;
}

// Midpoint rule on a res x res grid for a polygon whose edges lie on the
// cell boundaries; the per-cell phases factor into row and column sums.
Complex midpoint_ft(const Polygon& P, Vec2 t, int res) {
  const double h = 1.0 / res;
  std::vector<Complex> ex(res), ey(res);
  for (int i = 0; i < res; ++i) {
    ex[i] = std::polar(1.0, -2.0 * kPi * (i + 0.5) * h * t.x);
    ey[i] = std::polar(1.0, -2.0 * kPi * (i + 0.5) * h * t.y);
  }
  auto inside = [&](double x, double y) {
    bool in = false;
    const auto& v = P.vertices();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
      if ((v[i].y > y) != (v[j].y > y) && x < (v[j].x - v[i].x) * (y - v[i].y) / (v[j].y - v[i].y) + v[i].x) in = !in;
    return in;
  };
  Complex sum{};
  for (int j = 0; j < res; ++j) {
    Complex row{};
    for (int i = 0; i < res; ++i)
      if (inside((i + 0.5) * h, (j + 0.5) * h)) row += ex[i];
    sum += row * ey[j];
  }
  return sum * h * h;
}

}  // namespace

TEST(SamplePolygon, AreaAtOrigin) {
  const Polygon P = rect(0.0, 0.0, 0.5, 0.5);
  const SampleSet s = sample_polygon(P, polygon_grid(2, 1));
  EXPECT_NEAR(s.at(0, 0).real(), 0.25, 1e-15);
  EXPECT_EQ(s.size(), polygon_grid(2, 1).size());
}

TEST(SamplePolygon, ConjugateSymmetryAtMirroredPoints) {
  CounterRng rng(21);
  const Polygon P = random_rectilinear_polygon(rng, 10);
  for (auto [m, n] : {std::pair{1, 2}, {3, 0}, {0, 4}, {5, 7}}) {
    const Complex a = ft_triangle_oracle(P, {double(m), double(n)});
    const Complex b = ft_triangle_oracle(P, {double(-m), double(-n)});
    EXPECT_LT(std::abs(b - std::conj(a)), 1e-15);
  }
}

TEST(SamplePolygon, LShapeMatchesMidpointQuadrature) {
  const Polygon L = l_shape();
  const SampleSet s = sample_polygon(L, polygon_grid(2, 3));
  // The midpoint rule carries a relative error near (pi |t| h)^2 / 6, so the
  // probe points have small indices.
  std::vector<LatticePoint> small;
  for (const auto& [p, v] : s)
    if (p.m + p.n <= 3) small.push_back(p);
  CounterRng rng(22);
  for (int i = 0; i < 3; ++i) {
    const LatticePoint p = small[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(small.size()) - 1))];
    EXPECT_LT(std::abs(s.at(p) - midpoint_ft(L, {double(p.m), double(p.n)}, 4096)), 1e-6) << p.m << "," << p.n;
  }
}

TEST(SimpleFunction, SinglePartEqualsPolygon) {
  const Polygon P = l_shape();
  const LatticeSet2D A = polygon_grid(2, 6);
  EXPECT_EQ(max_diff(sample_simple_function({{{1.0, P}}, 6, 2}, A), sample_polygon(P, A)), 0.0);
}

TEST(SimpleFunction, TwoHalvesEqualTheWhole) {
  const Polygon P = staircase();
  const LatticeSet2D A = polygon_grid(2, 8);
  EXPECT_LT(max_diff(sample_simple_function({{{0.5, P}, {0.5, P}}, 16, 2}, A), sample_polygon(P, A)), 1e-15);
}

TEST(SimpleFunction, CancellationGivesZero) {
  const Polygon P = staircase();
  const SampleSet s = sample_simple_function({{{1.0, P}, {-1.0, P}}, 16, 2}, polygon_grid(2, 8));
  EXPECT_EQ(s.max_abs(), 0.0);
}

TEST(SimpleFunction, LinearityOnRandomPairs) {
  CounterRng rng(23);
  const LatticeSet2D A = polygon_grid(3, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon P1 = random_rectilinear_polygon(rng, 8), P2 = random_star_polygon(rng, 5);
    const Complex w1(rng.uniform(-2, 2), rng.uniform(-2, 2)), w2(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const SampleSet s = sample_simple_function({{{w1, P1}, {w2, P2}}, 13, 7}, A);
    const SampleSet a = sample_polygon(P1, A), b = sample_polygon(P2, A);
    for (const auto& [p, v] : s) EXPECT_LT(std::abs(v - (w1 * a.at(p) + w2 * b.at(p))), 1e-12);
  }
}

TEST(SimpleFunction, BoundsAreChecked) {
  const SimpleFunction F{{{1.0, l_shape()}, {2.0, staircase()}}, 14, 2};
  EXPECT_NO_THROW(check_simple_function(F, 2, 14));
  EXPECT_EQ(kind_of([&] { check_simple_function(F, 2, 13); }), ErrorKind::InvalidParameter);
  const SimpleFunction G{{{1.0, validate_polygon({{0.1, 0.1}, {0.6, 0.1}, {0.1, 0.6}})}}, 3, 3};
  EXPECT_EQ(kind_of([&] { check_simple_function(G, 2, 3); }), ErrorKind::InvalidParameter);
}

TEST(SimpleFunction, SubtractionDoublesTheParameters) {
  CounterRng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 12, k = 3;
    auto random_function = [&] {
      SimpleFunction F{{}, N, k};
      F.parts.push_back({Complex(rng.uniform(-1, 1), 0.0), random_rectilinear_polygon(rng, 6)});
      F.parts.push_back({Complex(0.0, rng.uniform(-1, 1)), validate_polygon({{0.2, 0.2}, {0.6, 0.2}, {0.2, 0.6}})});
      check_simple_function(F, k, N);
      return F;
    };
    const SimpleFunction F1 = random_function(), F2 = random_function();
    const SimpleFunction D = subtract(F1, F2);
    EXPECT_EQ(D.N, 2 * N);
    EXPECT_EQ(D.k, 2 * k);
    EXPECT_NO_THROW(check_simple_function(D, 2 * k, 2 * N));
    const LatticeSet2D A = polygon_grid(2, 3);
    const SampleSet a = sample_simple_function(F1, A), b = sample_simple_function(F2, A), d = sample_simple_function(D, A);
    for (const auto& [p, v] : d) EXPECT_LT(std::abs(v - (a.at(p) - b.at(p))), 1e-14);
  }
}

TEST(Identify, CentredSquare) {
  const Polygon P = rect(0.25, 0.25, 0.75, 0.75);
  const Polygon Q = identify_polygon(sample_polygon(P, polygon_grid(2, 4)), SlopeSet::axis(), 4);
  EXPECT_LT(polygon_distance(P, Q), 1e-9);
}

TEST(Identify, EightVertexStaircase) {
  const Polygon P = staircase();
  const auto r = identify_polygon_report(sample_polygon(P, polygon_grid(2, 8)), SlopeSet::axis(), 8);
  EXPECT_LT(polygon_distance(P, r.polygon), 1e-9);
  EXPECT_LT(r.verification_residual, 1e-10);
  EXPECT_EQ(r.report.result.terms.size(), 8u);
}

TEST(Identify, LooseBoundStillRecovers) {
  const Polygon P = l_shape();
  EXPECT_LT(polygon_distance(P, identify_polygon(sample_polygon(P, polygon_grid(2, 10)), SlopeSet::axis(), 10)), 1e-9);
}

TEST(Identify, ZeroSamplesAreRejected) {
  SampleSet zero;
  for (const auto& p : polygon_grid(2, 4)) zero.set(p, Complex{});
  EXPECT_EQ(kind_of([&] { identify_polygon(zero, SlopeSet::axis(), 4); }), ErrorKind::RecoveryInconclusive);
}

TEST(Identify, MissingPointsAreReported) {
  SampleSet s = sample_polygon(l_shape(), polygon_grid(2, 5));
  SampleSet cut;
  for (const auto& [p, v] : s)
    if (p.m != 3) cut.set(p, v);
  EXPECT_EQ(kind_of([&] { identify_polygon(cut, SlopeSet::axis(), 6); }), ErrorKind::MissingSamplePoints);
}

TEST(Identify, TriangleWithThreeSlopes) {
  const Polygon P = validate_polygon({{0.2, 0.1}, {0.7, 0.1}, {0.2, 0.6}});
  const SlopeSet slopes = edge_frame(P).slopes;
  EXPECT_LT(polygon_distance(P, identify_polygon(sample_polygon(P, polygon_grid(3, 3)), slopes, 3)), 1e-8);
}

TEST(Identify, HexagonWithThreeSlopes) {
  const Polygon P = validate_polygon({{0.2, 0.1}, {0.5, 0.1}, {0.7, 0.3}, {0.7, 0.6}, {0.4, 0.6}, {0.2, 0.4}});
  const SlopeSet slopes({{1, 0}, {0, 1}, {1, 1}});
  EXPECT_LT(polygon_distance(P, identify_polygon(sample_polygon(P, polygon_grid(3, 6)), slopes, 6)), 1e-8);
}

TEST(Identify, RandomRectilinearRoundTrip) {
  CounterRng rng(25);
  for (int trial = 0; trial < 15; ++trial) {
    const Polygon P = random_rectilinear_polygon(rng, 10);
    const int n = static_cast<int>(P.size());
    const Polygon Q = identify_polygon(sample_polygon(P, polygon_grid(2, n)), SlopeSet::axis(), n);
    EXPECT_LT(polygon_distance(P, Q), 1e-6) << trial;
  }
}

TEST(SimpleFunctionExpPoly, UnitWeightSquareMatchesAssembly) {
  const Polygon P = rect(0.25, 0.25, 0.75, 0.75);
  const ExpPoly2D f = recover_simple_function_exppoly(sample_polygon(P, polygon_grid(2, 4)), SlopeSet::axis(), 4);
  EXPECT_TRUE(approx_equal(f, assemble_fp(P, SlopeSet::axis()), 1e-9, 1e-9));
}

TEST(SimpleFunctionExpPoly, ComplexWeightScalesCoefficients) {
  const Polygon P = rect(0.25, 0.25, 0.75, 0.75);
  const Complex w(2.0, 1.0);
  const SampleSet s = sample_simple_function({{{w, P}}, 4, 2}, polygon_grid(2, 4));
  const ExpPoly2D f = recover_simple_function_exppoly(s, SlopeSet::axis(), 4);
  ExpPoly2D expected = assemble_fp(P, SlopeSet::axis());
  for (auto& t : expected.terms) t.p *= w;
  EXPECT_TRUE(approx_equal(f, expected, 1e-9, 1e-9));
}

TEST(SimpleFunctionExpPoly, OverlappingRectanglesAdd) {
  const Polygon R1 = rect(0.1, 0.1, 0.5, 0.6), R2 = rect(0.3, 0.2, 0.8, 0.4);
  const SampleSet s = sample_simple_function({{{1.0, R1}, {1.0, R2}}, 8, 2}, polygon_grid(2, 8));
  const ExpPoly2D f = recover_simple_function_exppoly(s, SlopeSet::axis(), 8);
  ExpPoly2D sum = assemble_fp(R1, SlopeSet::axis());
  for (const auto& t : assemble_fp(R2, SlopeSet::axis()).terms) sum.terms.push_back(t);
  EXPECT_TRUE(approx_equal(f, canonicalize(sum), 1e-9, 1e-9));
  EXPECT_EQ(f.terms.size(), 8u);
}

TEST(Uniqueness, SamePolygonIsIndistinguishable) {
  const Polygon P = staircase();
  const auto r = verify_uniqueness(P, P, 2, 8, UniquenessMode::KnownSlopes);
  EXPECT_EQ(r.max_difference, 0.0);
  EXPECT_EQ(r.verdict, Verdict::IndistinguishableOnSet);
  EXPECT_EQ(r.set_name, "polygon:2,8");
}

TEST(Uniqueness, TranslatedSquareIsDistinct) {
  const Polygon P = rect(0.25, 0.25, 0.75, 0.75), Q = rect(0.375, 0.25, 0.875, 0.75);
  const auto r = verify_uniqueness(P, Q, 2, 4, UniquenessMode::KnownSlopes);
  EXPECT_EQ(r.verdict, Verdict::DistinctConfirmed);
  EXPECT_GT(r.max_difference, r.tolerance);
  const auto u = verify_uniqueness(P, Q, 2, 4, UniquenessMode::UnknownSlopes);
  EXPECT_EQ(u.set_name, "polygon:4,8");
  EXPECT_EQ(u.verdict, Verdict::DistinctConfirmed);
}

TEST(Uniqueness, BoundsAreChecked) {
  EXPECT_EQ(kind_of([] { verify_uniqueness(staircase(), l_shape(), 2, 6, UniquenessMode::KnownSlopes); }),
            ErrorKind::InvalidParameter);
  const Polygon T = validate_polygon({{0.1, 0.1}, {0.6, 0.1}, {0.1, 0.6}});
  EXPECT_EQ(kind_of([&] { verify_uniqueness(T, T, 2, 4, UniquenessMode::KnownSlopes); }), ErrorKind::InvalidParameter);
}

TEST(Uniqueness, RandomDistinctPairs) {
  CounterRng rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const Polygon P = random_rectilinear_polygon(rng, 8), Q = random_rectilinear_polygon(rng, 8);
    if (same_polygon(P, Q, 1e-12)) continue;
    EXPECT_EQ(verify_uniqueness(P, Q, 2, 8, UniquenessMode::KnownSlopes).verdict, Verdict::DistinctConfirmed);
  }
}

namespace {

ExpPoly2D single(double x, double y, Complex c) {
  ExpPoly2D f;
  f.terms.push_back({make_freq(x, y), Poly2D::constant(c)});
  return f;
}

ExpPoly2D plus(ExpPoly2D a, const ExpPoly2D& b) {
  for (const auto& t : b.terms) a.terms.push_back(t);
  return canonicalize(a);
}

// Points with even m: there exp(2 pi i xi / 2) = 1.
LatticeSet2D even_columns(int w, int h) {
  std::vector<LatticePoint> pts;
  for (int m = 0; m <= w; m += 2)
    for (int n = 0; n <= h; ++n) pts.push_back({m, n});
  return LatticeSet2D(pts);
}

}  // namespace

TEST(FLambda, EqualPolynomialsGiveAConstantFamily) {
  const ExpPoly2D f = plus(single(0.1, 0.2, {1, 1}), single(0.4, 0.7, 2.0));
  const FamilyCheck c = f_lambda_family_check(f, f, layered_grid(4, 1), {-1.0, 0.5, 2.0, 1.0});
  EXPECT_TRUE(c);
  EXPECT_NE(c.diagnostic.find("f1 = f2"), std::string::npos);
}

TEST(FLambda, DistinctPolynomialsAgreeingOnASubset) {
  const ExpPoly2D g = single(0.3, 0.6, {0.5, -1.0});
  const ExpPoly2D f1 = plus(g, single(0.0, 0.25, 1.0)), f2 = plus(g, single(0.5, 0.25, 1.0));
  const LatticeSet2D A = even_columns(8, 6);
  EXPECT_TRUE(f_lambda_family_check(f1, f2, A, {-1.0, 0.5, 2.0, 1.0, {0.0, 3.0}}));
  EXPECT_FALSE(f_lambda_family_check(f1, f2, layered_grid(2, 1), {0.5}));
}
