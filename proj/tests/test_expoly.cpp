#include <gtest/gtest.h>

#include "generators.hpp"
#include "prony2d/expoly.hpp"
#include "prony2d/sampling.hpp"

using namespace prony2d;

namespace {

ExpPoly2D single(double x, double y, Complex c, int D = 1) {
  ExpPoly2D f;
  f.degree_bound = D;
  f.terms.push_back({make_freq(x, y), Poly2D::constant(c, D)});
  return f;
}

void expect_close(Complex a, Complex b, double tol = 1e-14) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Eval1D, TrivialCases) {
  ExpPoly1D constant{{{0.0, Poly1D{{1.0}}}}};
  expect_close(eval1d(constant, 17), 1.0);

  ExpPoly1D quarter{{{0.25, Poly1D{{1.0}}}}};
  expect_close(eval1d(quarter, 1), Complex(0, 1));

  ExpPoly1D linear{{{0.0, Poly1D{{0.0, 1.0}}}}};
  expect_close(eval1d(linear, 3), 3.0);
}

TEST(Eval2D, TrivialCases) {
  expect_close(eval2d(single(0, 0, 1), 5, 7), 1.0);
  expect_close(eval2d(single(0.5, 0.5, 1), 1, 1), 1.0);
  expect_close(eval2d(single(0.5, 0, 1), 1, 0), -1.0);
}

TEST(Poly2D, HornerMatchesDirectSum) {
  Poly2D p(3);
  p.coeff(0, 0) = 1.0;
  p.coeff(1, 2) = Complex(0, 2);
  p.coeff(2, 1) = -3.0;
  const Complex xi(1.5, 0), eta(-0.5, 0);
  const Complex direct = 1.0 + Complex(0, 2) * xi * eta * eta - 3.0 * xi * xi * eta;
  expect_close(p(xi, eta), direct, 1e-13);
}

TEST(Canonicalize, CancellingTermsVanish) {
  ExpPoly2D f = single(0.5, 0.5, 1);
  f.terms.push_back({make_freq(0.5, 0.5), Poly2D::constant(-1.0)});
  EXPECT_TRUE(canonicalize(f).terms.empty());
}

TEST(Canonicalize, SortsLexicographically) {
  ExpPoly2D f = single(0.7, 0, 1);
  f.terms.push_back({make_freq(0.2, 0), Poly2D::constant(1.0)});
  const auto c = canonicalize(f);
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(c.terms[0].freq.x, 0.2);
  EXPECT_DOUBLE_EQ(c.terms[1].freq.x, 0.7);
}

TEST(Canonicalize, SnapsWithinTolerance) {
  const auto c = canonicalize(single(0.5, 1e-12, 1), 1e-9);
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(c.terms[0].freq.x, 0.5);
  EXPECT_DOUBLE_EQ(c.terms[0].freq.y, 0.0);
}

TEST(Canonicalize, MergesAcrossTheWrapPoint) {
  ExpPoly2D f = single(1.0 - 1e-10, 0.3, 1);
  f.terms.push_back({make_freq(1e-10, 0.3), Poly2D::constant(2.0)});
  const auto c = canonicalize(f);
  ASSERT_EQ(c.terms.size(), 1u);
  expect_close(c.terms[0].p.coeff(0, 0), 3.0);
}

TEST(Canonicalize, Idempotent) {
  CounterRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    ExpPoly2D f = fixtures::random_exppoly2d(rng, 6, 2);
    // Inject near-duplicates so merging is exercised.
    if (!f.terms.empty()) {
      auto t = f.terms.front();
      t.freq.x = wrap01(t.freq.x + 3e-8);
      f.terms.push_back(t);
    }
    const auto once = canonicalize(f);
    const auto twice = canonicalize(once);
    ASSERT_EQ(once.terms.size(), twice.terms.size());
    for (std::size_t i = 0; i < once.terms.size(); ++i) {
      EXPECT_EQ(once.terms[i].freq.x, twice.terms[i].freq.x);
      EXPECT_EQ(once.terms[i].freq.y, twice.terms[i].freq.y);
      EXPECT_EQ(once.terms[i].p.raw(), twice.terms[i].p.raw());
    }
  }
}

TEST(LinearCombine, Endpoints) {
  CounterRng rng(3);
  const auto f1 = fixtures::random_exppoly2d(rng, 4, 2);
  const auto f2 = fixtures::random_exppoly2d(rng, 4, 2);
  EXPECT_TRUE(approx_equal(linear_combine(1.0, f1, f2), canonicalize(f1), 0, 1e-15));
  EXPECT_TRUE(approx_equal(linear_combine(0.0, f1, f2), canonicalize(f2), 0, 1e-15));
  EXPECT_TRUE(approx_equal(linear_combine(0.37, f1, f1), canonicalize(f1), 0, 1e-15));
}

TEST(LinearCombine, EvaluationIsLinear) {
  CounterRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f1 = fixtures::random_exppoly2d(rng, 5, 2);
    const auto f2 = fixtures::random_exppoly2d(rng, 5, 2);
    const Complex lambda(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const auto combo = linear_combine(lambda, f1, f2);
    EXPECT_LE(combo.terms.size(), f1.terms.size() + f2.terms.size());
    for (int k = 0; k < 10; ++k) {
      const double xi = rng.uniform_int(0, 20), eta = rng.uniform_int(0, 20);
      const Complex expected = lambda * eval2d(f1, xi, eta) + (1.0 - lambda) * eval2d(f2, xi, eta);
      const Complex got = eval2d(combo, xi, eta);
      EXPECT_LE(std::abs(got - expected), 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(LinearCombine, FamilyAgreesOnCommonSet) {
  // f2 = f1 + h where h vanishes on {0,1,2} x anything.
  CounterRng rng(9);
  const auto f1 = fixtures::random_exppoly2d(rng, 3, 1);
  ExpPoly2D f2 = f1;
  f2.degree_bound = 4;
  Poly2D h(4);
  // xi (xi - 1)(xi - 2) = xi^3 - 3 xi^2 + 2 xi
  h.coeff(1, 0) = 2.0;
  h.coeff(2, 0) = -3.0;
  h.coeff(3, 0) = 1.0;
  f2.terms.push_back({make_freq(0.31, 0.77), h});
  const auto A = layered_grid(1, 1);
  for (Complex lambda : {Complex(-1), Complex(0.5), Complex(2), Complex(0.3, 0.4)}) {
    const auto fl = linear_combine(lambda, f1, f2);
    for (const auto& p : A) EXPECT_LE(std::abs(eval2d(fl, p.m, p.n) - eval2d(f1, p.m, p.n)), 1e-12);
  }
}

TEST(Torus, DistanceAndWrap) {
  EXPECT_DOUBLE_EQ(wrap01(-0.25), 0.75);
  EXPECT_DOUBLE_EQ(wrap01(3.5), 0.5);
  EXPECT_NEAR(torus_distance(0.95, 0.05), 0.1, 1e-15);
  EXPECT_NEAR(torus_distance(0.2, 0.5), 0.3, 1e-15);
}
