#pragma once

// Univariate and bivariate exponential polynomials
//
//   f(xi)      = sum_j p_j(xi)      exp(2 pi i x_j xi)
//   f(xi, eta) = sum_j p_j(xi, eta) exp(2 pi i (x_j xi + y_j eta))
//
// with frequencies on the torus R/Z represented in [0, 1). A single sign
// convention (+) is used throughout the library; callers that start from
// exp(-2 pi i v.t) phases store the frequency -v mod 1.

#include <complex>
#include <cstddef>
#include <vector>

namespace prony2d {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultMergeTol = 1e-7;

/// Reduce a real number into [0, 1).
double wrap01(double x);

/// Distance on R/Z: min(|a - b| mod 1, 1 - |a - b| mod 1).
double torus_distance(double a, double b);

/// exp(2 pi i x n), with the phase reduced mod 1 before evaluation so that
/// large integer arguments do not lose accuracy.
Complex unit_phase(double x, double n);

/// Univariate polynomial, coeffs[a] multiplies xi^a.
struct Poly1D {
  std::vector<Complex> coeffs;

  Complex operator()(Complex xi) const;
  /// -1 for the zero polynomial.
  int degree() const;
  double sup_norm() const;
};

/// Dense bivariate polynomial on a dim x dim grid; coeff(a, b) multiplies
/// xi^a eta^b.
class Poly2D {
 public:
  Poly2D() = default;
  explicit Poly2D(std::size_t dim);
  static Poly2D constant(Complex value, std::size_t dim = 1);

  std::size_t dim() const noexcept { return dim_; }
  Complex& coeff(std::size_t a, std::size_t b) { return coeffs_[a * dim_ + b]; }
  Complex coeff(std::size_t a, std::size_t b) const { return coeffs_[a * dim_ + b]; }

  Complex operator()(Complex xi, Complex eta) const;
  double sup_norm() const;

  /// Copy embedded in a larger grid (zero padded).
  Poly2D resized(std::size_t dim) const;

  Poly2D& operator+=(const Poly2D& other);
  Poly2D& operator*=(Complex s);

  const std::vector<Complex>& raw() const noexcept { return coeffs_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> coeffs_;
};

Poly2D operator+(Poly2D lhs, const Poly2D& rhs);
Poly2D operator*(Complex s, Poly2D p);

struct TorusFreq {
  double x = 0.0;
  double y = 0.0;
};

TorusFreq make_freq(double x, double y);

struct Term1D {
  double x = 0.0;
  Poly1D p;
};

struct ExpPoly1D {
  std::vector<Term1D> terms;
};

struct Term2D {
  TorusFreq freq;
  Poly2D p;
};

struct ExpPoly2D {
  int degree_bound = 1;  // every variable raised to a power < degree_bound
  std::vector<Term2D> terms;
};

Complex eval1d(const ExpPoly1D& f, double xi);
Complex eval2d(const ExpPoly2D& f, double xi, double eta);

/// Merge frequencies within tol (per coordinate, torus metric) by summing
/// coefficient grids, snap coordinates within tol of 0 to 0, drop terms
/// whose coefficient sup-norm is below tol and sort by (x, y).
ExpPoly2D canonicalize(const ExpPoly2D& f, double tol = kDefaultMergeTol);

/// Canonical form of lambda f1 + (1 - lambda) f2.
ExpPoly2D linear_combine(Complex lambda, const ExpPoly2D& f1, const ExpPoly2D& f2,
                         double tol = kDefaultMergeTol);

/// Structural comparison of canonical forms: same term count, frequencies
/// within freq_tol, coefficients within coeff_tol.
bool approx_equal(const ExpPoly2D& a, const ExpPoly2D& b, double freq_tol, double coeff_tol);

/// Largest frequency and coefficient deviation between canonical forms with
/// the same term count. Returns {inf, inf} when term counts differ.
struct Deviation {
  double freq = 0.0;
  double coeff = 0.0;
};
Deviation deviation(const ExpPoly2D& a, const ExpPoly2D& b);
Deviation deviation(const ExpPoly1D& a, const ExpPoly1D& b);

}  // namespace prony2d
