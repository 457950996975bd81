#pragma once

// Univariate recovery from samples f(0), ..., f(L):
//   minimal linear recurrence -> unit-circle roots with multiplicities ->
//   confluent least-squares solve for the coefficient polynomials.

#include <span>
#include <vector>

#include "prony2d/expoly.hpp"

namespace prony2d {

/// Monic recurrence polynomial c_0 + c_1 z + ... + z^d; coeffs.size() == d + 1.
struct Annihilator {
  std::vector<Complex> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct FreqMultEntry {
  double x = 0.0;
  int mult = 1;
};

struct FreqMult {
  std::vector<FreqMultEntry> entries;
  int total() const;
};

struct AnnihilatorOptions {
  /// Relative singular-value threshold for the windowed Hankel system.
  double rank_tol = 1e-9;
  /// Absolute per-sample amplitude treated as zero (noise floor).
  double noise_floor = 0.0;
  /// Orders below this are not considered.
  int min_order = 0;
};

/// Monic polynomial of minimal degree d <= max_order whose coefficients
/// annihilate every length-(d+1) window of samples. Requires
/// samples.size() >= 2 max_order + 1. Throws model-order-exceeded.
Annihilator annihilator(std::span<const Complex> samples, int max_order,
                        const AnnihilatorOptions& opts = {});

inline constexpr double kDefaultClusterTol = 1e-3;
inline constexpr double kMaxRadialDeviation = 0.05;

/// Roots of a grouped into clusters (angular distance in turns <= cluster_tol),
/// each reported as x = arg / 2 pi mod 1 with multiplicity = cluster size.
/// Cluster centres are refined as simple roots of the (mult-1)-th derivative.
/// Throws off-circle-root.
FreqMult unit_roots(const Annihilator& a, double cluster_tol = kDefaultClusterTol);

struct ConfluentSolution {
  ExpPoly1D f;
  double residual = 0.0;  // max |f(n) - samples[n]|
  double condition = 0.0;
};

inline constexpr double kMaxCondition = 1e12;

/// Least-squares fit of f(n) = sum_j p_j(n) exp(2 pi i x_j n) with
/// deg p_j = mult_j - 1. Throws conditioning when the column-equilibrated
/// system has condition number above kMaxCondition.
ConfluentSolution confluent_solve(std::span<const Complex> samples, const FreqMult& fm);

struct Prony1DOptions {
  AnnihilatorOptions annihilator;
  double cluster_tol = kDefaultClusterTol;
  /// Required reproduction accuracy relative to max(|samples|, noise scale).
  double reproduce_tol = 1e-8;
};

/// Recover f with at most N terms, each coefficient of degree < D, from its
/// values on {0, ..., 2ND}. Throws model-bound-violation when the data needs
/// more terms or higher degree, plus any error of the sub-steps.
ExpPoly1D recover_exppoly1d(std::span<const Complex> samples, int N, int D,
                            const Prony1DOptions& opts = {});

}  // namespace prony2d
