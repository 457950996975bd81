#pragma once

// Polygon identification from Fourier samples and the uniqueness harnesses.

#include <cstdint>
#include <string>
#include <vector>

#include "prony2d/expoly.hpp"
#include "prony2d/geometry.hpp"
#include "prony2d/recover2d.hpp"
#include "prony2d/sampling.hpp"

namespace prony2d {

/// Values of 1^_P from ft_triangle_oracle at every point of A.
SampleSet sample_polygon(const Polygon& P, const LatticeSet2D& A);

struct WeightedPolygon {
  Complex weight;
  Polygon polygon;
};

/// sum_j f_j 1_{P_j}; the parts may overlap.
struct SimpleFunction {
  std::vector<WeightedPolygon> parts;
  int N = 0;  // bound on the total vertex count
  int k = 0;  // bound on the number of distinct slopes
};

/// Distinct slopes over every part.
SlopeSet slopes_of(const SimpleFunction& F);
int total_vertices(const SimpleFunction& F);
/// Throws invalid-parameter unless the parts obey the bounds (k, N).
void check_simple_function(const SimpleFunction& F, int k, int N);
/// F1 - F2 with bounds (k1 + k2, N1 + N2).
SimpleFunction subtract(const SimpleFunction& F1, const SimpleFunction& F2);

SampleSet sample_simple_function(const SimpleFunction& F, const LatticeSet2D& A);

struct IdentifyOptions {
  Recover2DOptions recovery;
  /// Probe points per slope pair are 3 k^2.
  double pair_rel_tol = 1e-7;
  /// Re-sampling check: max |1^_P - samples| <= verify_rel (1 + max |samples|).
  double verify_rel = 1e-8;
  std::uint64_t probe_seed = 0x5eed;
};

struct PolygonIdentification {
  Polygon polygon;
  RecoveryReport report;
  double verification_residual = 0.0;
};

/// Samples of 1^_P on polygon_grid(k, N) with k = slopes.size() -> P.
/// Throws recovery-inconclusive, ambiguous-data, coefficient-structure,
/// parity, reconnection or verification.
PolygonIdentification identify_polygon_report(const SampleSet& samples, const SlopeSet& slopes, int N,
                                              const IdentifyOptions& opts = {});
Polygon identify_polygon(const SampleSet& samples, const SlopeSet& slopes, int N, const IdentifyOptions& opts = {});

/// The exponential polynomial prod_r (s_r.t) f^(t) recovered from samples of
/// f^ on polygon_grid(k, N).
ExpPoly2D recover_simple_function_exppoly(const SampleSet& samples, const SlopeSet& slopes, int N,
                                          const IdentifyOptions& opts = {});

enum class UniquenessMode { KnownSlopes, UnknownSlopes };
enum class Verdict { DistinctConfirmed, IndistinguishableOnSet };

std::string verdict_name(Verdict v);
std::string mode_name(UniquenessMode m);

struct UniquenessReport {
  std::string set_name;  // e.g. "polygon:2,4"
  std::size_t set_size = 0;
  double max_difference = 0.0;
  LatticePoint argmax;
  double tolerance = 0.0;
  Verdict verdict = Verdict::IndistinguishableOnSet;
};

/// Samples both polygons on A(k, N) (known slopes) or A(2k, 2N) (unknown
/// slopes). Throws invalid-parameter when a polygon exceeds the bounds.
UniquenessReport verify_uniqueness(const Polygon& P1, const Polygon& P2, int k, int N, UniquenessMode mode);

struct FamilyCheck {
  bool passed = true;
  std::string diagnostic;
  explicit operator bool() const { return passed; }
};

/// Checks that every f_lambda = lambda f1 + (1 - lambda) f2 agrees with f1 on
/// A, that its x-projections lie in those of f1 and f2, and that distinct
/// lambdas give distinct polynomials when f1 != f2.
FamilyCheck f_lambda_family_check(const ExpPoly2D& f1, const ExpPoly2D& f2, const LatticeSet2D& A,
                                  const std::vector<Complex>& lambdas);

}  // namespace prony2d
