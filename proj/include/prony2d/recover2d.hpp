#pragma once

// Bivariate recovery on the prescribed lattice sets: plain polynomials on
// {0..D}^2, frequencies varying in one variable, the layered procedure with
// known multiplicity data and a finite search over multiplicity data.

#include <cstddef>
#include <vector>

#include "prony2d/expoly.hpp"
#include "prony2d/sampling.hpp"

namespace prony2d {

/// x-projection -> number of frequencies above it. Entries sorted by x.
struct MultiplicityMap {
  struct Entry {
    double x = 0.0;
    int t = 1;
  };
  std::vector<Entry> entries;

  int total() const;
  /// Largest t present; 0 when empty.
  int max_layer() const;
};

/// Throws invalid-parameter unless every t >= 1, the total is <= N and
/// |X_t u ... u X_r| <= N / t for every t.
void check_multiplicity_map(const MultiplicityMap& mm, int N);
bool satisfies_partition_bound(const MultiplicityMap& mm, int N);

/// Multiplicity data of f, grouping x-projections within tol.
MultiplicityMap multiplicity_map_of(const ExpPoly2D& f, double tol = 1e-6);

struct RecoveryReport {
  ExpPoly2D result;
  double residual = 0.0;  // max |result - samples| over every provided point
  std::size_t candidates_tried = 0;
  MultiplicityMap multiplicities;
};

struct Recover2DOptions {
  /// Cross-row identification distance on the torus.
  double match_tol = 1e-6;
  /// Per-sample amplitude treated as zero, relative to max |samples|.
  double noise_rel = 1e-9;
  /// Candidate acceptance: residual < residual_rel * max |samples|.
  double residual_rel = 1e-8;
  /// Consistency check of grid interpolation, relative to max |values|.
  double grid_tol = 1e-9;
  /// Search nodes before recover_auto gives up.
  std::size_t max_nodes = 100000;
};

/// Poly2D of degree < D interpolating grid[a][b] = p(a, b) on {0..D-1}^2.
/// Row and column D are a consistency check; failure throws
/// degree-bound-violated.
Poly2D recover_poly_grid(const std::vector<std::vector<Complex>>& grid, int D, double tol = 1e-9);
Poly2D recover_poly_grid(const SampleSet& values, int D, double tol = 1e-9);

/// Samples on [2ND]_0 x [D]_0 of a function whose frequencies all have
/// y = 0. Throws inconsistent-rows.
ExpPoly2D recover_unifreq(const SampleSet& samples, int N, int D, const Recover2DOptions& opts = {});

/// Layered recovery with known multiplicity data. Only the stage rectangles
/// [2 floor(N/t) D]_0 x [2tD]_0 for t <= mm.max_layer() are read; the
/// residual covers every provided point. Throws multiplicity-mismatch.
RecoveryReport recover_layered(const SampleSet& samples, int N, int D, const MultiplicityMap& mm,
                               const Recover2DOptions& opts = {});

/// Every model consistent with the samples whose x-projections are exactly
/// X and whose multiplicity data obeys the bounds, canonical and deduplicated.
std::vector<RecoveryReport> recover_candidates(const SampleSet& samples, int N, int D, const std::vector<double>& X,
                                               const Recover2DOptions& opts = {});

/// x-projections visible on rows eta in [2D]_0 at width 2ND.
std::vector<double> estimate_projections(const SampleSet& samples, int N, int D, const Recover2DOptions& opts = {});

/// Search-and-verify. Throws recovery-inconclusive when nothing fits and
/// ambiguous-data when several models fit.
RecoveryReport recover_auto(const SampleSet& samples, int N, int D, const Recover2DOptions& opts = {});

}  // namespace prony2d
