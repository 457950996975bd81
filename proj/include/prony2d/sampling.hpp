#pragma once

// Predetermined lattice sampling sets and the container for values sampled
// on them. Point (m, n) pairs the first variable xi = m with eta = n.

#include <compare>
#include <map>
#include <ostream>
#include <vector>

#include "prony2d/expoly.hpp"

namespace prony2d {

struct LatticePoint {
  int m = 0;
  int n = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

/// Strictly increasing nonnegative integers.
class LatticeSet1D {
 public:
  LatticeSet1D() = default;
  explicit LatticeSet1D(std::vector<int> points);

  const std::vector<int>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<int> points_;
};

/// Deduplicated, lexicographically sorted set of nonnegative lattice points.
class LatticeSet2D {
 public:
  LatticeSet2D() = default;
  explicit LatticeSet2D(std::vector<LatticePoint> points);

  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(LatticePoint p) const;
  bool is_subset_of(const LatticeSet2D& other) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend LatticeSet2D set_union(const LatticeSet2D& a, const LatticeSet2D& b);

 private:
  std::vector<LatticePoint> points_;
};

/// [width]_0 x [height]_0.
LatticeSet2D rectangle(int width, int height);

/// {0, ..., 2ND}.
LatticeSet1D univariate_grid(int N, int D);
/// {0, ..., D}^2.
LatticeSet2D coefficient_grid(int D);
/// [2ND]_0 x [D]_0.
LatticeSet2D unifreq_grid(int N, int D);
/// Union over 1 <= r <= N of [2 floor(N/r) D]_0 x [2rD]_0.
LatticeSet2D layered_grid(int N, int D);
/// Union over 1 <= r <= N of [2 floor(2N/r)(k-1)]_0 x [2r(k-1)]_0.
LatticeSet2D polygon_grid(int k, int N);

/// One "m,n" row per point in lexicographic order.
void write_csv(const LatticeSet2D& set, std::ostream& out);

/// Values of a function (or of a Fourier transform) at lattice points.
class SampleSet {
 public:
  void set(LatticePoint p, Complex value) { values_[p] = value; }
  bool contains(LatticePoint p) const { return values_.count(p) != 0; }
  /// Throws missing-sample-points when p is absent.
  Complex at(LatticePoint p) const;
  Complex at(int m, int n) const { return at(LatticePoint{m, n}); }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double max_abs() const;

  /// Throws missing-sample-points naming the first absent point of set.
  void require(const LatticeSet2D& set) const;
  LatticeSet2D support() const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::map<LatticePoint, Complex> values_;
};

/// f evaluated at every point of set.
SampleSet sample_exppoly(const ExpPoly2D& f, const LatticeSet2D& set);

/// max |f(p) - samples(p)| over the sample support.
double max_residual(const ExpPoly2D& f, const SampleSet& samples);

}  // namespace prony2d
