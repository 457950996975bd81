#include "prony2d/sampling.hpp"

#include <algorithm>
#include <string>

#include "prony2d/error.hpp"

namespace prony2d {

namespace {

void require_positive(int value, const char* name) {
  if (value < 1)
    throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be >= 1, got " + std::to_string(value));
}

}  // namespace

LatticeSet1D::LatticeSet1D(std::vector<int> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

LatticeSet2D::LatticeSet2D(std::vector<LatticePoint> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool LatticeSet2D::contains(LatticePoint p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool LatticeSet2D::is_subset_of(const LatticeSet2D& other) const {
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

LatticeSet2D set_union(const LatticeSet2D& a, const LatticeSet2D& b) {
  LatticeSet2D out;
  out.points_.reserve(a.size() + b.size());
  std::set_union(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(),
                 std::back_inserter(out.points_));
  return out;
}

LatticeSet2D rectangle(int width, int height) {
  if (width < 0 || height < 0) throw Error(ErrorKind::InvalidParameter, "negative rectangle extent");
  std::vector<LatticePoint> pts;
  pts.reserve(static_cast<std::size_t>(width + 1) * static_cast<std::size_t>(height + 1));
  for (int m = 0; m <= width; ++m)
    for (int n = 0; n <= height; ++n) pts.push_back({m, n});
  return LatticeSet2D(std::move(pts));
}

LatticeSet1D univariate_grid(int N, int D) {
  require_positive(N, "N");
  require_positive(D, "D");
  std::vector<int> pts(static_cast<std::size_t>(2 * N * D + 1));
  for (int i = 0; i <= 2 * N * D; ++i) pts[i] = i;
  return LatticeSet1D(std::move(pts));
}

LatticeSet2D coefficient_grid(int D) {
  require_positive(D, "D");
  return rectangle(D, D);
}

LatticeSet2D unifreq_grid(int N, int D) {
  require_positive(N, "N");
  require_positive(D, "D");
  return rectangle(2 * N * D, D);
}

namespace {

// Union of [2 floor(W/r) D]_0 x [2 r D]_0 for r = 1..R. Each column m is
// covered by a prefix 0..h(m) of rows, so the union is built column-wise.
LatticeSet2D staircase(int R, int W, int D) {
  std::vector<int> height;
  for (int r = 1; r <= R; ++r) {
    const int width = 2 * (W / r) * D;
    if (static_cast<int>(height.size()) < width + 1) height.resize(width + 1, -1);
    for (int m = 0; m <= width; ++m) height[m] = std::max(height[m], 2 * r * D);
  }
  std::vector<LatticePoint> pts;
  for (int m = 0; m < static_cast<int>(height.size()); ++m)
    for (int n = 0; n <= height[m]; ++n) pts.push_back({m, n});
  return LatticeSet2D(std::move(pts));
}

}  // namespace

LatticeSet2D layered_grid(int N, int D) {
  require_positive(N, "N");
  require_positive(D, "D");
  return staircase(N, N, D);
}

LatticeSet2D polygon_grid(int k, int N) {
  if (k < 2) throw Error(ErrorKind::InvalidParameter, "k must be >= 2, got " + std::to_string(k));
  require_positive(N, "N");
  return staircase(N, 2 * N, k - 1);
}

void write_csv(const LatticeSet2D& set, std::ostream& out) {
  for (const auto& p : set) out << p.m << ',' << p.n << '\n';
}

Complex SampleSet::at(LatticePoint p) const {
  const auto it = values_.find(p);
  if (it == values_.end())
    throw Error(ErrorKind::MissingSamplePoints,
                "no sample at (" + std::to_string(p.m) + "," + std::to_string(p.n) + ")");
  return it->second;
}

double SampleSet::max_abs() const {
  double m = 0.0;
  for (const auto& [p, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

void SampleSet::require(const LatticeSet2D& set) const {
  for (const auto& p : set)
    if (!contains(p))
      throw Error(ErrorKind::MissingSamplePoints,
                  "sample set lacks (" + std::to_string(p.m) + "," + std::to_string(p.n) + ")");
}

LatticeSet2D SampleSet::support() const {
  std::vector<LatticePoint> pts;
  pts.reserve(values_.size());
  for (const auto& [p, v] : values_) pts.push_back(p);
  return LatticeSet2D(std::move(pts));
}

SampleSet sample_exppoly(const ExpPoly2D& f, const LatticeSet2D& set) {
  SampleSet out;
  for (const auto& p : set) out.set(p, eval2d(f, p.m, p.n));
  return out;
}

double max_residual(const ExpPoly2D& f, const SampleSet& samples) {
  double r = 0.0;
  for (const auto& [p, v] : samples) r = std::max(r, std::abs(eval2d(f, p.m, p.n) - v));
  return r;
}

}  // namespace prony2d
