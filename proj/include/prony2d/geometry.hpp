#pragma once

// Polygons in [0,1)^2 and the Fourier transform of their indicators.
//
//   1^_P(t) = integral over P of exp(-2 pi i x.t) dx

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prony2d/expoly.hpp"
#include "prony2d/sampling.hpp"

namespace prony2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// Simple, counterclockwise, no collinear consecutive triple, n >= 3,
/// every vertex in [0,1)^2. Only validate_polygon constructs one.
class Polygon {
 public:
  Polygon() = default;

  const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  Vec2 vertex(std::ptrdiff_t j) const;  // index taken mod n

  friend Polygon validate_polygon(std::vector<Vec2> raw);

 private:
  std::vector<Vec2> vertices_;
};

/// Shoelace formula; positive for counterclockwise order.
double signed_area(const std::vector<Vec2>& vertices);
double area(const Polygon& P);

/// Every violated invariant as a human-readable entry naming vertex indices
/// of the input order. Empty when raw is a valid polygon in either orientation.
std::vector<std::string> polygon_violations(const std::vector<Vec2>& raw);

/// Canonical counterclockwise polygon. Throws ValidationError.
Polygon validate_polygon(std::vector<Vec2> raw);

/// True when both polygons have the same vertex cycle up to rotation and
/// orientation, vertex-wise within tol.
bool same_polygon(const Polygon& a, const Polygon& b, double tol);
/// Largest vertex distance after the best cyclic alignment; inf when sizes differ.
double polygon_distance(const Polygon& a, const Polygon& b);

/// Unit vector parallel to d with first nonzero coordinate positive.
Vec2 canonical_slope(Vec2 d);

inline constexpr double kParallelTol = 1e-9;

/// Pairwise non-parallel unit vectors in canonical orientation.
class SlopeSet {
 public:
  SlopeSet() = default;
  /// Canonicalizes every direction. Throws invalid-parameter on zero or
  /// parallel directions.
  explicit SlopeSet(const std::vector<Vec2>& directions);
  static SlopeSet axis();

  const std::vector<Vec2>& slopes() const noexcept { return slopes_; }
  std::size_t size() const noexcept { return slopes_.size(); }
  const Vec2& operator[](std::size_t r) const { return slopes_[r]; }
  /// Index of the slope parallel to d, or -1.
  int index_of(Vec2 d, double tol = kParallelTol) const;
  bool is_axis() const;

 private:
  std::vector<Vec2> slopes_;
};

/// u_j = eps_j s_phi(j) for the edges w_j = v_{j+1} - v_j.
struct EdgeFrame {
  std::vector<Vec2> u;
  SlopeSet slopes;
  std::vector<int> eps;
  std::vector<int> phi;
};

/// Slopes in order of first appearance along the edges.
EdgeFrame edge_frame(const Polygon& P);
/// Frame relative to a given slope set. Throws invalid-parameter when an
/// edge direction is not in the set.
EdgeFrame edge_frame(const Polygon& P, const SlopeSet& slopes);

inline constexpr double kSingularTol = 1e-12;

/// Vertex-sum formula
///   (1 / 4 pi^2) sum_j det(u_{j-1}, u_j) / ((u_{j-1}.t)(u_j.t)) exp(-2 pi i v_j.t).
/// Throws singular-direction when some |u_j.t| < singular_tol.
Complex bb_transform(const Polygon& P, Vec2 t, double singular_tol = kSingularTol);

/// Ear-clipping triangulation; triples of vertex indices, each counterclockwise.
std::vector<std::array<int, 3>> triangulate(const Polygon& P);

/// Fourier transform of the indicator of the triangle (a, b, c), finite for every t.
Complex ft_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 t);

/// Sum of ft_triangle over a triangulation of P; equals area(P) at t = 0.
Complex ft_triangle_oracle(const Polygon& P, Vec2 t);

/// prod_r (s_r.t); exactly 0 when some factor vanishes.
double slope_product(const SlopeSet& slopes, Vec2 t);

/// Multiplies every value by prod_r (s_r.t) at its lattice point.
SampleSet clear_denominators(const SampleSet& samples, const SlopeSet& slopes);

/// Coefficient of exp(-2 pi i v_j.t) in prod_r (s_r.t) 1^_P(t):
///   (1 / 4 pi^2) det(u_{j-1}, u_j) eps_{j-1} eps_j prod_{r != phi(j-1), phi(j)} (s_r.t)
/// as a Poly2D of dimension max(1, k - 1).
Poly2D vertex_coefficient(const EdgeFrame& frame, std::size_t j);
Poly2D vertex_coefficient(const Polygon& P, std::size_t j);

/// Product of the linear forms s_r.t over every r not in skip.
Poly2D linear_form_product(const SlopeSet& slopes, std::vector<std::size_t> skip, std::size_t dim);

/// The entire exponential polynomial f_P with frequencies -v_j mod 1.
ExpPoly2D assemble_fp(const Polygon& P, const SlopeSet& slopes);
ExpPoly2D assemble_fp(const Polygon& P);

/// Vertex v with the pair of slope indices of its two edges.
struct IncidentVertex {
  Vec2 v;
  std::pair<int, int> slopes;
};

inline constexpr double kLineTol = 1e-7;

/// Pairs consecutive vertices along every line of each slope, traces the
/// single cycle and validates it. Throws parity on an odd count along a
/// line and reconnection when the edges do not form one simple cycle.
Polygon reconnect_by_slopes(const std::vector<IncidentVertex>& vertices, const SlopeSet& slopes,
                            double tol = kLineTol);

/// Axis-parallel special case: every vertex has a vertical and a horizontal edge.
Polygon reconnect_axis_parallel(const std::vector<Vec2>& vertices, double tol = kLineTol);

}  // namespace prony2d
