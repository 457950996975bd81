#include "prony2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "prony2d/error.hpp"

namespace prony2d {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 Polygon::vertex(std::ptrdiff_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((j % n) + n) % n)];
}

double signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

double area(const Polygon& P) { return signed_area(P.vertices()); }

namespace {

std::string point_str(Vec2 p) { return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; }

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Closed segments [a, b] and [c, d] share a point.
bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

bool collinear(Vec2 w0, Vec2 w1) { return std::abs(cross(w0, w1)) <= 1e-12 * norm(w0) * norm(w1); }

}  // namespace

std::vector<std::string> polygon_violations(const std::vector<Vec2>& raw) {
  std::vector<std::string> out;
  const std::size_t n = raw.size();
  if (n < 3) {
    out.push_back("polygon needs at least 3 vertices, got " + std::to_string(n));
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = raw[i];
    if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
      out.push_back("vertex " + std::to_string(i) + " " + point_str(p) + " is outside [0,1)^2");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (raw[i].x == raw[j].x && raw[i].y == raw[j].y)
        out.push_back("vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 prev = raw[(j + n - 1) % n], cur = raw[j], next = raw[(j + 1) % n];
    if (collinear(cur - prev, next - cur))
      out.push_back("collinear triple at vertex " + std::to_string(j) + " " + point_str(cur));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(raw[i], raw[(i + 1) % n], raw[j], raw[(j + 1) % n]))
        out.push_back("edges " + std::to_string(i) + "-" + std::to_string((i + 1) % n) + " and " + std::to_string(j) +
                      "-" + std::to_string((j + 1) % n) + " intersect");
    }
  if (out.empty() && signed_area(raw) == 0.0) out.push_back("polygon has zero area");
  return out;
}

Polygon validate_polygon(std::vector<Vec2> raw) {
  auto violations = polygon_violations(raw);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  if (signed_area(raw) < 0.0) std::reverse(raw.begin(), raw.end());
  Polygon P;
  P.vertices_ = std::move(raw);
  return P;
}

double polygon_distance(const Polygon& a, const Polygon& b) {
  const std::size_t n = a.size();
  if (n != b.size() || n == 0) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int dir : {1, -1})
    for (std::size_t shift = 0; shift < n; ++shift) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) {
        const auto j = static_cast<std::ptrdiff_t>(shift) + dir * static_cast<std::ptrdiff_t>(i);
        worst = std::max(worst, norm(a.vertex(static_cast<std::ptrdiff_t>(i)) - b.vertex(j)));
      }
      best = std::min(best, worst);
    }
  return best;
}

bool same_polygon(const Polygon& a, const Polygon& b, double tol) { return polygon_distance(a, b) <= tol; }

Vec2 canonical_slope(Vec2 d) {
  const double len = norm(d);
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidParameter, "zero direction has no slope");
  Vec2 u = (1.0 / len) * d;
  if (u.x < 0.0 || (u.x == 0.0 && u.y < 0.0)) u = -1.0 * u;
  if (u.x == 0.0) u.y = 1.0;
  if (u.y == 0.0) u.x = 1.0;
  return u;
}

SlopeSet::SlopeSet(const std::vector<Vec2>& directions) {
  for (const auto& d : directions) {
    const Vec2 s = canonical_slope(d);
    if (index_of(s) >= 0) throw Error(ErrorKind::InvalidParameter, "parallel slopes " + point_str(s));
    slopes_.push_back(s);
  }
}

SlopeSet SlopeSet::axis() { return SlopeSet({{1.0, 0.0}, {0.0, 1.0}}); }

int SlopeSet::index_of(Vec2 d, double tol) const {
  const double len = norm(d);
  for (std::size_t r = 0; r < slopes_.size(); ++r)
    if (std::abs(cross(slopes_[r], d)) <= tol * len) return static_cast<int>(r);
  return -1;
}

bool SlopeSet::is_axis() const {
  return slopes_.size() == 2 && index_of({1.0, 0.0}, 0.0) >= 0 && index_of({0.0, 1.0}, 0.0) >= 0;
}

namespace {

EdgeFrame frame_with(const Polygon& P, SlopeSet slopes, bool extend) {
  EdgeFrame f;
  const std::size_t n = P.size();
  std::vector<Vec2> found = slopes.slopes();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 w = P.vertex(static_cast<std::ptrdiff_t>(j) + 1) - P.vertex(static_cast<std::ptrdiff_t>(j));
    const Vec2 u = (1.0 / norm(w)) * w;
    int r = slopes.index_of(u);
    if (r < 0) {
      if (!extend) throw Error(ErrorKind::InvalidParameter, "edge " + std::to_string(j) + " has a slope outside the set");
      found.push_back(canonical_slope(u));
      slopes = SlopeSet(found);
      r = static_cast<int>(found.size()) - 1;
    }
    f.u.push_back(u);
    f.phi.push_back(r);
    f.eps.push_back(dot(u, slopes[static_cast<std::size_t>(r)]) > 0.0 ? 1 : -1);
  }
  f.slopes = std::move(slopes);
  return f;
}

}  // namespace

EdgeFrame edge_frame(const Polygon& P) { return frame_with(P, SlopeSet{}, true); }
EdgeFrame edge_frame(const Polygon& P, const SlopeSet& slopes) { return frame_with(P, slopes, false); }

Complex bb_transform(const Polygon& P, Vec2 t, double singular_tol) {
  const EdgeFrame f = edge_frame(P);
  const std::size_t n = P.size();
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 prev = f.u[(j + n - 1) % n], cur = f.u[j];
    const double dp = dot(prev, t), dc = dot(cur, t);
    if (std::abs(dc) < singular_tol)
      throw Error(ErrorKind::SingularDirection, "u_" + std::to_string(j) + ".t vanishes at t = " + point_str(t));
    const Vec2 v = P.vertex(static_cast<std::ptrdiff_t>(j));
    sum += cross(prev, cur) / (dp * dc) * std::polar(1.0, -2.0 * kPi * dot(v, t));
  }
  return sum / (4.0 * kPi * kPi);
}

std::vector<std::array<int, 3>> triangulate(const Polygon& P) {
  std::vector<int> idx(P.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto& v = P.vertices();
  std::vector<std::array<int, 3>> out;
  auto inside = [&](Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    return cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0;
  };
  while (idx.size() > 3) {
    bool clipped = false;
    const std::size_t m = idx.size();
    for (std::size_t i = 0; i < m && !clipped; ++i) {
      const int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      const Vec2 a = v[ia], b = v[ib], c = v[ic];
      if (cross(b - a, c - b) <= 0.0) continue;
      bool ear = true;
      for (int k : idx)
        if (k != ia && k != ib && k != ic && inside(a, b, c, v[k])) {
          ear = false;
          break;
        }
      if (!ear) continue;
      out.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw Error(ErrorKind::Validation, "ear clipping found no ear");
  }
  out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

namespace {

// (e^z - 1) / z
Complex phi1(Complex z) {
  if (std::abs(z) < 0.5) {
    Complex term{1.0, 0.0}, sum{1.0, 0.0};
    for (int k = 1; k < 20; ++k) {
      term *= z / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

// exp[u, v]
Complex exp_dd2(Complex u, Complex v) { return std::exp(u) * phi1(v - u); }

// exp[z0, z1, z2], the integral of exp over the standard simplex mapped onto the nodes.
Complex exp_dd3(Complex z0, Complex z1, Complex z2) {
  const double d01 = std::abs(z0 - z1), d02 = std::abs(z0 - z2), d12 = std::abs(z1 - z2);
  const double spread = std::max({d01, d02, d12});
  if (spread <= 1.0) {
    // Taylor series about the centroid: sum_k h_k(w) / (k + 2)!, with
    // |h_k| <= (k + 1)(k + 2) / 2 (2/3)^k. Individual h_k may vanish
    // (h_1 = 0 here), so the term count is fixed.
    const Complex c = (z0 + z1 + z2) / 3.0;
    const Complex w0 = z0 - c, w1 = z1 - c, w2 = z2 - c;
    Complex p2{1.0, 0.0}, h12{1.0, 0.0}, h012{1.0, 0.0};
    Complex sum = 0.5 * h012;
    double fact = 2.0;
    for (int k = 1; k < 24; ++k) {
      p2 *= w2;
      h12 = p2 + w1 * h12;
      h012 = h12 + w0 * h012;
      fact *= static_cast<double>(k + 2);
      sum += h012 / fact;
    }
    return std::exp(c) * sum;
  }
  // Divide by the widest node gap.
  if (d01 >= d02 && d01 >= d12) return (exp_dd2(z2, z1) - exp_dd2(z0, z2)) / (z1 - z0);
  if (d02 >= d12) return (exp_dd2(z1, z2) - exp_dd2(z0, z1)) / (z2 - z0);
  return (exp_dd2(z0, z2) - exp_dd2(z1, z0)) / (z2 - z1);
}

}  // namespace

Complex ft_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 t) {
  const double twice_area = std::abs(cross(b - a, c - a));
  const Complex alpha(0.0, -2.0 * kPi * dot(b - a, t));
  const Complex beta(0.0, -2.0 * kPi * dot(c - a, t));
  return twice_area * std::polar(1.0, -2.0 * kPi * dot(a, t)) * exp_dd3(Complex{}, alpha, beta);
}

Complex ft_triangle_oracle(const Polygon& P, Vec2 t) {
  const auto& v = P.vertices();
  Complex sum{0.0, 0.0};
  for (const auto& tri : triangulate(P)) sum += ft_triangle(v[tri[0]], v[tri[1]], v[tri[2]], t);
  return sum;
}

double slope_product(const SlopeSet& slopes, Vec2 t) {
  double prod = 1.0;
  for (const auto& s : slopes.slopes()) {
    const double f = dot(s, t);
    if (std::abs(f) <= 1e-12 * (std::abs(t.x) + std::abs(t.y))) return 0.0;
    prod *= f;
  }
  return prod;
}

SampleSet clear_denominators(const SampleSet& samples, const SlopeSet& slopes) {
  SampleSet out;
  for (const auto& [p, value] : samples) {
    const double prod = slope_product(slopes, {static_cast<double>(p.m), static_cast<double>(p.n)});
    out.set(p, prod == 0.0 ? Complex{} : prod * value);
  }
  return out;
}

Poly2D linear_form_product(const SlopeSet& slopes, std::vector<std::size_t> skip, std::size_t dim) {
  Poly2D acc = Poly2D::constant(1.0, dim);
  for (std::size_t r = 0; r < slopes.size(); ++r) {
    if (std::find(skip.begin(), skip.end(), r) != skip.end()) continue;
    const Vec2 s = slopes[r];
    Poly2D next(dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        const Complex c = acc.coeff(a, b);
        if (c == Complex{}) continue;
        if ((a + 1 >= dim && s.x != 0.0) || (b + 1 >= dim && s.y != 0.0))
          throw Error(ErrorKind::InvalidParameter, "linear form product exceeds the coefficient grid");
        if (s.x != 0.0) next.coeff(a + 1, b) += s.x * c;
        if (s.y != 0.0) next.coeff(a, b + 1) += s.y * c;
      }
    acc = std::move(next);
  }
  return acc;
}

Poly2D vertex_coefficient(const EdgeFrame& frame, std::size_t j) {
  const std::size_t n = frame.u.size();
  const std::size_t jm = (j + n - 1) % n;
  const auto a = static_cast<std::size_t>(frame.phi[jm]);
  const auto b = static_cast<std::size_t>(frame.phi[j]);
  const double scalar = cross(frame.u[jm], frame.u[j]) * frame.eps[jm] * frame.eps[j] / (4.0 * kPi * kPi);
  const std::size_t dim = std::max<std::size_t>(1, frame.slopes.size() - 1);
  return Complex(scalar) * linear_form_product(frame.slopes, {a, b}, dim);
}

Poly2D vertex_coefficient(const Polygon& P, std::size_t j) { return vertex_coefficient(edge_frame(P), j); }

ExpPoly2D assemble_fp(const Polygon& P, const SlopeSet& slopes) {
  const EdgeFrame frame = edge_frame(P, slopes);
  ExpPoly2D f;
  f.degree_bound = static_cast<int>(std::max<std::size_t>(1, slopes.size() - 1));
  for (std::size_t j = 0; j < P.size(); ++j) {
    const Vec2 v = P.vertex(static_cast<std::ptrdiff_t>(j));
    f.terms.push_back({make_freq(-v.x, -v.y), vertex_coefficient(frame, j)});
  }
  return canonicalize(f, 1e-12);
}

ExpPoly2D assemble_fp(const Polygon& P) { return assemble_fp(P, edge_frame(P).slopes); }

Polygon reconnect_by_slopes(const std::vector<IncidentVertex>& vertices, const SlopeSet& slopes, double tol) {
  const std::size_t n = vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t r = 0; r < slopes.size(); ++r) {
    const Vec2 s = slopes[r];
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [a, b] = vertices[i].slopes;
      if (a == b) throw Error(ErrorKind::Reconnection, "vertex " + std::to_string(i) + " has one slope twice");
      if (a == static_cast<int>(r) || b == static_cast<int>(r)) members.push_back(i);
    }
    std::sort(members.begin(), members.end(), [&](std::size_t i, std::size_t j) {
      return cross(s, vertices[i].v) < cross(s, vertices[j].v);
    });
    for (std::size_t lo = 0; lo < members.size();) {
      std::size_t hi = lo + 1;
      while (hi < members.size() &&
             cross(s, vertices[members[hi]].v) - cross(s, vertices[members[hi - 1]].v) <= tol)
        ++hi;
      std::vector<std::size_t> line(members.begin() + static_cast<std::ptrdiff_t>(lo),
                                    members.begin() + static_cast<std::ptrdiff_t>(hi));
      if (line.size() % 2 != 0)
        throw Error(ErrorKind::Parity, std::to_string(line.size()) + " vertices on the line through " +
                                           point_str(vertices[line.front()].v) + " along slope " + point_str(s));
      std::sort(line.begin(), line.end(),
                [&](std::size_t i, std::size_t j) { return dot(s, vertices[i].v) < dot(s, vertices[j].v); });
      for (std::size_t k = 0; k < line.size(); k += 2) {
        adj[line[k]].push_back(line[k + 1]);
        adj[line[k + 1]].push_back(line[k]);
      }
      lo = hi;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (adj[i].size() != 2)
      throw Error(ErrorKind::Reconnection, "vertex " + point_str(vertices[i].v) + " has " +
                                               std::to_string(adj[i].size()) + " edges");
  if (n == 0) throw Error(ErrorKind::Reconnection, "no vertices");

  std::vector<Vec2> cycle;
  std::size_t prev = n, cur = 0;
  do {
    cycle.push_back(vertices[cur].v);
    const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
  } while (cur != 0 && cycle.size() <= n);
  if (cycle.size() != n)
    throw Error(ErrorKind::Reconnection, "edges form several cycles; the first has " + std::to_string(cycle.size()) +
                                             " of " + std::to_string(n) + " vertices");
  try {
    return validate_polygon(std::move(cycle));
  } catch (const ValidationError& e) {
    throw Error(ErrorKind::Reconnection, std::string("reconnected curve is not a valid polygon (") + e.what() + ")");
  }
}

Polygon reconnect_axis_parallel(const std::vector<Vec2>& vertices, double tol) {
  std::vector<IncidentVertex> iv;
  for (const auto& v : vertices) iv.push_back({v, {0, 1}});
  return reconnect_by_slopes(iv, SlopeSet::axis(), tol);
}

}  // namespace prony2d
