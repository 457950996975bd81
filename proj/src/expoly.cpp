#include "prony2d/expoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace prony2d {

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double torus_distance(double a, double b) {
  const double d = wrap01(a - b);
  return std::min(d, 1.0 - d);
}

Complex unit_phase(double x, double n) {
  const double turns = wrap01(std::fmod(x, 1.0) * n);
  // Exact values at quarter turns keep trivial cases exact.
  const double quarter = turns * 4.0;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<int>(quarter)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  return std::polar(1.0, 2.0 * kPi * turns);
}

Complex Poly1D::operator()(Complex xi) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * xi + *it;
  return acc;
}

int Poly1D::degree() const {
  for (int a = static_cast<int>(coeffs.size()) - 1; a >= 0; --a)
    if (coeffs[a] != Complex{}) return a;
  return -1;
}

double Poly1D::sup_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

Poly2D::Poly2D(std::size_t dim) : dim_(dim), coeffs_(dim * dim) {}

Poly2D Poly2D::constant(Complex value, std::size_t dim) {
  Poly2D p(std::max<std::size_t>(dim, 1));
  p.coeff(0, 0) = value;
  return p;
}

Complex Poly2D::operator()(Complex xi, Complex eta) const {
  Complex acc{0.0, 0.0};
  for (std::size_t a = dim_; a-- > 0;) {
    Complex row{0.0, 0.0};
    for (std::size_t b = dim_; b-- > 0;) row = row * eta + coeff(a, b);
    acc = acc * xi + row;
  }
  return acc;
}

double Poly2D::sup_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Poly2D Poly2D::resized(std::size_t dim) const {
  Poly2D out(dim);
  const std::size_t keep = std::min(dim, dim_);
  for (std::size_t a = 0; a < keep; ++a)
    for (std::size_t b = 0; b < keep; ++b) out.coeff(a, b) = coeff(a, b);
  return out;
}

Poly2D& Poly2D::operator+=(const Poly2D& other) {
  if (other.dim_ > dim_) *this = resized(other.dim_);
  for (std::size_t a = 0; a < other.dim_; ++a)
    for (std::size_t b = 0; b < other.dim_; ++b) coeff(a, b) += other.coeff(a, b);
  return *this;
}

Poly2D& Poly2D::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Poly2D operator+(Poly2D lhs, const Poly2D& rhs) { return lhs += rhs; }
Poly2D operator*(Complex s, Poly2D p) { return p *= s; }

TorusFreq make_freq(double x, double y) { return {wrap01(x), wrap01(y)}; }

Complex eval1d(const ExpPoly1D& f, double xi) {
  Complex acc{0.0, 0.0};
  for (const auto& term : f.terms) acc += term.p(xi) * unit_phase(term.x, xi);
  return acc;
}

Complex eval2d(const ExpPoly2D& f, double xi, double eta) {
  Complex acc{0.0, 0.0};
  for (const auto& term : f.terms)
    acc += term.p(xi, eta) * unit_phase(term.freq.x, xi) * unit_phase(term.freq.y, eta);
  return acc;
}

namespace {

double snap(double v, double tol) {
  v = wrap01(v);
  if (v < tol || 1.0 - v < tol) return 0.0;
  return v;
}

bool freq_less(const TorusFreq& a, const TorusFreq& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

ExpPoly2D canonicalize(const ExpPoly2D& f, double tol) {
  std::vector<Term2D> terms = f.terms;
  for (auto& t : terms) t.freq = {snap(t.freq.x, tol), snap(t.freq.y, tol)};
  std::sort(terms.begin(), terms.end(),
            [](const Term2D& a, const Term2D& b) { return freq_less(a.freq, b.freq); });

  // Transitive clusters of frequencies within tol in both coordinates; the
  // lexicographically smallest member is the representative.
  std::vector<std::size_t> parent(terms.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (torus_distance(terms[i].freq.x, terms[j].freq.x) <= tol &&
          torus_distance(terms[i].freq.y, terms[j].freq.y) <= tol) {
        const auto ri = find_root(parent, i);
        const auto rj = find_root(parent, j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }

  ExpPoly2D out;
  out.degree_bound = f.degree_bound;
  std::vector<std::ptrdiff_t> slot(terms.size(), -1);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.terms.size());
      out.terms.push_back({terms[r].freq, Poly2D(static_cast<std::size_t>(std::max(f.degree_bound, 1)))});
    }
    out.terms[slot[r]].p += terms[i].p;
  }
  std::erase_if(out.terms, [tol](const Term2D& t) { return t.p.sup_norm() < tol; });
  std::sort(out.terms.begin(), out.terms.end(),
            [](const Term2D& a, const Term2D& b) { return freq_less(a.freq, b.freq); });
  return out;
}

ExpPoly2D linear_combine(Complex lambda, const ExpPoly2D& f1, const ExpPoly2D& f2, double tol) {
  ExpPoly2D sum;
  sum.degree_bound = std::max(f1.degree_bound, f2.degree_bound);
  for (const auto& t : f1.terms) sum.terms.push_back({t.freq, lambda * t.p});
  for (const auto& t : f2.terms) sum.terms.push_back({t.freq, (1.0 - lambda) * t.p});
  return canonicalize(sum, tol);
}

namespace {

// Pairs each term of a with the nearest unused term of b (torus max-metric).
template <class TermT, class Dist>
std::vector<std::size_t> match_terms(const std::vector<TermT>& a, const std::vector<TermT>& b,
                                     Dist dist) {
  std::vector<std::size_t> partner(a.size());
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = dist(a[i], b[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[arg] = true;
    partner[i] = arg;
  }
  return partner;
}

}  // namespace

Deviation deviation(const ExpPoly2D& a, const ExpPoly2D& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.terms.size() != b.terms.size()) return {inf, inf};
  const auto partner = match_terms(a.terms, b.terms, [](const Term2D& l, const Term2D& r) {
    return std::max(torus_distance(l.freq.x, r.freq.x), torus_distance(l.freq.y, r.freq.y));
  });
  Deviation d;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& ta = a.terms[i];
    const auto& tb = b.terms[partner[i]];
    d.freq = std::max({d.freq, torus_distance(ta.freq.x, tb.freq.x),
                       torus_distance(ta.freq.y, tb.freq.y)});
    const std::size_t dim = std::max(ta.p.dim(), tb.p.dim());
    const Poly2D pa = ta.p.resized(dim);
    const Poly2D pb = tb.p.resized(dim);
    for (std::size_t u = 0; u < dim; ++u)
      for (std::size_t v = 0; v < dim; ++v)
        d.coeff = std::max(d.coeff, std::abs(pa.coeff(u, v) - pb.coeff(u, v)));
  }
  return d;
}

Deviation deviation(const ExpPoly1D& a, const ExpPoly1D& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.terms.size() != b.terms.size()) return {inf, inf};
  const auto partner = match_terms(a.terms, b.terms, [](const Term1D& l, const Term1D& r) {
    return torus_distance(l.x, r.x);
  });
  Deviation d;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& ta = a.terms[i];
    const auto& tb = b.terms[partner[i]];
    d.freq = std::max(d.freq, torus_distance(ta.x, tb.x));
    const std::size_t len = std::max(ta.p.coeffs.size(), tb.p.coeffs.size());
    for (std::size_t k = 0; k < len; ++k) {
      const Complex ca = k < ta.p.coeffs.size() ? ta.p.coeffs[k] : Complex{};
      const Complex cb = k < tb.p.coeffs.size() ? tb.p.coeffs[k] : Complex{};
      d.coeff = std::max(d.coeff, std::abs(ca - cb));
    }
  }
  return d;
}

bool approx_equal(const ExpPoly2D& a, const ExpPoly2D& b, double freq_tol, double coeff_tol) {
  const Deviation d = deviation(a, b);
  return d.freq <= freq_tol && d.coeff <= coeff_tol;
}

}  // namespace prony2d
