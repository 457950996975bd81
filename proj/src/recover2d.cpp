#include "prony2d/recover2d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "prony2d/error.hpp"
#include "prony2d/prony1d.hpp"

namespace prony2d {

int MultiplicityMap::total() const {
  int s = 0;
  for (const auto& e : entries) s += e.t;
  return s;
}

int MultiplicityMap::max_layer() const {
  int m = 0;
  for (const auto& e : entries) m = std::max(m, e.t);
  return m;
}

bool satisfies_partition_bound(const MultiplicityMap& mm, int N) {
  for (int t = 1; t <= mm.max_layer(); ++t) {
    const auto upper = std::count_if(mm.entries.begin(), mm.entries.end(), [t](const auto& e) { return e.t >= t; });
    if (upper * t > N) return false;
  }
  return true;
}

void check_multiplicity_map(const MultiplicityMap& mm, int N) {
  for (const auto& e : mm.entries)
    if (e.t < 1) throw Error(ErrorKind::InvalidParameter, "multiplicity must be >= 1");
  if (mm.total() > N)
    throw Error(ErrorKind::InvalidParameter,
                "multiplicities sum to " + std::to_string(mm.total()) + " > N = " + std::to_string(N));
  if (!satisfies_partition_bound(mm, N))
    throw Error(ErrorKind::InvalidParameter, "multiplicity map violates |X_t u ... u X_r| <= N/t");
}

MultiplicityMap multiplicity_map_of(const ExpPoly2D& f, double tol) {
  MultiplicityMap mm;
  for (const auto& term : f.terms) {
    auto it = std::find_if(mm.entries.begin(), mm.entries.end(),
                           [&](const auto& e) { return torus_distance(e.x, term.freq.x) <= tol; });
    if (it == mm.entries.end())
      mm.entries.push_back({term.freq.x, 1});
    else
      ++it->t;
  }
  std::sort(mm.entries.begin(), mm.entries.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return mm;
}

Poly2D recover_poly_grid(const std::vector<std::vector<Complex>>& grid, int D, double tol) {
  if (D < 1) throw Error(ErrorKind::InvalidParameter, "D must be >= 1");
  if (static_cast<int>(grid.size()) != D + 1)
    throw Error(ErrorKind::InvalidParameter, "grid must have D + 1 rows");
  for (const auto& row : grid)
    if (static_cast<int>(row.size()) != D + 1) throw Error(ErrorKind::InvalidParameter, "grid must be square");

  Eigen::MatrixXcd V(D, D), G(D, D);
  for (int i = 0; i < D; ++i)
    for (int a = 0; a < D; ++a) {
      V(i, a) = std::pow(static_cast<double>(i), a);
      G(i, a) = grid[i][a];
    }
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
  // G = V C V^T
  const Eigen::MatrixXcd C = lu.solve(lu.solve(G).transpose()).transpose();
  Poly2D p(static_cast<std::size_t>(D));
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) p.coeff(a, b) = C(a, b);

  double scale = 0.0;
  for (const auto& row : grid)
    for (const auto& v : row) scale = std::max(scale, std::abs(v));
  for (int a = 0; a <= D; ++a)
    for (int b = 0; b <= D; ++b) {
      const double err = std::abs(p(static_cast<double>(a), static_cast<double>(b)) - grid[a][b]);
      if (err > tol * scale)
        throw Error(ErrorKind::DegreeBoundViolated, "grid value at (" + std::to_string(a) + "," + std::to_string(b) +
                                                        ") is not reproduced by a degree < " + std::to_string(D) +
                                                        " polynomial");
    }
  return p;
}

Poly2D recover_poly_grid(const SampleSet& values, int D, double tol) {
  if (D < 1) throw Error(ErrorKind::InvalidParameter, "D must be >= 1");
  std::vector<std::vector<Complex>> grid(D + 1, std::vector<Complex>(D + 1));
  for (int a = 0; a <= D; ++a)
    for (int b = 0; b <= D; ++b) grid[a][b] = values.at(a, b);
  return recover_poly_grid(grid, D, tol);
}

namespace {

double signed_offset(double x, double ref) {
  const double d = wrap01(x - ref);
  return d > 0.5 ? d - 1.0 : d;
}

// Weighted mean on the torus of values close to ref.
struct TorusMean {
  double ref = 0.0;
  double sum = 0.0;
  double weight = 0.0;

  void add(double x, double w) {
    sum += w * signed_offset(x, ref);
    weight += w;
  }
  double value() const { return wrap01(ref + (weight > 0.0 ? sum / weight : 0.0)); }
};

int find_match(const std::vector<TorusMean>& clusters, double x, double tol) {
  int best = -1;
  double best_d = tol;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const double d = torus_distance(clusters[i].ref, x);
    if (d <= best_d) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return best;
}

const Term1D* find_term(const ExpPoly1D& f, double x, double tol) {
  const Term1D* best = nullptr;
  double best_d = tol;
  for (const auto& t : f.terms) {
    const double d = torus_distance(t.x, x);
    if (d <= best_d) {
      best = &t;
      best_d = d;
    }
  }
  return best;
}

Prony1DOptions row_options(double floor) {
  Prony1DOptions p;
  p.annihilator.noise_floor = floor;
  return p;
}

double poly_weight(const Poly1D& p) { return std::max(p.sup_norm(), 1e-300); }

class Recoverer {
 public:
  Recoverer(const SampleSet& samples, int N, int D, const Recover2DOptions& opts)
      : samples_(samples), N_(N), D_(D), opts_(opts), floor_(opts.noise_rel * samples.max_abs()) {
    if (N < 1 || D < 1) throw Error(ErrorKind::InvalidParameter, "N and D must be >= 1");
  }

  // Row recoveries of samples - partial at stage t: rows eta in [2tD]_0,
  // width 2 floor(N/t) D, at most floor(N/t) terms.
  std::vector<ExpPoly1D> stage_rows(const ExpPoly2D& partial, int t) const {
    const int bound = N_ / t;
    const int width = 2 * bound * D_;
    std::vector<ExpPoly1D> rows;
    std::vector<Complex> seq(static_cast<std::size_t>(width + 1));
    for (int eta = 0; eta <= 2 * t * D_; ++eta) {
      for (int m = 0; m <= width; ++m) seq[m] = samples_.at(m, eta) - eval2d(partial, m, eta);
      rows.push_back(recover_exppoly1d(seq, bound, D_, row_options(floor_)));
    }
    return rows;
  }

  void check_revealed(const std::vector<ExpPoly1D>& rows, const std::vector<double>& remaining) const {
    for (std::size_t eta = 0; eta < rows.size(); ++eta)
      for (const auto& term : rows[eta].terms) {
        const bool known = std::any_of(remaining.begin(), remaining.end(),
                                       [&](double x) { return torus_distance(x, term.x) <= opts_.match_tol; });
        if (!known)
          throw Error(ErrorKind::MultiplicityMismatch, "row " + std::to_string(eta) + " reveals x = " +
                                                           std::to_string(term.x) + " outside the multiplicity map");
      }
  }

  // The t frequencies above x, from eta -> q_{x,eta}(xi0) for xi0 in [D]_0.
  std::vector<Term2D> fit_column(const std::vector<ExpPoly1D>& rows, double x, int t) const {
    TorusMean xm{x};
    for (const auto& row : rows)
      if (const Term1D* q = find_term(row, x, opts_.match_tol)) xm.add(q->x, poly_weight(q->p));

    std::vector<TorusMean> ys;
    std::vector<std::vector<std::optional<Poly1D>>> per_xi;
    std::vector<Complex> seq(static_cast<std::size_t>(2 * t * D_ + 1));
    for (int xi0 = 0; xi0 <= D_; ++xi0) {
      for (std::size_t eta = 0; eta < seq.size(); ++eta) {
        const Term1D* q = find_term(rows[eta], x, opts_.match_tol);
        seq[eta] = q ? q->p(static_cast<double>(xi0)) : Complex{};
      }
      ExpPoly1D g;
      try {
        g = recover_exppoly1d(seq, t, D_, row_options(floor_));
      } catch (const Error& e) {
        throw Error(ErrorKind::MultiplicityMismatch,
                    "frequencies above x = " + std::to_string(x) + " do not fit " + std::to_string(t) + " terms (" +
                        e.what() + ")");
      }
      for (const auto& term : g.terms) {
        int idx = find_match(ys, term.x, opts_.match_tol);
        if (idx < 0) {
          ys.push_back({term.x});
          per_xi.emplace_back(D_ + 1);
          idx = static_cast<int>(ys.size()) - 1;
        }
        ys[idx].add(term.x, poly_weight(term.p));
        per_xi[idx][xi0] = term.p;
      }
    }
    if (static_cast<int>(ys.size()) != t)
      throw Error(ErrorKind::MultiplicityMismatch, "found " + std::to_string(ys.size()) + " frequencies above x = " +
                                                       std::to_string(x) + ", expected " + std::to_string(t));

    std::vector<Term2D> out;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      std::vector<std::vector<Complex>> grid(D_ + 1, std::vector<Complex>(D_ + 1));
      for (int a = 0; a <= D_; ++a)
        if (per_xi[i][a])
          for (int b = 0; b <= D_; ++b) grid[a][b] = (*per_xi[i][a])(static_cast<double>(b));
      out.push_back({make_freq(xm.value(), ys[i].value()), recover_poly_grid(grid, D_, opts_.grid_tol)});
    }
    return out;
  }

  RecoveryReport finish(ExpPoly2D partial) const {
    RecoveryReport r;
    partial.degree_bound = D_;
    r.result = canonicalize(partial);
    r.residual = max_residual(r.result, samples_);
    r.multiplicities = multiplicity_map_of(r.result, opts_.match_tol);
    return r;
  }

  double acceptance() const { return opts_.residual_rel * samples_.max_abs(); }

  const SampleSet& samples_;
  const int N_;
  const int D_;
  const Recover2DOptions& opts_;
  const double floor_;
};

double coefficient_scale(const ExpPoly2D& f) {
  double s = 0.0;
  for (const auto& t : f.terms) s = std::max(s, t.p.sup_norm());
  return s;
}

// Stage-wise search over multiplicity data. A branch chooses X_t among the
// remaining projections whose columns fit exactly t frequencies, which is
// the set of maps for which recover_layered does not fail at stage t.
class CandidateSearch {
 public:
  CandidateSearch(const Recoverer& rec, std::size_t max_nodes) : rec_(rec), max_nodes_(max_nodes) {}

  void run(std::vector<double> X) {
    ExpPoly2D partial;
    partial.degree_bound = rec_.D_;
    stage(1, partial, std::move(X), 0);
  }

  std::vector<RecoveryReport> found;
  std::size_t leaves = 0;
  std::size_t nodes = 0;
  bool exhausted = false;

 private:
  void stage(int t, const ExpPoly2D& partial, const std::vector<double>& remaining, int used) {
    if (exhausted) return;
    if (remaining.empty()) {
      leaf(partial);
      return;
    }
    const int budget = rec_.N_ - used;
    const int r = static_cast<int>(remaining.size());
    if (t > rec_.N_ || r * t > budget) return;
    if (++nodes > max_nodes_) {
      exhausted = true;
      return;
    }

    std::vector<ExpPoly1D> rows;
    try {
      rows = rec_.stage_rows(partial, t);
      rec_.check_revealed(rows, remaining);
    } catch (const Error&) {
      // Includes stages whose rectangle lies outside the provided samples.
      return;
    }
    std::vector<std::pair<std::size_t, std::vector<Term2D>>> fits;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      try {
        fits.emplace_back(i, rec_.fit_column(rows, remaining[i], t));
      } catch (const Error&) {
      }
    }

    const std::size_t c = fits.size();
    for (std::size_t mask = (std::size_t{1} << c); mask-- > 0;) {
      const int s = std::popcount(mask);
      if (t * s > budget || (r - s) * (t + 1) > budget - t * s) continue;
      ExpPoly2D next = partial;
      std::vector<bool> chosen(remaining.size(), false);
      for (std::size_t j = 0; j < c; ++j)
        if (mask >> j & 1) {
          chosen[fits[j].first] = true;
          next.terms.insert(next.terms.end(), fits[j].second.begin(), fits[j].second.end());
        }
      std::vector<double> rest;
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (!chosen[i]) rest.push_back(remaining[i]);
      stage(t + 1, next, rest, used + t * s);
      if (exhausted) return;
    }
  }

  void leaf(const ExpPoly2D& partial) {
    ++leaves;
    RecoveryReport r = rec_.finish(partial);
    if (!(r.residual <= rec_.acceptance())) return;
    const double tol = 1e-6 * (1.0 + coefficient_scale(r.result));
    for (const auto& other : found)
      if (approx_equal(other.result, r.result, 1e-6, tol)) return;
    found.push_back(std::move(r));
  }

  const Recoverer& rec_;
  const std::size_t max_nodes_;
};

std::vector<double> dedupe_projections(const std::vector<double>& X, double tol) {
  std::vector<double> out;
  for (double x : X) {
    const double w = wrap01(x);
    if (std::none_of(out.begin(), out.end(), [&](double y) { return torus_distance(w, y) <= tol; })) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ExpPoly2D recover_unifreq(const SampleSet& samples, int N, int D, const Recover2DOptions& opts) {
  const Recoverer rec(samples, N, D, opts);
  std::vector<ExpPoly1D> rows;
  std::vector<Complex> seq(static_cast<std::size_t>(2 * N * D + 1));
  for (int eta = 0; eta <= D; ++eta) {
    for (int m = 0; m <= 2 * N * D; ++m) seq[m] = samples.at(m, eta);
    rows.push_back(recover_exppoly1d(seq, N, D, row_options(rec.floor_)));
  }
  std::vector<TorusMean> xs;
  for (const auto& row : rows)
    for (const auto& term : row.terms) {
      int idx = find_match(xs, term.x, opts.match_tol);
      if (idx < 0) {
        xs.push_back({term.x});
        idx = static_cast<int>(xs.size()) - 1;
      }
      xs[idx].add(term.x, poly_weight(term.p));
    }
  if (static_cast<int>(xs.size()) > N)
    throw Error(ErrorKind::InconsistentRows,
                "rows reveal " + std::to_string(xs.size()) + " frequencies, more than N = " + std::to_string(N));

  ExpPoly2D f;
  f.degree_bound = D;
  for (const auto& xm : xs) {
    std::vector<std::vector<Complex>> grid(D + 1, std::vector<Complex>(D + 1));
    for (int eta = 0; eta <= D; ++eta)
      if (const Term1D* q = find_term(rows[eta], xm.ref, opts.match_tol))
        for (int a = 0; a <= D; ++a) grid[a][eta] = q->p(static_cast<double>(a));
    try {
      f.terms.push_back({make_freq(xm.value(), 0.0), recover_poly_grid(grid, D, opts.grid_tol)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegreeBoundViolated) throw;
      throw Error(ErrorKind::InconsistentRows, "row polynomials at x = " + std::to_string(xm.value()) +
                                                   " are not of degree < " + std::to_string(D) + " in eta");
    }
  }
  return canonicalize(f);
}

RecoveryReport recover_layered(const SampleSet& samples, int N, int D, const MultiplicityMap& mm,
                               const Recover2DOptions& opts) {
  check_multiplicity_map(mm, N);
  const Recoverer rec(samples, N, D, opts);
  ExpPoly2D partial;
  partial.degree_bound = D;
  for (int t = 1; t <= mm.max_layer(); ++t) {
    std::vector<double> remaining, layer;
    for (const auto& e : mm.entries) {
      if (e.t >= t) remaining.push_back(e.x);
      if (e.t == t) layer.push_back(e.x);
    }
    if (layer.empty()) continue;
    const auto rows = rec.stage_rows(partial, t);
    rec.check_revealed(rows, remaining);
    std::vector<Term2D> stage_terms;
    for (double x : layer) {
      auto terms = rec.fit_column(rows, x, t);
      stage_terms.insert(stage_terms.end(), terms.begin(), terms.end());
    }
    partial.terms.insert(partial.terms.end(), stage_terms.begin(), stage_terms.end());
  }
  RecoveryReport r = rec.finish(partial);
  r.candidates_tried = 1;
  r.multiplicities = mm;
  return r;
}

std::vector<RecoveryReport> recover_candidates(const SampleSet& samples, int N, int D, const std::vector<double>& X,
                                               const Recover2DOptions& opts) {
  const auto xs = dedupe_projections(X, opts.match_tol);
  if (static_cast<int>(xs.size()) > N)
    throw Error(ErrorKind::InvalidParameter,
                std::to_string(xs.size()) + " projections exceed N = " + std::to_string(N));
  const Recoverer rec(samples, N, D, opts);
  CandidateSearch search(rec, opts.max_nodes);
  search.run(xs);
  if (search.exhausted)
    throw Error(ErrorKind::RecoveryInconclusive,
                "candidate search exceeded " + std::to_string(opts.max_nodes) + " nodes");
  for (auto& r : search.found) r.candidates_tried = search.leaves;
  return std::move(search.found);
}

std::vector<double> estimate_projections(const SampleSet& samples, int N, int D, const Recover2DOptions& opts) {
  const Recoverer rec(samples, N, D, opts);
  ExpPoly2D zero;
  std::vector<TorusMean> xs;
  for (const auto& row : rec.stage_rows(zero, 1))
    for (const auto& term : row.terms) {
      int idx = find_match(xs, term.x, opts.match_tol);
      if (idx < 0) {
        xs.push_back({term.x});
        idx = static_cast<int>(xs.size()) - 1;
      }
      xs[idx].add(term.x, poly_weight(term.p));
    }
  std::vector<double> out;
  for (const auto& m : xs) out.push_back(m.value());
  std::sort(out.begin(), out.end());
  return out;
}

RecoveryReport recover_auto(const SampleSet& samples, int N, int D, const Recover2DOptions& opts) {
  std::vector<double> X;
  try {
    X = estimate_projections(samples, N, D, opts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MissingSamplePoints) throw;
    throw Error(ErrorKind::RecoveryInconclusive, std::string("projection estimate failed: ") + e.what());
  }
  if (static_cast<int>(X.size()) > N)
    throw Error(ErrorKind::RecoveryInconclusive,
                std::to_string(X.size()) + " visible projections exceed N = " + std::to_string(N));
  auto found = recover_candidates(samples, N, D, X, opts);
  if (found.empty()) throw Error(ErrorKind::RecoveryInconclusive, "no model within the bounds fits the samples");
  if (found.size() > 1)
    throw Error(ErrorKind::AmbiguousData,
                std::to_string(found.size()) + " distinct models fit the samples; the sampling set is too small");
  return std::move(found.front());
}

}  // namespace prony2d
