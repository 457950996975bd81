#include "prony2d/prony1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "prony2d/error.hpp"

namespace prony2d {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

int FreqMult::total() const {
  int s = 0;
  for (const auto& e : entries) s += e.mult;
  return s;
}

Annihilator annihilator(std::span<const Complex> samples, int max_order,
                        const AnnihilatorOptions& opts) {
  if (max_order < 1) throw Error(ErrorKind::InvalidParameter, "max_order must be >= 1");
  const int L = static_cast<int>(samples.size()) - 1;
  if (L < 2 * max_order)
    throw Error(ErrorKind::InvalidParameter,
                "need at least 2*max_order+1 samples, got " + std::to_string(samples.size()));

  for (int d = std::max(opts.min_order, 0); d <= max_order; ++d) {
    const int rows = L - d + 1;
    const double floor = opts.noise_floor * std::sqrt(static_cast<double>(rows) * (d + 1));
    CMatrix windows(rows, d + 1);
    for (int n = 0; n < rows; ++n)
      for (int i = 0; i <= d; ++i) windows(n, i) = samples[n + i];

    if (d == 0) {
      if (windows.norm() <= floor) return Annihilator{{Complex{1.0, 0.0}}};
      continue;
    }

    Eigen::JacobiSVD<CMatrix> svd(windows);
    const auto& sv = svd.singularValues();
    const double threshold = std::max(opts.rank_tol * sv(0), floor);
    if (sv(d) > threshold) continue;

    const CMatrix head = windows.leftCols(d);
    const CVector tail = -windows.col(d);
    const CVector c = head.completeOrthogonalDecomposition().solve(tail);
    Annihilator a;
    a.coeffs.assign(c.data(), c.data() + d);
    a.coeffs.push_back({1.0, 0.0});
    return a;
  }
  throw Error(ErrorKind::ModelOrderExceeded,
              "no recurrence of order <= " + std::to_string(max_order) + " fits the samples");
}

namespace {

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) out.push_back(static_cast<double>(i) * coeffs[i]);
  return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  if (d == 0) return {};
  if (d == 1) return {-monic[0]};
  CMatrix companion = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -monic[i];
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + d};
}

double turns_of(Complex z) { return wrap01(std::arg(z) / (2.0 * kPi)); }

// Newton iteration on the (mult-1)-th derivative, where an m-fold root is simple.
Complex refine_root(const std::vector<Complex>& monic, Complex z0, int mult, double max_shift) {
  std::vector<Complex> g = monic;
  for (int i = 1; i < mult; ++i) g = derivative(g);
  const std::vector<Complex> dg = derivative(g);
  Complex z = z0;
  for (int iter = 0; iter < 30; ++iter) {
    const Complex denom = horner(dg, z);
    if (std::abs(denom) == 0.0) break;
    const Complex step = horner(g, z) / denom;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::abs(z)) break;
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z - z0) > max_shift) return z0;
  return z;
}

}  // namespace

FreqMult unit_roots(const Annihilator& a, double cluster_tol) {
  if (a.coeffs.empty() || a.coeffs.back() != Complex{1.0, 0.0})
    throw Error(ErrorKind::InvalidParameter, "annihilator must be monic");
  const std::vector<Complex> roots = polynomial_roots(a.coeffs);
  for (const auto& z : roots)
    if (std::abs(std::abs(z) - 1.0) > kMaxRadialDeviation)
      throw Error(ErrorKind::OffCircleRoot,
                  "root with modulus " + std::to_string(std::abs(z)) + " is off the unit circle");

  // Single-linkage clusters along the circle.
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return turns_of(roots[i]) < turns_of(roots[j]); });
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t idx : order) {
    if (!clusters.empty() &&
        torus_distance(turns_of(roots[clusters.back().back()]), turns_of(roots[idx])) <= cluster_tol)
      clusters.back().push_back(idx);
    else
      clusters.push_back({idx});
  }
  // Wrap-around merge of the last and first cluster.
  if (clusters.size() > 1 &&
      torus_distance(turns_of(roots[clusters.back().back()]), turns_of(roots[clusters.front().front()])) <=
          cluster_tol) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  FreqMult fm;
  for (const auto& cl : clusters) {
    Complex centre{0.0, 0.0};
    for (auto i : cl) centre += roots[i];
    centre /= static_cast<double>(cl.size());
    const int mult = static_cast<int>(cl.size());
    const Complex z = refine_root(a.coeffs, centre, mult, 2.0 * kPi * cluster_tol);
    fm.entries.push_back({turns_of(z), mult});
  }
  std::sort(fm.entries.begin(), fm.entries.end(),
            [](const FreqMultEntry& l, const FreqMultEntry& r) { return l.x < r.x; });
  return fm;
}

ConfluentSolution confluent_solve(std::span<const Complex> samples, const FreqMult& fm) {
  const int rows = static_cast<int>(samples.size());
  const int cols = fm.total();
  ConfluentSolution out;
  if (cols == 0) {
    for (const auto& s : samples) out.residual = std::max(out.residual, std::abs(s));
    out.condition = 1.0;
    return out;
  }
  if (rows < cols)
    throw Error(ErrorKind::InvalidParameter, "fewer samples than unknown coefficients");

  CMatrix V(rows, cols);
  int col = 0;
  for (const auto& e : fm.entries) {
    for (int a = 0; a < e.mult; ++a, ++col)
      for (int n = 0; n < rows; ++n) V(n, col) = std::pow(static_cast<double>(n), a) * unit_phase(e.x, n);
  }
  Eigen::VectorXd scale(cols);
  for (int c = 0; c < cols; ++c) {
    scale(c) = V.col(c).norm();
    if (scale(c) == 0.0) throw Error(ErrorKind::Conditioning, "zero column in confluent system");
    V.col(c) /= scale(c);
  }
  CVector b(rows);
  for (int n = 0; n < rows; ++n) b(n) = samples[n];

  Eigen::JacobiSVD<CMatrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv(cols - 1);
  out.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(out.condition <= kMaxCondition))
    throw Error(ErrorKind::Conditioning,
                "confluent system condition number " + std::to_string(out.condition) + " exceeds 1e12");
  CVector sol = svd.solve(b);
  for (int c = 0; c < cols; ++c) sol(c) /= scale(c);

  col = 0;
  for (const auto& e : fm.entries) {
    Term1D term{e.x, {}};
    for (int a = 0; a < e.mult; ++a, ++col) term.p.coeffs.push_back(sol(col));
    out.f.terms.push_back(std::move(term));
  }
  for (int n = 0; n < rows; ++n) out.residual = std::max(out.residual, std::abs(eval1d(out.f, n) - samples[n]));
  return out;
}

namespace {

// Gauss-Newton on the frequencies with the coefficients eliminated
// (variable projection); each step re-solves the confluent system.
ConfluentSolution polish_frequencies(std::span<const Complex> samples, FreqMult fm, ConfluentSolution best) {
  const int rows = static_cast<int>(samples.size());
  const int k = static_cast<int>(fm.entries.size());
  if (k == 0) return best;
  for (int iter = 0; iter < 8; ++iter) {
    const int cols = fm.total();
    CMatrix V(rows, cols);
    CMatrix J(rows, k);
    int col = 0;
    for (int j = 0; j < k; ++j) {
      const auto& e = fm.entries[j];
      const auto& coeffs = best.f.terms[j].p.coeffs;
      for (int n = 0; n < rows; ++n) {
        const Complex ph = unit_phase(e.x, n);
        Complex dp{0.0, 0.0};
        for (int a = 0; a < e.mult; ++a) {
          V(n, col + a) = std::pow(static_cast<double>(n), a) * ph;
          dp += coeffs[a] * std::pow(static_cast<double>(n), a);
        }
        J(n, j) = Complex(0.0, 2.0 * kPi * n) * dp * ph;
      }
      col += e.mult;
    }
    CVector r(rows);
    for (int n = 0; n < rows; ++n) r(n) = eval1d(best.f, n) - samples[n];
    // Project the Jacobian onto the orthogonal complement of range(V).
    Eigen::HouseholderQR<CMatrix> qr(V);
    const CMatrix Q = qr.householderQ() * CMatrix::Identity(rows, cols);
    const CMatrix Jp = J - Q * (Q.adjoint() * J);
    Eigen::MatrixXd A(2 * rows, k);
    Eigen::VectorXd rhs(2 * rows);
    A.topRows(rows) = Jp.real();
    A.bottomRows(rows) = Jp.imag();
    rhs.head(rows) = r.real();
    rhs.tail(rows) = r.imag();
    const Eigen::VectorXd delta = A.completeOrthogonalDecomposition().solve(rhs);
    FreqMult trial = fm;
    for (int j = 0; j < k; ++j) trial.entries[j].x = wrap01(trial.entries[j].x - delta(j));
    ConfluentSolution next;
    try {
      next = confluent_solve(samples, trial);
    } catch (const Error&) {
      break;
    }
    if (!(next.residual < best.residual)) break;
    const bool converged = next.residual > 0.5 * best.residual;
    best = std::move(next);
    fm = std::move(trial);
    if (converged) break;
  }
  return best;
}

// Drop coefficient contributions that are below tau everywhere on {0..L}.
void trim_negligible(ExpPoly1D& f, int L, double tau) {
  for (auto& term : f.terms) {
    auto& c = term.p.coeffs;
    while (!c.empty() && std::abs(c.back()) * std::pow(static_cast<double>(std::max(L, 1)), c.size() - 1) <= tau)
      c.pop_back();
  }
  std::erase_if(f.terms, [](const Term1D& t) { return t.p.coeffs.empty(); });
}

}  // namespace

ExpPoly1D recover_exppoly1d(std::span<const Complex> samples, int N, int D, const Prony1DOptions& opts) {
  if (N < 1 || D < 1) throw Error(ErrorKind::InvalidParameter, "N and D must be >= 1");
  const int L = 2 * N * D;
  if (static_cast<int>(samples.size()) != L + 1)
    throw Error(ErrorKind::InvalidParameter,
                "expected " + std::to_string(L + 1) + " samples, got " + std::to_string(samples.size()));

  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s));
  if (scale == 0.0) return {};
  const double reference =
      std::max(scale, opts.annihilator.rank_tol > 0 ? opts.annihilator.noise_floor / opts.annihilator.rank_tol : 0.0);
  const double tolerance = opts.reproduce_tol * reference;

  AnnihilatorOptions aopts = opts.annihilator;
  std::optional<Error> first_error;
  while (aopts.min_order <= N * D) {
    const Annihilator ann = [&] {
      try {
        return annihilator(samples, N * D, aopts);
      } catch (const Error&) {
        if (first_error) throw *first_error;
        throw;
      }
    }();
    if (ann.order() == 0) return {};
    try {
      const FreqMult fm = unit_roots(ann, opts.cluster_tol);
      ConfluentSolution sol = polish_frequencies(samples, fm, confluent_solve(samples, fm));
      trim_negligible(sol.f, L, tolerance);
      double residual = 0.0;
      for (int n = 0; n <= L; ++n) residual = std::max(residual, std::abs(eval1d(sol.f, n) - samples[n]));
      if (residual > tolerance)
        throw Error(ErrorKind::ModelOrderExceeded,
                    "order-" + std::to_string(ann.order()) + " model leaves residual " + std::to_string(residual));

      if (static_cast<int>(sol.f.terms.size()) > N)
        throw Error(ErrorKind::ModelBoundViolation,
                    std::to_string(sol.f.terms.size()) + " terms exceed bound " + std::to_string(N));
      for (const auto& t : sol.f.terms)
        if (static_cast<int>(t.p.coeffs.size()) > D)
          throw Error(ErrorKind::ModelBoundViolation,
                      "coefficient degree " + std::to_string(t.p.coeffs.size() - 1) + " violates bound < " +
                          std::to_string(D));
      return sol.f;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ModelBoundViolation) throw;
      if (!first_error) first_error = e;
      aopts.min_order = ann.order() + 1;
    }
  }
  throw *first_error;
}

}  // namespace prony2d
