#include "survivordim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "survivordim/errors.hpp"

namespace survivordim {

Matrix::Matrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim, 0.0) {
  if (dim < 1) throw DomainError("matrix dimension must be positive");
}

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim < 1) throw DomainError("matrix dimension must be positive");
  if (entries_.size() != static_cast<size_t>(dim) * dim) {
    throw DomainError("matrix of dimension " + std::to_string(dim) + " needs " +
                      std::to_string(dim * dim) + " entries, got " +
                      std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
  }
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& entries) {
  Matrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return m;
}

bool Matrix::is_diagonal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && (*this)(i, j) != 0.0) return false;
  return true;
}

std::vector<double> Matrix::diagonal_entries() const {
  std::vector<double> d(static_cast<size_t>(dim_));
  for (int i = 0; i < dim_; ++i) d[static_cast<size_t>(i)] = (*this)(i, i);
  return d;
}

Matrix Matrix::times(const Matrix& other) const {
  if (other.dim_ != dim_) throw DomainError("matrix product dimension mismatch");
  Matrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < dim_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::max_abs_row_sum() const {
  double best = 0.0;
  for (int i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (int j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

namespace {

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(Matrix s) {
  const int n = s.dim();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        scale += s(i, j) * s(i, j);
        if (i != j) off += s(i, j) * s(i, j);
      }
    if (off <= 1e-52 * scale || off == 0.0) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int i = 0; i < n; ++i) {
          const double sip = s(i, p), siq = s(i, q);
          s(i, p) = c * sip - sn * siq;
          s(i, q) = sn * sip + c * siq;
        }
        for (int i = 0; i < n; ++i) {
          const double spi = s(p, i), sqi = s(q, i);
          s(p, i) = c * spi - sn * sqi;
          s(q, i) = sn * spi + c * sqi;
        }
      }
    }
  }
  return s.diagonal_entries();
}

struct SparseRows {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;  // (column, weight > 0)
};

SparseRows to_sparse(const Matrix& m) {
  SparseRows s;
  s.n = m.dim();
  s.rows.resize(static_cast<size_t>(s.n));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      if (m(i, j) != 0.0) s.rows[static_cast<size_t>(i)].emplace_back(j, m(i, j));
  return s;
}

// Iterative Tarjan strongly connected components.
std::vector<std::vector<int>> strong_components(const SparseRows& g) {
  const int n = g.n;
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& edges = g.rows[static_cast<size_t>(f.v)];
      if (f.edge < edges.size()) {
        const int w = edges[f.edge].first;
        ++f.edge;
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] =
              std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
        }
      } else {
        const int v = f.v;
        call.pop_back();
        if (!call.empty()) {
          const int parent = call.back().v;
          low[static_cast<size_t>(parent)] =
              std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
        }
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          std::vector<int> comp;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          components.push_back(std::move(comp));
        }
      }
    }
  }
  return components;
}

SparseRows restrict_to(const SparseRows& g, const std::vector<int>& nodes) {
  std::vector<int> remap(static_cast<size_t>(g.n), -1);
  for (size_t i = 0; i < nodes.size(); ++i) remap[static_cast<size_t>(nodes[i])] = static_cast<int>(i);
  SparseRows out;
  out.n = static_cast<int>(nodes.size());
  out.rows.resize(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& [to, w] : g.rows[static_cast<size_t>(nodes[i])]) {
      const int r = remap[static_cast<size_t>(to)];
      if (r >= 0) out.rows[i].emplace_back(r, w);
    }
  }
  return out;
}

double sparse_max_row_sum(const SparseRows& g) {
  double best = 0.0;
  for (const auto& row : g.rows) {
    double s = 0.0;
    for (const auto& [to, w] : row) s += w;
    best = std::max(best, s);
  }
  return best;
}

Matrix densify(const SparseRows& g) {
  Matrix m(g.n);
  for (int i = 0; i < g.n; ++i)
    for (const auto& [to, w] : g.rows[static_cast<size_t>(i)]) m(i, to) += w;
  return m;
}

// True iff t strictly exceeds the Perron root of the nonnegative matrix m:
// tI - m is then a nonsingular M-matrix, equivalently all pivots of its
// no-pivoting LU factorization are positive (Fiedler-Ptak).
bool exceeds_perron_root(const Matrix& m, double t) {
  const int n = m.dim();
  Matrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = (i == j ? t : 0.0) - m(i, j);
  for (int k = 0; k < n; ++k) {
    const double pivot = a(k, k);
    if (!(pivot > 0.0)) return false;
    for (int i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / pivot;
      if (factor == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return true;
}

double perron_root_bisection(const Matrix& m, double tol) {
  double hi = m.max_abs_row_sum() * (1.0 + 1e-12) + 1e-300;
  if (hi == 0.0) return 0.0;
  while (!exceeds_perron_root(m, hi)) hi *= 1.0 + 1e-9;  // nudge past roundoff
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (exceeds_perron_root(m, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (mid == lo || mid == hi) break;  // bracket at machine resolution
  }
  return 0.5 * (lo + hi);
}

// Collatz-Wielandt power iteration for an irreducible block. A diagonal
// shift makes the block primitive, so the ratio bounds close monotonically
// onto the Perron root.
struct IterationOutcome {
  bool converged = false;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

IterationOutcome collatz_wielandt(const SparseRows& g, double tol, int max_iter) {
  const int n = g.n;
  double min_diag = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (const auto& [to, w] : g.rows[static_cast<size_t>(i)])
      if (to == i) d += w;
    min_diag = std::min(min_diag, d);
  }
  const double shift = min_diag > 0.0 ? 0.0 : sparse_max_row_sum(g) / 8.0;

  std::vector<double> x(static_cast<size_t>(n), 1.0), y(static_cast<size_t>(n));
  IterationOutcome out;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = shift * x[static_cast<size_t>(i)];
      for (const auto& [to, w] : g.rows[static_cast<size_t>(i)])
        acc += w * x[static_cast<size_t>(to)];
      y[static_cast<size_t>(i)] = acc;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, ymax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = y[static_cast<size_t>(i)] / x[static_cast<size_t>(i)];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      ymax = std::max(ymax, y[static_cast<size_t>(i)]);
    }
    out.lo = lo - shift;
    out.hi = hi - shift;
    if (hi - lo <= tol) {
      out.converged = true;
      out.value = 0.5 * (lo + hi) - shift;
      return out;
    }
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] / ymax;
  }
  return out;
}

double spectral_radius_sparse(const SparseRows& g, double tol) {
  if (sparse_max_row_sum(g) == 0.0) return 0.0;
  double best = 0.0;
  for (const auto& comp : strong_components(g)) {
    if (comp.size() == 1) {
      const int v = comp[0];
      for (const auto& [to, w] : g.rows[static_cast<size_t>(v)])
        if (to == v) best = std::max(best, w);
      continue;
    }
    const SparseRows block = restrict_to(g, comp);
    const IterationOutcome it = collatz_wielandt(block, tol, 200000);
    if (it.converged) {
      best = std::max(best, std::max(it.value, 0.0));
    } else if (block.n <= 64) {
      best = std::max(best, perron_root_bisection(densify(block), std::min(tol, 1e-13)));
    } else {
      throw NumericalError("power iteration did not converge on a block of dimension " +
                               std::to_string(block.n),
                           it.lo, it.hi);
    }
  }
  return best;
}

}  // namespace

std::vector<double> singular_values(const Matrix& a) {
  const int n = a.dim();
  std::vector<double> sigma(static_cast<size_t>(n));
  if (a.is_diagonal()) {
    for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = std::abs(a(i, i));
  } else {
    const Matrix gram = a.times(a.transpose());
    std::vector<double> eig = jacobi_eigenvalues(gram);
    for (int i = 0; i < n; ++i)
      sigma[static_cast<size_t>(i)] = std::sqrt(std::max(eig[static_cast<size_t>(i)], 0.0));
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

double operator_norm(const Matrix& a) { return singular_values(a).front(); }

namespace {

double minor_determinant(const Matrix& a, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  if (m == 1) return a(rows[0], cols[0]);
  double total = 0.0;
  double sign = 1.0;
  std::vector<int> rest(rows.begin() + 1, rows.end());
  std::vector<int> sub_cols(static_cast<size_t>(m) - 1);
  for (int j = 0; j < m; ++j) {
    int pos = 0;
    for (int c = 0; c < m; ++c) {
      if (c != j) sub_cols[static_cast<size_t>(pos++)] = cols[static_cast<size_t>(c)];
    }
    total += sign * a(rows[0], cols[static_cast<size_t>(j)]) * minor_determinant(a, rest, sub_cols);
    sign = -sign;
  }
  return total;
}

std::vector<std::vector<int>> lexicographic_subsets(int n, int m) {
  std::vector<std::vector<int>> subsets;
  std::vector<int> current(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) current[static_cast<size_t>(i)] = i;
  while (true) {
    subsets.push_back(current);
    int i = m - 1;
    while (i >= 0 && current[static_cast<size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++current[static_cast<size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      current[static_cast<size_t>(j)] = current[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return subsets;
}

}  // namespace

Matrix compound_matrix(const Matrix& a, int m) {
  const int n = a.dim();
  if (m < 1 || m > n) throw DomainError("compound order outside [1, dim]");
  const std::vector<std::vector<int>> subsets = lexicographic_subsets(n, m);
  Matrix out(static_cast<int>(subsets.size()));
  for (size_t i = 0; i < subsets.size(); ++i) {
    for (size_t j = 0; j < subsets.size(); ++j) {
      out(static_cast<int>(i), static_cast<int>(j)) =
          minor_determinant(a, subsets[i], subsets[j]);
    }
  }
  return out;
}

double spectral_radius(const Matrix& m, double tol) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!(m(i, j) >= 0.0)) throw DomainError("spectral_radius requires nonnegative entries");
  return spectral_radius_sparse(to_sparse(m), tol);
}

double spectral_radius(int dim, const std::vector<WeightedEdge>& edges, double tol) {
  if (dim < 1) throw DomainError("matrix dimension must be positive");
  SparseRows g;
  g.n = dim;
  g.rows.resize(static_cast<size_t>(dim));
  for (const WeightedEdge& e : edges) {
    if (e.from < 0 || e.from >= dim || e.to < 0 || e.to >= dim) {
      throw DomainError("edge endpoint outside [0, dim)");
    }
    if (!(e.weight >= 0.0)) throw DomainError("spectral_radius requires nonnegative weights");
    if (e.weight > 0.0) g.rows[static_cast<size_t>(e.from)].emplace_back(e.to, e.weight);
  }
  return spectral_radius_sparse(g, tol);
}

}  // namespace survivordim
