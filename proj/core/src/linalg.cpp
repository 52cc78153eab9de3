#include "spaceform/linalg.hpp"

#include <algorithm>

#include "spaceform/errors.hpp"

namespace spaceform {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Truncated quotient, matching C semantics: remainder has |r| < |b|.
Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Smallest |entry| != 0 in the trailing submatrix [t.., t..]; ties broken in
// row-major order. Returns false if the submatrix is zero.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < a.rows(); ++i) {
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int mag = abs_int(a(i, j));
      if (!found || mag < best) {
        found = true;
        best = mag;
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  std::size_t lim = std::min(d.rows(), d.cols());
  while (r < lim && d(r, r) != 0) ++r;
  return r;
}

IntVec SmithDecomposition::divisors() const {
  IntVec out;
  std::size_t lim = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < lim && d(i, i) != 0; ++i) out.push_back(d(i, i));
  return out;
}

IntMatrix LatticeBasis::as_rows() const {
  IntMatrix m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
  return m;
}

IntMatrix LatticeBasis::as_cols() const { return as_rows().transposed(); }

namespace {

// Shared elimination; u and v track the row/column transforms when
// non-null (skipping them saves the quadratic bookkeeping on very wide
// or very tall input).
IntMatrix snf_impl(const IntMatrix& m, IntMatrix* u, IntMatrix* v) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix a = m;

  std::size_t t = 0;
  while (t < r && t < c) {
    std::size_t pi, pj;
    if (!find_pivot(a, t, pi, pj)) break;
    for (;;) {
      a.swap_rows(t, pi);
      if (u) u->swap_rows(t, pi);
      a.swap_cols(t, pj);
      if (v) v->swap_cols(t, pj);

      bool leftover = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q = tdiv(a(i, t), a(t, t));
        if (q != 0) {
          a.add_row_multiple(i, t, -q);
          if (u) u->add_row_multiple(i, t, -q);
        }
        if (a(i, t) != 0) leftover = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q = tdiv(a(t, j), a(t, t));
        if (q != 0) {
          a.add_col_multiple(j, t, -q);
          if (v) v->add_col_multiple(j, t, -q);
        }
        if (a(t, j) != 0) leftover = true;
      }
      if (leftover) {
        find_pivot(a, t, pi, pj);
        continue;
      }
      // Row and column t are clear; enforce the divisibility chain.
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i) {
        for (std::size_t j = t + 1; j < c && !fixed; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, Int(1));
            if (u) u->add_row_multiple(t, i, Int(1));
            fixed = true;
          }
        }
      }
      if (!fixed) break;
      find_pivot(a, t, pi, pj);
    }
    ++t;
  }

  std::size_t lim = std::min(r, c);
  for (std::size_t i = 0; i < lim; ++i) {
    if (a(i, i) < 0) {
      a.negate_row(i);
      if (u) u->negate_row(i);
    }
  }
  return a;
}

}  // namespace

SmithDecomposition snf(const IntMatrix& m) {
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  IntMatrix d = snf_impl(m, &u, &v);
  return {std::move(u), std::move(d), std::move(v)};
}

SmithDecomposition snf_row_transform(const IntMatrix& m) {
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix d = snf_impl(m, &u, nullptr);
  return {std::move(u), std::move(d), IntMatrix()};
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    for (;;) {
      // smallest |entry| in this column at rows >= r
      std::size_t best_i = rows;
      Int best;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int mag = abs_int(h(i, col));
        if (best_i == rows || mag < best) {
          best_i = i;
          best = mag;
        }
      }
      if (best_i == rows) break;
      h.swap_rows(r, best_i);
      bool leftover = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int q = tdiv(h(i, col), h(r, col));
        if (q != 0) h.add_row_multiple(i, r, -q);
        if (h(i, col) != 0) leftover = true;
      }
      if (!leftover) break;
    }
    if (h(r, col) == 0) continue;  // column has no pivot
    if (h(r, col) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv(h(i, col), h(r, col));
      if (q != 0) h.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) out.set_row(i, h.row(i));
  return out;
}

LatticeBasis lattice_from_rows(const IntMatrix& rows, std::size_t ambient) {
  IntMatrix h = hermite_rows(rows);
  LatticeBasis b;
  b.ambient = ambient;
  for (std::size_t i = 0; i < h.rows(); ++i) b.vectors.push_back(h.row(i));
  return b;
}

LatticeBasis kernel_lattice(const IntMatrix& m) {
  SmithDecomposition s = snf(m);
  std::size_t rank = s.rank();
  const std::size_t c = m.cols();
  IntMatrix gens(c - rank, c);
  for (std::size_t idx = rank; idx < c; ++idx) {
    gens.set_row(idx - rank, s.v.col(idx));
  }
  return lattice_from_rows(gens, c);
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve_integer: rhs length mismatch");
  }
  SmithDecomposition s = snf(m);
  IntVec ub = s.u * b;
  const std::size_t lim = std::min(m.rows(), m.cols());
  IntVec y(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < lim && s.d(i, i) != 0) {
      if (ub[i] % s.d(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.d(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

std::optional<RationalSolution> solve_rational(const RatMatrix& m, const RatVec& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve_rational: rhs length mismatch");
  }
  RatMatrix a = m;
  RatVec rhs = b;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    }
    if (p == rows) continue;
    a.swap_rows(r, p);
    std::swap(rhs[r], rhs[p]);
    Rat inv = 1 / a(r, col);
    for (std::size_t j = col; j < cols; ++j) a(r, j) *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(r, j);
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (rhs[i] != 0) return std::nullopt;
  }
  RationalSolution sol;
  sol.particular.assign(cols, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    sol.particular[pivot_col[i]] = rhs[i];
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec k(cols, Rat(0));
    k[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      k[pivot_col[i]] = -a(i, f);
    }
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

LatticeBasis complement_of_saturated(const LatticeBasis& sub) {
  const std::size_t n = sub.ambient;
  const std::size_t r = sub.rank();
  SmithDecomposition s = snf(sub.as_rows());
  if (s.rank() != r) {
    throw InternalInconsistencyError("complement: sublattice basis is dependent");
  }
  for (const Int& d : s.divisors()) {
    if (d != 1) {
      throw InternalInconsistencyError("complement: sublattice is not saturated");
    }
  }
  IntMatrix vinv = inverse_unimodular(s.v);
  IntMatrix gens(n - r, n);
  for (std::size_t i = r; i < n; ++i) gens.set_row(i - r, vinv.row(i));
  return lattice_from_rows(gens, n);
}

LatticeBasis complement_in_lattice(const LatticeBasis& sub, const IntMatrix& map_to_quotient) {
  LatticeBasis comp = complement_of_saturated(sub);
  if (comp.rank() > 0) {
    RatMatrix image = to_rat(map_to_quotient * comp.as_cols());
    if (rank_rational(image) != comp.rank()) {
      throw InternalInconsistencyError(
          "complement_in_lattice: quotient map not injective on complement");
    }
  }
  return comp;
}

LatticeBasis fixed_sublattice(const std::vector<IntMatrix>& generators) {
  if (generators.empty()) {
    throw std::invalid_argument("fixed_sublattice: no generators");
  }
  const std::size_t n = generators.front().rows();
  for (const IntMatrix& g : generators) {
    if (g.rows() != n || g.cols() != n) {
      throw std::invalid_argument("fixed_sublattice: generators of mixed size");
    }
    Int d = determinant(g);
    if (d != 1 && d != -1) {
      throw std::invalid_argument("fixed_sublattice: generator not invertible over Z");
    }
  }
  IntMatrix stacked(generators.size() * n, n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        stacked(g * n + i, j) = generators[g](i, j) - (i == j ? Int(1) : Int(0));
      }
    }
  }
  return kernel_lattice(stacked);
}

namespace {

// Newton's identities: k * e_k = sum_{i=1..k} (-1)^(i-1) p_i e_{k-i}.
RatVec elementary_from_power_sums(const RatVec& p) {
  const std::size_t n = p.size();
  RatVec e(n + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Rat acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      Rat term = p[i - 1] * e[k - i];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[k] = acc / Rat(static_cast<long>(k));
  }
  return e;
}

}  // namespace

RatVec exterior_trace_poly(const RatMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("exterior_trace_poly: matrix not square");
  }
  const std::size_t n = a.rows();
  RatVec power_sums(n);
  RatMatrix p = RatMatrix::identity(n);
  for (std::size_t i = 1; i <= n; ++i) {
    p = p * a;
    Rat tr(0);
    for (std::size_t d = 0; d < n; ++d) tr += p(d, d);
    power_sums[i - 1] = tr;
  }
  return elementary_from_power_sums(power_sums);
}

IntVec exterior_trace_poly(const IntMatrix& a) {
  RatVec e = exterior_trace_poly(to_rat(a));
  IntVec out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = to_int(e[i]);
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix not square");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      }
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign < 0 ? Int(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

RatMatrix inverse_rational(const RatMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("inverse_rational: matrix not square");
  }
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw std::invalid_argument("inverse_rational: singular matrix");
    a.swap_rows(col, p);
    inv.swap_rows(col, p);
    Rat s = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  Int d = determinant(m);
  if (d != 1 && d != -1) {
    throw InternalInconsistencyError("inverse_unimodular: determinant is not +-1");
  }
  RatMatrix inv = inverse_rational(to_rat(m));
  const std::size_t n = m.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = to_int(inv(i, j));
  return out;
}

std::size_t rank_rational(const RatMatrix& m) {
  RatMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    }
    if (p == rows) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, col) == 0) continue;
      Rat f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t j) {
  std::vector<std::vector<std::size_t>> out;
  if (j > n) return out;
  std::vector<std::size_t> cur(j);
  for (std::size_t i = 0; i < j; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    if (j == 0) break;
    // advance to the next subset in lex order
    std::size_t i = j;
    while (i > 0 && cur[i - 1] == n - j + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t t = i; t < j; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

IntMatrix wedge_power(const IntMatrix& a, std::size_t j) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("wedge_power: matrix not square");
  }
  const std::size_t n = a.rows();
  if (j > n) throw std::invalid_argument("wedge_power: degree exceeds dimension");
  auto subs = subsets_lex(n, j);
  IntMatrix w(subs.size(), subs.size());
  for (std::size_t s = 0; s < subs.size(); ++s) {
    for (std::size_t t = 0; t < subs.size(); ++t) {
      IntMatrix minor(j, j);
      for (std::size_t x = 0; x < j; ++x)
        for (std::size_t y = 0; y < j; ++y)
          minor(x, y) = a(subs[s][x], subs[t][y]);
      w(s, t) = determinant(minor);
    }
  }
  return w;
}

LatticeBasis saturate(const std::vector<IntVec>& rows, std::size_t ambient) {
  if (rows.empty()) return LatticeBasis{ambient, {}};
  IntMatrix m(rows.size(), ambient);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  // U m V = D gives U m = D V^-1, so dividing row i of U m by d_i yields
  // the first rank rows of V^-1: a basis of the saturation. V itself is
  // never materialized (the input can be very wide).
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix d = snf_impl(m, &u, nullptr);
  std::size_t rank = 0;
  std::size_t lim = std::min(d.rows(), d.cols());
  while (rank < lim && d(rank, rank) != 0) ++rank;
  IntMatrix um = u * m;
  IntMatrix gens(rank, ambient);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < ambient; ++j) {
      mpz_divexact(gens(i, j).get_mpz_t(), um(i, j).get_mpz_t(), d(i, i).get_mpz_t());
    }
  }
  return lattice_from_rows(gens, ambient);
}

}  // namespace spaceform
