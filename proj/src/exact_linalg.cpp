#include "k3lat/exact_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace k3lat {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw InputError("ragged matrix literal");
    for (long x : row) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

IntVec IntMatrix::col(std::size_t j) const {
  IntVec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<IntVec> IntMatrix::row_list() const {
  std::vector<IntVec> out;
  out.reserve(r_);
  for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i + 1; j < c_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw InputError("matrix product shape mismatch");
  IntMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix sum shape mismatch");
  IntMatrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix difference shape mismatch");
  IntMatrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
  return s;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix s = *this;
  for (auto& x : s.a_) x = -x;
  return s;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (v.size() != c_) throw InputError("matrix-vector shape mismatch");
  IntVec out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.c_ != bottom.c_) throw InputError("stack column mismatch");
  IntMatrix s(top.r_ + bottom.r_, top.c_);
  std::copy(top.a_.begin(), top.a_.end(), s.a_.begin());
  std::copy(bottom.a_.begin(), bottom.a_.end(),
            s.a_.begin() + static_cast<std::ptrdiff_t>(top.a_.size()));
  return s;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  IntMatrix s(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

RatMatrix::RatMatrix(const IntMatrix& m) : r_(m.rows()), c_(m.cols()), a_(r_ * c_) {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = m(i, j);
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (c_ != o.r_) throw InputError("matrix product shape mismatch");
  RatMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k)
      for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
  return p;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
  if (v.size() != c_) throw InputError("matrix-vector shape mismatch");
  RatVec out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw InputError("dot length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InputError("dot length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

Rat bilinear(const IntMatrix& g, const RatVec& x, const RatVec& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Rat t = 0;
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != 0) t += g(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RatMatrix inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a(m), inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw InputError("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(k, j));
        std::swap(inv(p, j), inv(k, j));
      }
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= f * m(i, src);
}

}  // namespace

Smith smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Smith s{m, IntMatrix::identity(r), IntMatrix::identity(c)};
  IntMatrix& d = s.d;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t bi = r, bj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (d(i, j) != 0 && (bi == r || abs(d(i, j)) < abs(d(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == r) break;
    d.swap_rows(t, bi);
    s.u.swap_rows(t, bi);
    d.swap_cols(t, bj);
    s.v.swap_cols(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        row_axpy(d, i, t, q);
        row_axpy(s.u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        col_axpy(d, j, t, q);
        col_axpy(s.v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(pi, pj))) pi = i, pj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(pi, pj))) pi = t, pj = j;
        d.swap_rows(t, pi);
        s.u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        s.v.swap_cols(t, pj);
        continue;
      }
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      row_axpy(d, t, bad, Int(-1));
      row_axpy(s.u, t, bad, Int(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < r; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t p = 0;
  for (std::size_t j = 0; j < c && p < r; ++j) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = p; i < r; ++i)
        if (a(i, j) != 0 && (best == r || abs(a(i, j)) < abs(a(best, j)))) best = i;
      if (best == r) break;
      a.swap_rows(p, best);
      bool done = true;
      for (std::size_t i = p + 1; i < r; ++i) {
        if (a(i, j) == 0) continue;
        Int q = a(i, j) / a(p, j);
        row_axpy(a, i, p, q);
        if (a(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (a(p, j) == 0) continue;
    if (a(p, j) < 0)
      for (std::size_t k = 0; k < c; ++k) a(p, k) = -a(p, k);
    for (std::size_t i = 0; i < p; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(p, j).get_mpz_t());
      if (q != 0) row_axpy(a, i, p, q);
    }
    ++p;
  }
  return a.submatrix(0, 0, p, c);
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rows(); }

std::vector<IntVec> kernel_basis_int(const IntMatrix& m) {
  const std::size_t n = m.cols();
  Smith s = smith_normal_form(m);
  std::size_t k = 0;
  while (k < std::min(m.rows(), n) && s.d(k, k) != 0) ++k;
  std::vector<IntVec> basis;
  for (std::size_t j = k; j < n; ++j) basis.push_back(s.v.col(j));
  if (basis.empty()) return basis;
  return hermite_normal_form(IntMatrix::from_rows(basis, n)).row_list();
}

std::vector<IntVec> saturate(const std::vector<IntVec>& sub_basis, std::size_t ambient_rank) {
  if (sub_basis.empty()) return {};
  IntMatrix b = IntMatrix::from_rows(sub_basis, ambient_rank);
  if (rank(b) != sub_basis.size()) throw InputError("saturate: dependent input vectors");
  // The saturation is the annihilator of the annihilator.
  std::vector<IntVec> ann = kernel_basis_int(b);
  if (ann.empty()) return IntMatrix::identity(ambient_rank).row_list();
  return kernel_basis_int(IntMatrix::from_rows(ann, ambient_rank));
}

std::optional<IntVec> solve_int(const IntMatrix& a, const IntVec& b) {
  Smith s = smith_normal_form(a);
  IntVec ub = s.u * b;
  const std::size_t n = a.cols();
  IntVec y(n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const bool has_pivot = i < n && s.d(i, i) != 0;
    if (!has_pivot) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % s.d(i, i) != 0) return std::nullopt;
    y[i] = ub[i] / s.d(i, i);
  }
  return s.v * y;
}

Signature signature_exact(const IntMatrix& g) {
  if (!g.is_symmetric()) throw InputError("signature of non-symmetric matrix");
  const std::size_t n = g.rows();
  RatMatrix a(g);
  std::vector<bool> done(n, false);
  Signature sig;
  auto eliminate = [&](const std::vector<std::size_t>& piv) {
    // Schur complement against the pivot block.
    if (piv.size() == 1) {
      const std::size_t p = piv[0];
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i] || a(i, p) == 0) continue;
        Rat f = a(i, p) / a(p, p);
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j]) a(i, j) -= f * a(p, j);
      }
      return;
    }
    const std::size_t p = piv[0], q = piv[1];
    Rat det = a(p, p) * a(q, q) - a(p, q) * a(q, p);
    Rat ipp = a(q, q) / det, iqq = a(p, p) / det, ipq = -a(p, q) / det;
    std::vector<Rat> cp(n), cq(n);
    for (std::size_t i = 0; i < n; ++i) {
      cp[i] = a(i, p);
      cq[i] = a(i, q);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Rat fi_p = cp[i] * ipp + cq[i] * ipq;
      Rat fi_q = cp[i] * ipq + cq[i] * iqq;
      if (fi_p == 0 && fi_q == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= fi_p * cp[j] + fi_q * cq[j];
    }
  };
  for (;;) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p != n) {
      (a(p, p) > 0 ? sig.n_plus : sig.n_minus)++;
      done[p] = true;
      eliminate({p});
      continue;
    }
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n && bi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!done[i] && !done[j] && a(i, j) != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == n) break;
    // Zero diagonal with an off-diagonal entry: a hyperbolic block.
    sig.n_plus++;
    sig.n_minus++;
    done[bi] = done[bj] = true;
    eliminate({bi, bj});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!done[i]) sig.n_zero++;
  return sig;
}

namespace f2 {

F2Vec reduce(const IntVec& v) {
  F2Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mpz_odd_p(v[i].get_mpz_t()) ? 1 : 0;
  return out;
}

F2Vec add(const F2Vec& a, const F2Vec& b) {
  F2Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

bool is_zero(const F2Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

std::vector<F2Vec> echelon(std::vector<F2Vec> vs, std::size_t n) {
  std::size_t p = 0;
  for (std::size_t j = 0; j < n && p < vs.size(); ++j) {
    std::size_t r = p;
    while (r < vs.size() && !vs[r][j]) ++r;
    if (r == vs.size()) continue;
    std::swap(vs[p], vs[r]);
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (i != p && vs[i][j])
        for (std::size_t k = 0; k < n; ++k) vs[i][k] ^= vs[p][k];
    ++p;
  }
  vs.resize(p);
  return vs;
}

std::size_t rank(const std::vector<F2Vec>& vs, std::size_t n) { return echelon(vs, n).size(); }

bool in_span(const std::vector<F2Vec>& basis, const F2Vec& x, std::size_t n) {
  std::vector<F2Vec> ext = basis;
  ext.push_back(x);
  return rank(ext, n) == rank(basis, n);
}

std::optional<F2Vec> coordinates(const std::vector<F2Vec>& basis, const F2Vec& x) {
  const std::size_t n = x.size();
  IntMatrix a(n, basis.size());
  IntVec b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) a(i, k) = basis[k][i];
    b[i] = x[i];
  }
  return solve_mod2(a, b);
}

std::vector<F2Vec> kernel(const std::vector<F2Vec>& rows, std::size_t n) {
  std::vector<F2Vec> e = echelon(rows, n);
  std::vector<std::size_t> pivots;
  for (const auto& r : e) {
    std::size_t j = 0;
    while (!r[j]) ++j;
    pivots.push_back(j);
  }
  std::vector<F2Vec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    F2Vec x(n, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < e.size(); ++i) x[pivots[i]] = e[i][f];
    out.push_back(x);
  }
  return out;
}

std::vector<F2Vec> intersection(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b,
                                std::size_t n) {
  // Solve sum c_i a_i + sum d_j b_j = 0 and map back through a.
  const std::size_t m = a.size() + b.size();
  std::vector<F2Vec> rows(n, F2Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) rows[i][k] = a[k][i];
    for (std::size_t k = 0; k < b.size(); ++k) rows[i][a.size() + k] = b[k][i];
  }
  std::vector<F2Vec> out;
  for (const auto& c : kernel(rows, m)) {
    F2Vec x(n, 0);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (c[k]) x = add(x, a[k]);
    out.push_back(x);
  }
  return echelon(out, n);
}

}  // namespace f2

std::optional<F2Vec> solve_mod2(const IntMatrix& a, const IntVec& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw InputError("solve_mod2: shape mismatch");
  std::vector<F2Vec> aug(m, F2Vec(n + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = mpz_odd_p(a(i, j).get_mpz_t()) ? 1 : 0;
    aug[i][n] = mpz_odd_p(b[i].get_mpz_t()) ? 1 : 0;
  }
  std::vector<F2Vec> e = f2::echelon(aug, n + 1);
  F2Vec x(n, 0);
  for (const auto& r : e) {
    std::size_t j = 0;
    while (!r[j]) ++j;
    if (j == n) return std::nullopt;
    x[j] = r[n];  // free variables are set to zero
  }
  return x;
}

}  // namespace k3lat
