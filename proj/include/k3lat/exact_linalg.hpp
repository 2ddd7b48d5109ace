#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace k3lat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using F2Vec = std::vector<std::uint8_t>;

// Raised when a value handed to the library violates an operation's precondition.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when two independent computations of the same quantity disagree.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static IntMatrix diagonal(const IntVec& d);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  std::vector<IntVec> row_list() const;
  IntMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMatrix& o) const = default;

  // Vertical concatenation.
  static IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);

  std::string to_string() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  RatMatrix operator*(const RatMatrix& o) const;
  RatVec operator*(const RatVec& v) const;
  bool operator==(const RatMatrix& o) const = default;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
RatVec to_rat(const IntVec& v);
// x^T g y for integer g and rational vectors.
Rat bilinear(const IntMatrix& g, const RatVec& x, const RatVec& y);

// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);
// Inverse of a nonsingular square matrix; throws InputError if singular.
RatMatrix inverse(const IntMatrix& m);

struct Smith {
  IntMatrix d, u, v;  // u * m * v == d
};

// Smith normal form with unimodular transforms. Diagonal entries are
// nonnegative and each divides the next.
Smith smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form of the row span of m with zero rows dropped:
// positive pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

// Basis of {x in Z^n : m x = 0}, returned as HNF rows.
std::vector<IntVec> kernel_basis_int(const IntMatrix& m);

// Basis of the primitive closure of span(sub_basis) in Z^ambient_rank, as HNF rows.
// Throws InputError when the vectors are dependent.
std::vector<IntVec> saturate(const std::vector<IntVec>& sub_basis, std::size_t ambient_rank);

// Integer solution of a x = b, if one exists.
std::optional<IntVec> solve_int(const IntMatrix& a, const IntVec& b);

struct Signature {
  std::size_t n_plus = 0, n_minus = 0, n_zero = 0;
  bool operator==(const Signature&) const = default;
};

// Sign counts of a symmetric matrix by congruence diagonalization over Q.
Signature signature_exact(const IntMatrix& g);

// Arithmetic over Z/2.
namespace f2 {

F2Vec reduce(const IntVec& v);
F2Vec add(const F2Vec& a, const F2Vec& b);
bool is_zero(const F2Vec& v);
// Row echelon basis of the span of the given vectors (all of length n).
std::vector<F2Vec> echelon(std::vector<F2Vec> vs, std::size_t n);
std::size_t rank(const std::vector<F2Vec>& vs, std::size_t n);
bool in_span(const std::vector<F2Vec>& basis, const F2Vec& x, std::size_t n);
// Coefficients c with sum c_k basis[k] == x, if x lies in the span.
std::optional<F2Vec> coordinates(const std::vector<F2Vec>& basis, const F2Vec& x);
// Basis of {x : sum_j rows[i][j] x_j == 0 for all i}.
std::vector<F2Vec> kernel(const std::vector<F2Vec>& rows, std::size_t n);
std::vector<F2Vec> intersection(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b,
                                std::size_t n);

}  // namespace f2

// Some x with a x == b (mod 2), or nullopt when the system is inconsistent.
std::optional<F2Vec> solve_mod2(const IntMatrix& a, const IntVec& b);

}  // namespace k3lat
