#ifndef IWM_FP_LINALG_HPP
#define IWM_FP_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iwm/error.hpp"

namespace iwm {

// Scalar arithmetic in F_p. p must be an odd prime; products go through
// unsigned __int128 so any p < 2^63 is safe.
namespace fp {

inline uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint64_t sub(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t neg(uint64_t a, uint64_t p) { return a == 0 ? 0 : p - a; }
inline uint64_t mul(uint64_t a, uint64_t b, uint64_t p) {
  return (uint64_t)((unsigned __int128)a * b % p);
}
uint64_t pow(uint64_t a, uint64_t e, uint64_t p);
uint64_t inv(uint64_t a, uint64_t p);

// Reduce a signed integer into [0, p).
inline uint64_t of_int(long long v, uint64_t p) {
  long long m = v % (long long)p;
  if (m < 0) m += (long long)p;
  return (uint64_t)m;
}

// Binomial coefficient C(m, k) mod p by Lucas' theorem.
uint64_t binomial(uint64_t m, uint64_t k, uint64_t p);

} // namespace fp

using FpVector = std::vector<uint64_t>;

// Dense row-major matrix over F_p. Entries always reduced into [0, p).
class FpMatrix {
 public:
  FpMatrix() : p_(3), rows_(0), cols_(0) {}
  FpMatrix(uint64_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static FpMatrix identity(uint64_t p, std::size_t n);

  uint64_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const uint64_t* row(std::size_t r) const { return a_.data() + r * cols_; }
  uint64_t* row(std::size_t r) { return a_.data() + r * cols_; }

  void set(std::size_t r, std::size_t c, long long v) { at(r, c) = fp::of_int(v, p_); }

  FpMatrix mul(const FpMatrix& o) const;
  FpVector apply(const FpVector& v) const;
  FpMatrix transpose() const;

  bool operator==(const FpMatrix& o) const = default;

 private:
  uint64_t p_;
  std::size_t rows_, cols_;
  std::vector<uint64_t> a_;
};

std::size_t rank(const FpMatrix& m);
std::vector<FpVector> kernel_basis(const FpMatrix& m);
std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b);

// Streaming reduced row echelon form. Feed rows one at a time; at most
// `cols` of them stick. Used both to rank huge tall systems without
// materializing them and to extract kernels of streamed constraint sets.
class RowEchelon {
 public:
  RowEchelon(uint64_t p, std::size_t cols) : p_(p), cols_(cols) {}

  // Reduces `row` in place against the current basis; if a nonzero residue
  // remains it is normalized and inserted. Returns true when inserted.
  bool add_row(FpVector row);

  // Reduce without inserting (residue returned).
  FpVector reduce(FpVector row) const;
  bool contains(FpVector row) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  uint64_t p() const { return p_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }
  const std::vector<FpVector>& rows() const { return rows_; }

  // Kernel of the matrix whose row space this echelon spans, i.e. the
  // solution space of <all added rows> . x = 0.
  std::vector<FpVector> kernel() const;

 private:
  uint64_t p_;
  std::size_t cols_;
  std::vector<FpVector> rows_;        // reduced, leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;   // strictly increasing insertion kept sorted
};

// Decides membership of vectors in the column space of a tall matrix M and
// recovers coordinates, without ever transposing M. Columns are fed once;
// pivot columns are stored reduced together with the combination of input
// columns that produced them.
class ColumnSpaceSolver {
 public:
  ColumnSpaceSolver(uint64_t p, std::size_t height) : p_(p), height_(height) {}

  void add_column(const FpVector& col);
  std::size_t rank() const { return basis_.size(); }
  std::size_t num_columns() const { return ncols_; }

  // If b = M x has a solution, returns x (length = number of added columns).
  std::optional<FpVector> solve(FpVector b) const;
  bool contains(FpVector b) const;

 private:
  struct Piv {
    FpVector col;     // reduced column, normalized to 1 at lead
    FpVector combo;   // coordinates of `col` in terms of the original columns
    std::size_t lead;
  };
  uint64_t p_;
  std::size_t height_;
  std::size_t ncols_ = 0;
  std::vector<Piv> basis_;
};

} // namespace iwm

#endif
