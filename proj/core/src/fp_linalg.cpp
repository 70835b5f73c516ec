#include "iwm/fp_linalg.hpp"

#include <algorithm>

namespace iwm {
namespace fp {

uint64_t pow(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t inv(uint64_t a, uint64_t p) {
  require(a % p != 0, errc::internal_inconsistency, "inverse of 0 mod p");
  return pow(a % p, p - 2, p);
}

uint64_t binomial(uint64_t m, uint64_t k, uint64_t p) {
  // Lucas: C(m,k) = prod C(m_i, k_i) over base-p digits.
  uint64_t r = 1;
  while (k > 0 || m > 0) {
    uint64_t md = m % p, kd = k % p;
    if (kd > md) return 0;
    // C(md, kd) with md, kd < p
    uint64_t num = 1, den = 1;
    for (uint64_t i = 0; i < kd; ++i) {
      num = mul(num, (md - i) % p, p);
      den = mul(den, (i + 1) % p, p);
    }
    r = mul(r, mul(num, inv(den, p), p), p);
    m /= p;
    k /= p;
  }
  return r;
}

} // namespace fp

FpMatrix FpMatrix::identity(uint64_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  require(cols_ == o.rows_ && p_ == o.p_, errc::parameter_mismatch, "matrix product shape");
  FpMatrix r(p_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      uint64_t aik = at(i, k);
      if (!aik) continue;
      const uint64_t* orow = o.row(k);
      uint64_t* rrow = r.row(i);
      for (std::size_t j = 0; j < o.cols_; ++j)
        rrow[j] = fp::add(rrow[j], fp::mul(aik, orow[j], p_), p_);
    }
  }
  return r;
}

FpVector FpMatrix::apply(const FpVector& v) const {
  require(v.size() == cols_, errc::parameter_mismatch, "matrix apply shape");
  FpVector r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    const uint64_t* mrow = row(i);
    for (std::size_t j = 0; j < cols_; ++j)
      if (mrow[j]) acc = fp::add(acc, fp::mul(mrow[j], v[j], p_), p_);
    r[i] = acc;
  }
  return r;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix r(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::size_t rank(const FpMatrix& m) {
  RowEchelon ech(m.p(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    FpVector r(m.row(i), m.row(i) + m.cols());
    ech.add_row(std::move(r));
    if (ech.rank() == std::min(m.rows(), m.cols())) break;  // early pivot abort
  }
  return ech.rank();
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  RowEchelon ech(m.p(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    ech.add_row(FpVector(m.row(i), m.row(i) + m.cols()));
  return ech.kernel();
}

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b) {
  require(b.size() == m.rows(), errc::parameter_mismatch, "solve: rhs length");
  ColumnSpaceSolver cs(m.p(), m.rows());
  FpVector col(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m.at(i, j);
    cs.add_column(col);
  }
  return cs.solve(b);
}

bool RowEchelon::add_row(FpVector row) {
  require(row.size() == cols_, errc::parameter_mismatch, "echelon row length");
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    uint64_t c = row[pivots_[k]];
    if (!c) continue;
    const FpVector& pr = rows_[k];
    for (std::size_t j = pivots_[k]; j < cols_; ++j)
      if (pr[j]) row[j] = fp::sub(row[j], fp::mul(c, pr[j], p_), p_);
  }
  std::size_t lead = 0;
  while (lead < cols_ && row[lead] == 0) ++lead;
  if (lead == cols_) return false;
  uint64_t iv = fp::inv(row[lead], p_);
  for (std::size_t j = lead; j < cols_; ++j) row[j] = fp::mul(row[j], iv, p_);
  // back-substitute into existing rows so the basis stays fully reduced
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    uint64_t c = rows_[k][lead];
    if (!c) continue;
    for (std::size_t j = lead; j < cols_; ++j)
      if (row[j]) rows_[k][j] = fp::sub(rows_[k][j], fp::mul(c, row[j], p_), p_);
  }
  // insert keeping pivot columns sorted
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  std::size_t pos = (std::size_t)(it - pivots_.begin());
  pivots_.insert(it, lead);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

FpVector RowEchelon::reduce(FpVector row) const {
  require(row.size() == cols_, errc::parameter_mismatch, "echelon row length");
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    uint64_t c = row[pivots_[k]];
    if (!c) continue;
    const FpVector& pr = rows_[k];
    for (std::size_t j = pivots_[k]; j < cols_; ++j)
      if (pr[j]) row[j] = fp::sub(row[j], fp::mul(c, pr[j], p_), p_);
  }
  return row;
}

bool RowEchelon::contains(FpVector row) const {
  row = reduce(std::move(row));
  return std::all_of(row.begin(), row.end(), [](uint64_t v) { return v == 0; });
}

std::vector<FpVector> RowEchelon::kernel() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<FpVector> ker;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    FpVector v(cols_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots_.size(); ++k)
      v[pivots_[k]] = fp::neg(rows_[k][f], p_);
    ker.push_back(std::move(v));
  }
  return ker;
}

void ColumnSpaceSolver::add_column(const FpVector& col) {
  require(col.size() == height_, errc::parameter_mismatch, "column height");
  std::size_t idx = ncols_++;
  FpVector c = col;
  FpVector combo(ncols_, 0);
  combo[idx] = 1;
  for (const Piv& piv : basis_) {
    uint64_t f = c[piv.lead];
    if (!f) continue;
    for (std::size_t i = 0; i < height_; ++i)
      if (piv.col[i]) c[i] = fp::sub(c[i], fp::mul(f, piv.col[i], p_), p_);
    for (std::size_t i = 0; i < piv.combo.size(); ++i)
      if (piv.combo[i]) combo[i] = fp::sub(combo[i], fp::mul(f, piv.combo[i], p_), p_);
  }
  std::size_t lead = 0;
  while (lead < height_ && c[lead] == 0) ++lead;
  if (lead == height_) return;  // dependent column
  uint64_t iv = fp::inv(c[lead], p_);
  for (auto& x : c) x = fp::mul(x, iv, p_);
  for (auto& x : combo) x = fp::mul(x, iv, p_);
  basis_.push_back(Piv{std::move(c), std::move(combo), lead});
}

std::optional<FpVector> ColumnSpaceSolver::solve(FpVector b) const {
  require(b.size() == height_, errc::parameter_mismatch, "rhs height");
  FpVector x(ncols_, 0);
  for (const Piv& piv : basis_) {
    uint64_t f = b[piv.lead];
    if (!f) continue;
    for (std::size_t i = 0; i < height_; ++i)
      if (piv.col[i]) b[i] = fp::sub(b[i], fp::mul(f, piv.col[i], p_), p_);
    for (std::size_t i = 0; i < piv.combo.size(); ++i)
      if (piv.combo[i]) x[i] = fp::add(x[i], fp::mul(f, piv.combo[i], p_), p_);
  }
  for (uint64_t v : b)
    if (v) return std::nullopt;
  x.resize(ncols_, 0);
  return x;
}

bool ColumnSpaceSolver::contains(FpVector b) const {
  for (const Piv& piv : basis_) {
    uint64_t f = b[piv.lead];
    if (!f) continue;
    for (std::size_t i = 0; i < height_; ++i)
      if (piv.col[i]) b[i] = fp::sub(b[i], fp::mul(f, piv.col[i], p_), p_);
  }
  return std::all_of(b.begin(), b.end(), [](uint64_t v) { return v == 0; });
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::usage: return "USAGE";
    case errc::parameter_mismatch: return "PARAMETER_MISMATCH";
    case errc::order_out_of_range: return "ORDER_OUT_OF_RANGE";
    case errc::truncation_range: return "TRUNCATION_RANGE";
    case errc::not_a_residue: return "NOT_A_RESIDUE";
    case errc::not_a_unit: return "NOT_A_UNIT";
    case errc::precision_too_low: return "PRECISION_TOO_LOW";
    case errc::not_fundamental: return "NOT_FUNDAMENTAL";
    case errc::not_split: return "NOT_SPLIT";
    case errc::not_principal: return "NOT_PRINCIPAL";
    case errc::precondition_p_divides_h: return "PRECONDITION_P_DIVIDES_H";
    case errc::no_order_p_class: return "NO_ORDER_P_CLASS";
    case errc::not_cyclic: return "NOT_CYCLIC";
    case errc::p_divides_delta: return "P_DIVIDES_DELTA";
    case errc::structure_mismatch: return "STRUCTURE_MISMATCH";
    case errc::not_a_cocycle: return "NOT_A_COCYCLE";
    case errc::not_cocycle_compatible: return "NOT_COCYCLE_COMPATIBLE";
    case errc::block_mismatch: return "BLOCK_MISMATCH";
    case errc::hypothesis_failed: return "HYPOTHESIS_FAILED";
    case errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case errc::degree_cap_exceeded: return "DEGREE_CAP_EXCEEDED";
    case errc::malformed_certificate: return "MALFORMED_CERTIFICATE";
    case errc::norm_mismatch: return "NORM_MISMATCH";
    case errc::valuation_fail: return "VALUATION_FAIL";
    case errc::index_divisor: return "INDEX_DIVISOR";
    case errc::cannot_factor: return "CANNOT_FACTOR";
    case errc::internal_inconsistency: return "INTERNAL_INCONSISTENCY";
  }
  return "UNKNOWN";
}

int errc_exit_code(errc c) {
  switch (c) {
    case errc::usage:
    case errc::parameter_mismatch:
    case errc::order_out_of_range:
    case errc::truncation_range:
      return 1;
    case errc::budget_exceeded:
    case errc::degree_cap_exceeded:
      return 3;
    case errc::malformed_certificate:
    case errc::norm_mismatch:
    case errc::valuation_fail:
    case errc::index_divisor:
    case errc::cannot_factor:
      return 4;
    case errc::internal_inconsistency:
      return 5;
    default:
      return 2;
  }
}

} // namespace iwm
