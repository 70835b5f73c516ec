#include "iwm/cohomology.hpp"

namespace iwm {

Cochain1 d0(const FpModule& M, const FpVector& m) {
  require(m.size() == M.dim(), errc::parameter_mismatch, "d0 input dimension");
  int n = M.group().order();
  std::size_t d = M.dim();
  Cochain1 out(n * d, 0);
  for (int g = 0; g < n; ++g) {
    FpVector gm = M.apply(g, m);
    for (std::size_t k = 0; k < d; ++k) out[g * d + k] = fp::sub(gm[k], m[k], M.p());
  }
  return out;
}

Cochain2 d1(const FpModule& M, const Cochain1& c) {
  int n = M.group().order();
  std::size_t d = M.dim();
  require(c.size() == (std::size_t)n * d, errc::parameter_mismatch, "d1 input size");
  Cochain2 out((std::size_t)n * n * d, 0);
  uint64_t p = M.p();
  for (int g = 0; g < n; ++g) {
    const FpMatrix& A = M.act(g);
    for (int h = 0; h < n; ++h) {
      int gh = M.group().mul(g, h);
      std::size_t base = ((std::size_t)g * n + h) * d;
      for (std::size_t i = 0; i < d; ++i) {
        uint64_t acc = 0;
        const uint64_t* row = A.row(i);
        for (std::size_t j = 0; j < d; ++j)
          if (row[j]) acc = fp::add(acc, fp::mul(row[j], c[h * d + j], p), p);
        acc = fp::sub(acc, c[(std::size_t)gh * d + i], p);
        acc = fp::add(acc, c[(std::size_t)g * d + i], p);
        out[base + i] = acc;
      }
    }
  }
  return out;
}

FpVector d2(const FpModule& M, const Cochain2& z) {
  int n = M.group().order();
  std::size_t d = M.dim();
  require(z.size() == (std::size_t)n * n * d, errc::parameter_mismatch, "d2 input size");
  FpVector out((std::size_t)n * n * n * d, 0);
  uint64_t p = M.p();
  auto at = [&](int a, int b) { return ((std::size_t)a * n + b) * d; };
  for (int g = 0; g < n; ++g) {
    const FpMatrix& A = M.act(g);
    for (int h = 0; h < n; ++h) {
      int gh = M.group().mul(g, h);
      for (int k = 0; k < n; ++k) {
        int hk = M.group().mul(h, k);
        std::size_t base = (((std::size_t)g * n + h) * n + k) * d;
        for (std::size_t i = 0; i < d; ++i) {
          uint64_t acc = 0;
          const uint64_t* row = A.row(i);
          for (std::size_t j = 0; j < d; ++j)
            if (row[j]) acc = fp::add(acc, fp::mul(row[j], z[at(h, k) + j], p), p);
          acc = fp::sub(acc, z[at(gh, k) + i], p);
          acc = fp::add(acc, z[at(g, hk) + i], p);
          acc = fp::sub(acc, z[at(g, h) + i], p);
          out[base + i] = acc;
        }
      }
    }
  }
  return out;
}

bool is_cocycle1(const FpModule& M, const Cochain1& c) {
  Cochain2 dc = d1(M, c);
  return std::all_of(dc.begin(), dc.end(), [](uint64_t v) { return v == 0; });
}

bool is_cocycle2(const FpModule& M, const Cochain2& z) {
  FpVector dz = d2(M, z);
  return std::all_of(dz.begin(), dz.end(), [](uint64_t v) { return v == 0; });
}

CohomologyContext::CohomologyContext(const FpModule& M, CohomologyBudget budget)
    : M_(&M), budget_(budget) {}

void CohomologyContext::build_z1() {
  if (z1_) return;
  int n = group().order();
  std::size_t d = M_->dim();
  std::size_t c2 = (std::size_t)n * n * d;
  require(c2 <= budget_.max_c2_size, errc::budget_exceeded, "|G|^2 dim exceeds budget");
  std::size_t cols = (std::size_t)n * d;
  RowEchelon ech(M_->p(), cols);
  uint64_t p = M_->p();
  // cocycle constraints: for each (g,h,i): (A_g c(h))_i - c(gh)_i + c(g)_i = 0
  FpVector row(cols);
  for (int g = 0; g < n; ++g) {
    const FpMatrix& A = M_->act(g);
    for (int h = 0; h < n; ++h) {
      int gh = group().mul(g, h);
      for (std::size_t i = 0; i < d; ++i) {
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t j = 0; j < d; ++j)
          if (A.at(i, j)) row[h * d + j] = fp::add(row[h * d + j], A.at(i, j), p);
        row[(std::size_t)gh * d + i] = fp::sub(row[(std::size_t)gh * d + i], 1, p);
        row[(std::size_t)g * d + i] = fp::add(row[(std::size_t)g * d + i], 1, p);
        ech.add_row(row);
      }
    }
  }
  z1_ = ech.kernel();
}

void CohomologyContext::build_b1() {
  if (b1_ech_) return;
  std::size_t d = M_->dim();
  b1_ech_.emplace(M_->p(), (std::size_t)group().order() * d);
  for (std::size_t k = 0; k < d; ++k) {
    FpVector m(d, 0);
    m[k] = 1;
    b1_ech_->add_row(d0(*M_, m));
  }
}

const std::vector<Cochain1>& CohomologyContext::z1_basis() {
  build_z1();
  return *z1_;
}

std::size_t CohomologyContext::b1_rank() {
  build_b1();
  return b1_ech_->rank();
}

std::size_t CohomologyContext::h1_dim() { return z1_basis().size() - b1_rank(); }

const std::vector<Cochain1>& CohomologyContext::h1_basis() {
  if (h1_) return *h1_;
  build_z1();
  build_b1();
  RowEchelon acc = *b1_ech_;
  std::vector<Cochain1> reps;
  for (const auto& z : *z1_)
    if (acc.add_row(z)) reps.push_back(z);
  h1_ = std::move(reps);
  return *h1_;
}

bool CohomologyContext::is_coboundary1(const Cochain1& c) {
  build_b1();
  return b1_ech_->contains(c);
}

void CohomologyContext::build_b2() {
  if (b2_) return;
  int n = group().order();
  std::size_t d = M_->dim();
  std::size_t c2 = (std::size_t)n * n * d;
  require(c2 <= budget_.max_c2_size, errc::budget_exceeded, "|G|^2 dim exceeds budget");
  b2_.emplace(M_->p(), c2);
  FpVector e((std::size_t)n * d, 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    e[k] = 1;
    b2_->add_column(d1(*M_, e));
    e[k] = 0;
  }
}

void CohomologyContext::build_z2() {
  if (z2_) return;
  int n = group().order();
  std::size_t d = M_->dim();
  std::size_t cols = (std::size_t)n * n * d;
  require(cols <= budget_.max_c2_size, errc::budget_exceeded, "|G|^2 dim exceeds budget");
  require((std::size_t)n * n * n * d <= budget_.max_d2_rows, errc::budget_exceeded,
          "|G|^3 dim exceeds the d2 streaming budget");
  RowEchelon ech(M_->p(), cols);
  uint64_t p = M_->p();
  auto at = [&](int a, int b) { return ((std::size_t)a * n + b) * d; };
  FpVector row(cols);
  for (int g = 0; g < n; ++g) {
    const FpMatrix& A = M_->act(g);
    for (int h = 0; h < n; ++h) {
      int gh = group().mul(g, h);
      for (int k = 0; k < n; ++k) {
        int hk = group().mul(h, k);
        for (std::size_t i = 0; i < d; ++i) {
          std::fill(row.begin(), row.end(), 0);
          for (std::size_t j = 0; j < d; ++j)
            if (A.at(i, j)) row[at(h, k) + j] = fp::add(row[at(h, k) + j], A.at(i, j), p);
          row[at(gh, k) + i] = fp::sub(row[at(gh, k) + i], 1, p);
          row[at(g, hk) + i] = fp::add(row[at(g, hk) + i], 1, p);
          row[at(g, h) + i] = fp::sub(row[at(g, h) + i], 1, p);
          ech.add_row(row);
        }
      }
    }
  }
  z2_ = ech.kernel();
}

std::size_t CohomologyContext::z2_dim() {
  build_z2();
  return z2_->size();
}

const std::vector<Cochain2>& CohomologyContext::z2_basis() {
  build_z2();
  return *z2_;
}

std::size_t CohomologyContext::b2_rank() {
  build_b2();
  return b2_->rank();
}

std::size_t CohomologyContext::h2_dim() { return z2_dim() - b2_rank(); }

const std::vector<Cochain2>& CohomologyContext::h2_basis() {
  if (h2_) return *h2_;
  build_z2();
  build_b2();
  int n = group().order();
  std::size_t d = M_->dim();
  RowEchelon acc(M_->p(), (std::size_t)n * n * d);
  // seed with B^2 (spanned by d1 of the C^1 standard basis)
  FpVector e((std::size_t)n * d, 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    e[k] = 1;
    acc.add_row(d1(*M_, e));
    e[k] = 0;
  }
  std::vector<Cochain2> reps;
  for (const auto& z : *z2_)
    if (acc.add_row(z)) reps.push_back(z);
  h2_ = std::move(reps);
  return *h2_;
}

bool CohomologyContext::is_coboundary2(const Cochain2& z) {
  build_b2();
  return b2_->contains(z);
}

bool CohomologyContext::same_class2(const Cochain2& a, const Cochain2& b) {
  require(a.size() == b.size(), errc::parameter_mismatch, "cochain sizes differ");
  Cochain2 diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = fp::sub(a[i], b[i], M_->p());
  return is_coboundary2(diff);
}

std::optional<Cochain1> CohomologyContext::coboundary_preimage(const Cochain2& z) {
  build_b2();
  return b2_->solve(z);
}

CohBasis h1(const FpModule& M, CohomologyBudget budget) {
  CohomologyContext ctx(M, budget);
  auto reps = ctx.h1_basis();
  return CohBasis{reps.size(), reps};
}

CohBasis h2(const FpModule& M, CohomologyBudget budget) {
  CohomologyContext ctx(M, budget);
  auto reps = ctx.h2_basis();
  return CohBasis{reps.size(), reps};
}

Cochain2 cup(const FpModule& M1, const Cochain1& a, const FpModule& M2, const Cochain1& b,
             const std::vector<FpMatrix>& pairing) {
  require(&M1.group() == &M2.group(), errc::parameter_mismatch, "cup over different groups");
  require(M1.p() == M2.p(), errc::parameter_mismatch, "cup over different primes");
  int n = M1.group().order();
  std::size_t d1v = M1.dim(), d2v = M2.dim(), d3 = pairing.size();
  uint64_t p = M1.p();
  Cochain2 out((std::size_t)n * n * d3, 0);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      FpVector gb(d2v, 0);
      const FpMatrix& A = M2.act(g);
      for (std::size_t i = 0; i < d2v; ++i) {
        uint64_t acc = 0;
        for (std::size_t j = 0; j < d2v; ++j)
          if (A.at(i, j)) acc = fp::add(acc, fp::mul(A.at(i, j), b[(std::size_t)h * d2v + j], p), p);
        gb[i] = acc;
      }
      std::size_t base = ((std::size_t)g * n + h) * d3;
      for (std::size_t k = 0; k < d3; ++k) {
        uint64_t acc = 0;
        for (std::size_t i = 0; i < d1v; ++i)
          for (std::size_t j = 0; j < d2v; ++j)
            if (pairing[k].at(i, j))
              acc = fp::add(acc,
                            fp::mul(pairing[k].at(i, j),
                                    fp::mul(a[(std::size_t)g * d1v + i], gb[j], p), p),
                            p);
        out[base + k] = acc;
      }
    }
  }
  return out;
}

Cochain2 cup_scalar(const FpVector& a, const FpModule& M2, const Cochain1& b) {
  int n = M2.group().order();
  std::size_t d = M2.dim();
  require(a.size() == (std::size_t)n, errc::parameter_mismatch, "scalar cochain size");
  uint64_t p = M2.p();
  Cochain2 out((std::size_t)n * n * d, 0);
  for (int g = 0; g < n; ++g) {
    if (a[g] == 0) continue;
    const FpMatrix& A = M2.act(g);
    for (int h = 0; h < n; ++h) {
      std::size_t base = ((std::size_t)g * n + h) * d;
      for (std::size_t i = 0; i < d; ++i) {
        uint64_t acc = 0;
        for (std::size_t j = 0; j < d; ++j)
          if (A.at(i, j)) acc = fp::add(acc, fp::mul(A.at(i, j), b[(std::size_t)h * d + j], p), p);
        out[base + i] = fp::mul(a[g], acc, p);
      }
    }
  }
  return out;
}

} // namespace iwm
