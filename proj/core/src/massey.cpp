#include "iwm/massey.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "iwm/bockstein.hpp"

namespace iwm {

UnipotentMatrix::UnipotentMatrix(uint64_t p, std::size_t size)
    : p_(p), size_(size), a_(size * size, 0) {}

uint64_t UnipotentMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j) return 1;
  if (i > j) return 0;
  return a_[i * size_ + j];
}

void UnipotentMatrix::set_upper(std::size_t i, std::size_t j, uint64_t v) {
  require(i < j && j < size_, errc::usage, "strictly upper entries only");
  a_[i * size_ + j] = v % p_;
}

UnipotentMatrix UnipotentMatrix::mul(const UnipotentMatrix& o) const {
  require(size_ == o.size_ && p_ == o.p_, errc::parameter_mismatch, "unipotent product shape");
  UnipotentMatrix r(p_, size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) {
      uint64_t acc = 0;
      for (std::size_t k = i; k <= j; ++k)
        acc = fp::add(acc, fp::mul(at(i, k), o.at(k, j), p_), p_);
      r.a_[i * size_ + j] = acc;
    }
  return r;
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  // forward substitution: find unipotent r with this * r = I
  UnipotentMatrix r(p_, size_);
  for (std::size_t j = 1; j < size_; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      uint64_t s = 0;
      for (std::size_t k = i + 1; k <= j; ++k)
        s = fp::add(s, fp::mul(at(i, k), r.at(k, j), p_), p_);
      r.a_[i * size_ + j] = fp::neg(s, p_);
    }
  }
  return r;
}

UnipotentMatrix UnipotentMatrix::commutator(const UnipotentMatrix& o) const {
  return mul(o).mul(inverse()).mul(o.inverse());
}

DefiningSystem::DefiningSystem(const FpModule& T, std::size_t N) : T_(&T), N_(N) {
  require(N >= 1, errc::usage, "need at least one character");
  int ng = T.group().order();
  scalars_.assign((N + 1) * (N + 1), FpVector());
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i + 1; j <= N; ++j)
      scalars_[(i - 1) * (N + 1) + (j - 1)].assign(ng, 0);
  if (N >= 2) column_.assign(N - 1, Cochain1((std::size_t)ng * T.dim(), 0));
}

FpVector& DefiningSystem::scalar_entry(std::size_t i, std::size_t j) {
  require(1 <= i && i < j && j <= N_, errc::usage, "scalar entries have 1 <= i < j <= N");
  return scalars_[(i - 1) * (N_ + 1) + (j - 1)];
}
const FpVector& DefiningSystem::scalar_entry(std::size_t i, std::size_t j) const {
  require(1 <= i && i < j && j <= N_, errc::usage, "scalar entries have 1 <= i < j <= N");
  return scalars_[(i - 1) * (N_ + 1) + (j - 1)];
}

Cochain1& DefiningSystem::column_entry(std::size_t i) {
  require(2 <= i && i <= N_, errc::usage, "column entries have 2 <= i <= N");
  return column_[i - 2];
}
const Cochain1& DefiningSystem::column_entry(std::size_t i) const {
  require(2 <= i && i <= N_, errc::usage, "column entries have 2 <= i <= N");
  return column_[i - 2];
}

bool DefiningSystem::is_valid() const {
  const FiniteGroup& G = T_->group();
  int ng = G.order();
  std::size_t d = T_->dim();
  uint64_t p = T_->p();
  for (int g1 = 0; g1 < ng; ++g1) {
    for (int g2 = 0; g2 < ng; ++g2) {
      int g12 = G.mul(g1, g2);
      // interior scalar law
      for (std::size_t i = 1; i <= N_; ++i) {
        for (std::size_t j = i + 1; j <= N_; ++j) {
          uint64_t want = scalar_entry(i, j)[g12];
          uint64_t have = fp::add(scalar_entry(i, j)[g1], scalar_entry(i, j)[g2], p);
          for (std::size_t k = i + 1; k < j; ++k)
            have = fp::add(have, fp::mul(scalar_entry(i, k)[g1], scalar_entry(k, j)[g2], p), p);
          if (want != have) return false;
        }
      }
      // last-column law (T-valued, with the g1-action)
      for (std::size_t i = 2; i <= N_; ++i) {
        const Cochain1& ci = column_entry(i);
        FpVector want(ci.begin() + (std::size_t)g12 * d, ci.begin() + ((std::size_t)g12 + 1) * d);
        FpVector have = T_->apply(g1, FpVector(ci.begin() + (std::size_t)g2 * d,
                                               ci.begin() + ((std::size_t)g2 + 1) * d));
        for (std::size_t t = 0; t < d; ++t)
          have[t] = fp::add(have[t], ci[(std::size_t)g1 * d + t], p);
        for (std::size_t k = i + 1; k <= N_; ++k) {
          uint64_t s = scalar_entry(i, k)[g1];
          if (!s) continue;
          const Cochain1& ck = column_entry(k);
          FpVector gv = T_->apply(g1, FpVector(ck.begin() + (std::size_t)g2 * d,
                                               ck.begin() + ((std::size_t)g2 + 1) * d));
          for (std::size_t t = 0; t < d; ++t)
            have[t] = fp::add(have[t], fp::mul(s, gv[t], p), p);
        }
        if (want != have) return false;
      }
    }
  }
  return true;
}

void DefiningSystem::require_valid(errc code) const {
  require(is_valid(), code, "twisted homomorphism law fails");
}

DefiningSystem proper_system(const FpModule& T, const CharacterChi& chi,
                             const std::vector<Cochain1>& psis) {
  require(&T.group() == &chi.group(), errc::parameter_mismatch, "chi and T over different groups");
  std::size_t n = psis.size();
  require(n >= 1, errc::usage, "need psi_0");
  std::size_t N = n + 1;
  require(N <= chi.modulus(), errc::order_out_of_range, "staircase exceeds p^l");
  const FiniteGroup& G = T.group();
  int ng = G.order();
  std::size_t d = T.dim();
  for (const auto& ps : psis)
    require(ps.size() == (std::size_t)ng * d, errc::parameter_mismatch, "psi size");
  DefiningSystem ds(T, N);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i + 1; j <= N; ++j) {
      FpVector& e = ds.scalar_entry(i, j);
      for (int g = 0; g < ng; ++g) e[g] = chi.binom(g, j - i);
    }
  // last column: row i gets psi_(N - i), i = 2..N; bottom row N has psi_0
  for (std::size_t i = 2; i <= N; ++i) ds.column_entry(i) = psis[N - i];
  ds.require_valid(errc::not_cocycle_compatible);
  ds.proper_chi = &chi;
  ds.proper_psis = psis;
  return ds;
}

MasseyResult massey_value(const DefiningSystem& ds) {
  ds.require_valid();
  const FpModule& T = ds.module();
  const FiniteGroup& G = ds.group();
  int ng = G.order();
  std::size_t d = T.dim();
  uint64_t p = T.p();
  Cochain2 value((std::size_t)ng * ng * d, 0);
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h) {
      std::size_t base = ((std::size_t)g * ng + h) * d;
      for (std::size_t j = 2; j <= ds.N(); ++j) {
        uint64_t s = ds.scalar_entry(1, j)[g];
        if (!s) continue;
        const Cochain1& cj = ds.column_entry(j);
        FpVector gv = T.apply(g, FpVector(cj.begin() + (std::size_t)h * d,
                                          cj.begin() + ((std::size_t)h + 1) * d));
        for (std::size_t t = 0; t < d; ++t)
          value[base + t] = fp::add(value[base + t], fp::mul(s, gv[t], p), p);
      }
    }
  require(is_cocycle2(T, value), errc::internal_inconsistency, "Massey value is not a 2-cocycle");
  MasseyResult res;
  res.value = value;
  CohomologyContext ctx(T);
  Cochain2 neg(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) neg[i] = fp::neg(value[i], p);
  auto pre = ctx.coboundary_preimage(neg);
  res.vanishes = pre.has_value();
  if (pre) res.witness = *pre;
  return res;
}

std::optional<Lift> lift_search(const DefiningSystem& ds) {
  MasseyResult mv = massey_value(ds);
  if (!mv.vanishes) return std::nullopt;
  const FpModule& T = ds.module();
  const FiniteGroup& G = ds.group();
  int ng = G.order();
  std::size_t d = T.dim();
  uint64_t p = T.p();
  const Cochain1& corner = *mv.witness;
  // verify the completed matrix map satisfies the twisted law on every pair,
  // corner entry included
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2) {
      int g12 = G.mul(g1, g2);
      FpVector want(corner.begin() + (std::size_t)g12 * d,
                    corner.begin() + ((std::size_t)g12 + 1) * d);
      FpVector have = T.apply(g1, FpVector(corner.begin() + (std::size_t)g2 * d,
                                           corner.begin() + ((std::size_t)g2 + 1) * d));
      for (std::size_t t = 0; t < d; ++t)
        have[t] = fp::add(have[t], corner[(std::size_t)g1 * d + t], p);
      for (std::size_t k = 2; k <= ds.N(); ++k) {
        uint64_t s = ds.scalar_entry(1, k)[g1];
        if (!s) continue;
        const Cochain1& ck = ds.column_entry(k);
        FpVector gv = T.apply(g1, FpVector(ck.begin() + (std::size_t)g2 * d,
                                           ck.begin() + ((std::size_t)g2 + 1) * d));
        for (std::size_t t = 0; t < d; ++t) have[t] = fp::add(have[t], fp::mul(s, gv[t], p), p);
      }
      require(want == have, errc::internal_inconsistency, "corner witness fails the twisted law");
    }
  Lift lift;
  lift.corner = corner;
  if (d == 1) {
    std::size_t sz = ds.msize();
    lift.images.reserve(ng);
    for (int g = 0; g < ng; ++g) {
      UnipotentMatrix m(p, sz);
      for (std::size_t i = 1; i <= ds.N(); ++i)
        for (std::size_t j = i + 1; j <= ds.N(); ++j)
          m.set_upper(i - 1, j - 1, ds.scalar_entry(i, j)[g]);
      for (std::size_t i = 2; i <= ds.N(); ++i)
        m.set_upper(i - 1, sz - 1, ds.column_entry(i)[g]);
      m.set_upper(0, sz - 1, corner[g]);
      lift.images.push_back(std::move(m));
    }
  }
  return lift;
}

DefiningSystem block_compose(const DefiningSystem& ds1, const DefiningSystem& ds2,
                             std::size_t n_top) {
  require(&ds1.module() == &ds2.module(), errc::parameter_mismatch, "systems over different modules");
  require(ds1.N() == ds2.N(), errc::block_mismatch, "sizes differ");
  std::size_t N = ds1.N();
  require(1 <= n_top && n_top < N + 1, errc::usage, "block split out of range");
  // A block: entries with j <= n_top; D block: entries with i > n_top
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i + 1; j <= N; ++j) {
      bool shared = (j <= n_top) || (i > n_top);
      if (shared)
        require(ds1.scalar_entry(i, j) == ds2.scalar_entry(i, j), errc::block_mismatch,
                "shared scalar blocks differ");
    }
  for (std::size_t i = std::max<std::size_t>(2, n_top + 1); i <= N; ++i)
    require(ds1.column_entry(i) == ds2.column_entry(i), errc::block_mismatch,
            "shared column blocks differ");

  DefiningSystem out = ds1;
  uint64_t p = ds1.module().p();
  for (std::size_t i = 1; i <= n_top; ++i) {
    for (std::size_t j = std::max(i + 1, n_top + 1); j <= N; ++j) {
      FpVector& e = out.scalar_entry(i, j);
      const FpVector& f = ds2.scalar_entry(i, j);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = fp::add(e[k], f[k], p);
    }
    if (i >= 2) {
      Cochain1& e = out.column_entry(i);
      const Cochain1& f = ds2.column_entry(i);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = fp::add(e[k], f[k], p);
    }
  }
  out.proper_chi = nullptr;
  out.proper_psis.clear();
  out.require_valid(errc::internal_inconsistency);
  return out;
}

DefiningSystem extend_proper(const DefiningSystem& ds, std::size_t m) {
  require(ds.proper_chi != nullptr, errc::usage, "extend_proper needs a proper system");
  if (m == 0) return ds;
  const FpModule& T = ds.module();
  int ng = T.group().order();
  std::vector<Cochain1> shifted(m, Cochain1((std::size_t)ng * T.dim(), 0));
  shifted.insert(shifted.end(), ds.proper_psis.begin(), ds.proper_psis.end());
  return proper_system(T, *ds.proper_chi, shifted);
}

MnGroup build_Mn(uint64_t p, std::size_t n, const MnOptions& opt) {
  std::size_t sz = n + 2;
  require(sz <= opt.max_matrix_size, errc::budget_exceeded, "matrix size cap");
  double order_est = 1;
  for (std::size_t i = 0; i < n + 2; ++i) order_est *= (double)p;
  require(order_est <= (double)opt.max_order, errc::budget_exceeded, "order cap");

  // s carries the superdiagonal EXCEPT the final slot, which belongs to the
  // corner column; t0 is that final slot alone.
  UnipotentMatrix s(p, sz);
  for (std::size_t i = 0; i + 2 < sz; ++i) s.set_upper(i, i + 1, 1);
  UnipotentMatrix t0(p, sz);
  t0.set_upper(sz - 2, sz - 1, 1);

  // closure under multiplication
  std::map<UnipotentMatrix, int> index;
  std::vector<UnipotentMatrix> elems;
  UnipotentMatrix id(p, sz);
  elems.push_back(id);
  index[id] = 0;
  std::vector<UnipotentMatrix> gens{s, t0};
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const auto& g : gens) {
      UnipotentMatrix x = elems[qi].mul(g);
      if (!index.count(x)) {
        require(elems.size() < opt.max_order, errc::budget_exceeded, "closure exceeds order cap");
        index[x] = (int)elems.size();
        elems.push_back(x);
      }
    }
  }
  int order = (int)elems.size();
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      auto it = index.find(elems[a].mul(elems[b]));
      require(it != index.end(), errc::internal_inconsistency, "closure not closed");
      table[a][b] = it->second;
    }
  int si = index.at(s), ti0 = index.at(t0);
  FiniteGroup G(std::move(table), {si, ti0});
  // t_(k+1) = [s, t_k]
  std::vector<int> t{ti0};
  UnipotentMatrix tk = t0;
  for (std::size_t k = 0; k < n; ++k) {
    tk = s.commutator(tk);
    t.push_back(index.at(tk));
  }
  return MnGroup{std::move(G), si, std::move(t), std::move(elems)};
}

std::string defining_system_to_json(const DefiningSystem& ds) {
  nlohmann::json j;
  j["N"] = ds.N();
  nlohmann::json sc = nlohmann::json::object();
  for (std::size_t i = 1; i <= ds.N(); ++i)
    for (std::size_t jj = i + 1; jj <= ds.N(); ++jj)
      sc[std::to_string(i) + "," + std::to_string(jj)] = ds.scalar_entry(i, jj);
  j["scalars"] = sc;
  nlohmann::json col = nlohmann::json::object();
  for (std::size_t i = 2; i <= ds.N(); ++i) col[std::to_string(i)] = ds.column_entry(i);
  j["column"] = col;
  return j.dump();
}

DefiningSystem defining_system_from_json(const FpModule& T, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::size_t N = j["N"].get<std::size_t>();
  DefiningSystem ds(T, N);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t jj = i + 1; jj <= N; ++jj)
      ds.scalar_entry(i, jj) =
          j["scalars"][std::to_string(i) + "," + std::to_string(jj)].get<FpVector>();
  for (std::size_t i = 2; i <= N; ++i)
    ds.column_entry(i) = j["column"][std::to_string(i)].get<Cochain1>();
  ds.require_valid();
  return ds;
}

} // namespace iwm
