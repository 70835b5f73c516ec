#include "iwm/polyq.hpp"

#include <algorithm>

#include "iwm/fp_linalg.hpp"
#include "iwm/padic.hpp"

namespace iwm {

static mpz_class mod_pos(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zp_trim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int zp_deg(const ZPoly& a) {
  for (int i = (int)a.size() - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zp_trim(std::move(r));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zp_trim(std::move(r));
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return zp_trim(std::move(r));
}

ZPoly zp_mod_coeffs(const ZPoly& a, const mpz_class& m) {
  ZPoly r = a;
  for (auto& c : r) c = mod_pos(c, m);
  return zp_trim(std::move(r));
}

void zp_divmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
  int db = zp_deg(b);
  require(db >= 0 && b[db] == 1, errc::usage, "divisor must be monic");
  r = zp_mod_coeffs(a, m);
  q.assign(r.size() > (std::size_t)db ? r.size() - db : 0, 0);
  while (zp_deg(r) >= db) {
    int dr = zp_deg(r);
    mpz_class c = r[dr];
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] = mod_pos(r[dr - db + i] - c * b[i], m);
    r = zp_trim(std::move(r));
  }
  q = zp_trim(std::move(q));
}

ZPoly zp_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const mpz_class& q) {
  ZPoly prod = zp_mod_coeffs(zp_mul(a, b), q);
  ZPoly quo, rem;
  zp_divmod_monic(prod, f, q, quo, rem);
  return rem;
}

ZPoly zp_powmod(const ZPoly& a, const mpz_class& e, const ZPoly& f, const mpz_class& q) {
  ZPoly r{1};
  ZPoly base = a;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = zp_mulmod(r, base, f, q);
    base = zp_mulmod(base, base, f, q);
    k >>= 1;
  }
  return r;
}

static ZPoly zp_make_monic_fq(ZPoly a, const mpz_class& q) {
  int d = zp_deg(a);
  if (d < 0) return a;
  mpz_class inv;
  mpz_class lead = mod_pos(a[d], q);
  mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), q.get_mpz_t());
  for (auto& c : a) c = mod_pos(c * inv, q);
  return zp_trim(std::move(a));
}

ZPoly zp_gcd_fq(ZPoly a, ZPoly b, const mpz_class& q) {
  a = zp_mod_coeffs(a, q);
  b = zp_mod_coeffs(b, q);
  while (zp_deg(b) >= 0) {
    ZPoly bm = zp_make_monic_fq(b, q);
    ZPoly quo, rem;
    zp_divmod_monic(a, bm, q, quo, rem);
    a = bm;
    b = rem;
  }
  return zp_make_monic_fq(a, q);
}

static ZPoly zp_derivative(const ZPoly& a, const mpz_class& q) {
  ZPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mod_pos(a[i] * (long)i, q));
  return zp_trim(std::move(r));
}

// equal-degree splitting, Cantor-Zassenhaus for odd q
static void edf(const ZPoly& f, int d, const mpz_class& q, std::vector<ZPoly>& out,
                gmp_randstate_t rng) {
  int n = zp_deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
  mpz_class e = (qd - 1) / 2;
  while (true) {
    ZPoly a((std::size_t)n, 0);
    for (auto& c : a) {
      mpz_class r;
      mpz_urandomm(r.get_mpz_t(), rng, q.get_mpz_t());
      c = r;
    }
    a = zp_trim(std::move(a));
    if (zp_deg(a) <= 0) continue;
    ZPoly g = zp_gcd_fq(f, a, q);
    if (zp_deg(g) > 0 && zp_deg(g) < n) {
      ZPoly quo, rem;
      zp_divmod_monic(f, g, q, quo, rem);
      edf(g, d, q, out, rng);
      edf(zp_make_monic_fq(quo, q), d, q, out, rng);
      return;
    }
    ZPoly b = zp_powmod(a, e, f, q);
    b = zp_sub(b, ZPoly{1});
    g = zp_gcd_fq(f, b, q);
    if (zp_deg(g) > 0 && zp_deg(g) < n) {
      ZPoly quo, rem;
      zp_divmod_monic(f, g, q, quo, rem);
      edf(g, d, q, out, rng);
      edf(zp_make_monic_fq(quo, q), d, q, out, rng);
      return;
    }
  }
}

// Deterministic Berlekamp splitting for small q; input squarefree monic.
static void berlekamp(const ZPoly& f, const mpz_class& q, std::vector<ZPoly>& out) {
  int n = zp_deg(f);
  if (n <= 1) {
    if (n == 1) out.push_back(f);
    return;
  }
  uint64_t qq = mpz_get_ui(q.get_mpz_t());
  // columns: coefficients of x^(i q) mod f; kernel of (Frob - I) is the
  // Berlekamp subalgebra
  FpMatrix M(qq, (std::size_t)n, (std::size_t)n);
  for (int i = 0; i < n; ++i) {
    ZPoly xiq = zp_powmod(ZPoly{0, 1}, q * i, f, q);
    for (int j = 0; j < n; ++j) {
      uint64_t v = (j < (int)xiq.size()) ? mpz_get_ui(mpz_class(xiq[j] % q).get_mpz_t()) : 0;
      if (i == j) v = fp::sub(v, 1, qq);
      M.at((std::size_t)j, (std::size_t)i) = v % qq;
    }
  }
  auto ker = kernel_basis(M);
  if (ker.size() <= 1) {
    out.push_back(f);
    return;
  }
  // pick a non-constant kernel element
  ZPoly v;
  for (const auto& kv : ker) {
    bool nonconst = false;
    for (std::size_t i = 1; i < kv.size(); ++i)
      if (kv[i]) nonconst = true;
    if (nonconst) {
      for (auto x : kv) v.push_back(mpz_class((unsigned long)x));
      v = zp_trim(std::move(v));
      break;
    }
  }
  require(zp_deg(v) >= 1, errc::internal_inconsistency, "Berlekamp kernel has no splitter");
  bool split_happened = false;
  ZPoly rest = f;
  for (mpz_class c = 0; c < q && zp_deg(rest) >= 1; ++c) {
    ZPoly shifted = zp_sub(v, ZPoly{c});
    ZPoly g = zp_gcd_fq(rest, shifted, q);
    if (zp_deg(g) >= 1 && zp_deg(g) < zp_deg(f)) split_happened = true;
    if (zp_deg(g) >= 1) {
      berlekamp(g, q, out);
      ZPoly quo, rem;
      zp_divmod_monic(rest, g, q, quo, rem);
      rest = zp_make_monic_fq(quo, q);
    }
  }
  if (zp_deg(rest) >= 1) berlekamp(rest, q, out);
  require(split_happened || zp_deg(rest) < 1, errc::internal_inconsistency,
          "Berlekamp failed to split");
}

std::vector<FqFactor> factor_mod_q(const ZPoly& f_in, const mpz_class& q) {
  require(q >= 2, errc::usage, "q must be a prime");
  require(mpz_probab_prime_p(q.get_mpz_t(), 30) != 0, errc::usage, "q must be a prime");
  ZPoly f = zp_make_monic_fq(zp_mod_coeffs(f_in, q), q);
  require(zp_deg(f) >= 1, errc::usage, "constant polynomial");
  bool small_q = (q <= 1000);

  gmp_randstate_t rng;
  gmp_randinit_default(rng);
  gmp_randseed_ui(rng, 0xC0FFEE);

  std::vector<FqFactor> out;
  // squarefree part handling: peel gcd with derivative
  ZPoly work = f;
  std::vector<ZPoly> squarefree_parts;
  while (zp_deg(work) >= 1) {
    ZPoly der = zp_derivative(work, q);
    if (zp_deg(der) < 0) {
      // perfect q-th power: x^q -> x substitution
      ZPoly red;
      for (std::size_t i = 0; i < work.size(); i += mpz_get_ui(q.get_mpz_t()))
        red.push_back(work[i]);
      work = zp_trim(std::move(red));
      continue;
    }
    ZPoly g = zp_gcd_fq(work, der, q);
    ZPoly quo, rem;
    zp_divmod_monic(work, g, q, quo, rem);
    squarefree_parts.push_back(zp_make_monic_fq(quo, q));  // squarefree
    work = g;
  }
  // split each squarefree part into irreducibles: deterministic Berlekamp
  // for small q, distinct-degree + Cantor-Zassenhaus otherwise
  std::vector<ZPoly> irreducibles;
  for (const ZPoly& sf : squarefree_parts) {
    if (small_q) {
      berlekamp(sf, q, irreducibles);
      continue;
    }
    ZPoly rest = sf;
    ZPoly xqd = zp_powmod(ZPoly{0, 1}, q, rest, q);
    int d = 1;
    while (zp_deg(rest) >= 1) {
      if (2 * d > zp_deg(rest)) {
        irreducibles.push_back(rest);
        break;
      }
      ZPoly diff = zp_sub(xqd, ZPoly{0, 1});
      ZPoly g = zp_gcd_fq(rest, diff, q);
      if (zp_deg(g) > 0) {
        edf(g, d, q, irreducibles, rng);
        ZPoly quo, rem;
        zp_divmod_monic(rest, g, q, quo, rem);
        rest = zp_make_monic_fq(quo, q);
        if (zp_deg(rest) < 1) break;
      }
      ++d;
      xqd = zp_powmod(xqd, q, rest, q);
    }
  }
  // dedupe
  std::sort(irreducibles.begin(), irreducibles.end(), [](const ZPoly& A, const ZPoly& B) {
    if (A.size() != B.size()) return A.size() < B.size();
    for (std::size_t i = A.size(); i-- > 0;)
      if (A[i] != B[i]) return A[i] < B[i];
    return false;
  });
  irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()), irreducibles.end());
  for (const ZPoly& g : irreducibles) {
    int mult = 0;
    ZPoly rest = f;
    while (true) {
      ZPoly quo, rem;
      zp_divmod_monic(rest, g, q, quo, rem);
      if (zp_deg(rem) >= 0) break;
      ++mult;
      rest = quo;
    }
    require(mult >= 1, errc::internal_inconsistency, "factor does not divide");
    out.push_back(FqFactor{g, mult});
  }
  // verify the product
  ZPoly prod{1};
  for (const auto& fac : out)
    for (int i = 0; i < fac.multiplicity; ++i) prod = zp_mod_coeffs(zp_mul(prod, fac.poly), q);
  require(zp_trim(zp_sub(prod, f)).empty() ||
              zp_deg(zp_mod_coeffs(zp_sub(prod, f), q)) < 0,
          errc::internal_inconsistency, "factorization does not multiply back");
  gmp_randclear(rng);
  return out;
}

bool dedekind_q_maximal(const ZPoly& f, const mpz_class& q) {
  auto facs = factor_mod_q(f, q);
  ZPoly gstar{1}, hstar{1};
  for (const auto& fac : facs) gstar = zp_mod_coeffs(zp_mul(gstar, fac.poly), q);
  for (const auto& fac : facs)
    for (int i = 1; i < fac.multiplicity; ++i) hstar = zp_mod_coeffs(zp_mul(hstar, fac.poly), q);
  // F = (g* h* - f)/q over Z
  ZPoly gh = zp_mul(gstar, hstar);
  ZPoly diff = zp_sub(gh, f);
  ZPoly F;
  for (const auto& c : diff) {
    require(c % q == 0, errc::internal_inconsistency, "Dedekind numerator not divisible by q");
    F.push_back(c / q);
  }
  F = zp_mod_coeffs(zp_trim(std::move(F)), q);
  ZPoly g1 = zp_gcd_fq(F, gstar, q);
  ZPoly g2 = zp_gcd_fq(g1, hstar, q);
  return zp_deg(g2) == 0;
}

std::vector<ZPoly> hensel_lift_blocks(const ZPoly& f, const std::vector<ZPoly>& blocks,
                                      const mpz_class& q, int m) {
  require(!blocks.empty(), errc::usage, "no blocks");
  if (blocks.size() == 1) {
    return {zp_mod_coeffs(f, pow_int(q, (unsigned long)m))};
  }
  // split into two halves A = blocks[0], B = prod rest, lift, recurse
  // (quadratic Hensel on the pair)
  ZPoly A = blocks[0];
  ZPoly B{1};
  for (std::size_t i = 1; i < blocks.size(); ++i) B = zp_mod_coeffs(zp_mul(B, blocks[i]), q);
  // Bezout: S A + T B = 1 mod q
  ZPoly S, T;
  {
    // extended Euclid over F_q
    ZPoly r0 = zp_mod_coeffs(A, q), r1 = zp_mod_coeffs(B, q);
    ZPoly s0{1}, s1{}, t0{}, t1{1};
    while (zp_deg(r1) >= 0) {
      ZPoly r1m = zp_make_monic_fq(r1, q);
      mpz_class lead = r1[zp_deg(r1)];
      mpz_class lead_inv;
      mpz_invert(lead_inv.get_mpz_t(), lead.get_mpz_t(), q.get_mpz_t());
      ZPoly quo, rem;
      zp_divmod_monic(r0, r1m, q, quo, rem);
      // r0 = quo' * r1 + rem with quo' = quo * lead_inv
      ZPoly quop;
      for (const auto& c : quo) quop.push_back(mod_pos(c * lead_inv, q));
      quop = zp_trim(std::move(quop));
      ZPoly ns = zp_mod_coeffs(zp_sub(s0, zp_mul(quop, s1)), q);
      ZPoly nt = zp_mod_coeffs(zp_sub(t0, zp_mul(quop, t1)), q);
      r0 = r1;
      r1 = rem;
      s0 = s1;
      s1 = ns;
      t0 = t1;
      t1 = nt;
    }
    // r0 = gcd (a unit since blocks are coprime); normalize to 1
    require(zp_deg(r0) == 0, errc::internal_inconsistency, "Hensel blocks not coprime");
    mpz_class c = r0[0], cinv;
    mpz_invert(cinv.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
    for (auto& x : s0) x = mod_pos(x * cinv, q);
    for (auto& x : t0) x = mod_pos(x * cinv, q);
    S = zp_trim(std::move(s0));
    T = zp_trim(std::move(t0));
  }
  // iterate: modulus doubles each round
  ZPoly Acur = zp_mod_coeffs(A, q), Bcur = zp_mod_coeffs(B, q);
  ZPoly Scur = S, Tcur = T;
  int have = 1;
  mpz_class target_mod = pow_int(q, (unsigned long)m);
  while (have < m) {
    int nxt = std::min(2 * have, m);
    mpz_class nmod = pow_int(q, (unsigned long)nxt);
    ZPoly e = zp_mod_coeffs(zp_sub(f, zp_mul(Acur, Bcur)), nmod);
    // A' = A + (T e mod A): monic, degree preserved
    ZPoly quo, rem;
    ZPoly Te = zp_mod_coeffs(zp_mul(Tcur, e), nmod);
    zp_divmod_monic(Te, Acur, nmod, quo, rem);
    ZPoly Anew = zp_mod_coeffs(zp_add(Acur, rem), nmod);
    // B' = f div A' (exact mod nmod once the lift holds)
    ZPoly Bnew, rem2;
    zp_divmod_monic(zp_mod_coeffs(f, nmod), Anew, nmod, Bnew, rem2);
    require(zp_deg(zp_mod_coeffs(rem2, nmod)) < 0, errc::internal_inconsistency,
            "Hensel step lost divisibility");
    // refresh Bezout: (S, T) <- (S, T) (1 + err) with err = 1 - S A' - T B'
    ZPoly err = zp_mod_coeffs(
        zp_sub(ZPoly{1}, zp_add(zp_mul(Scur, Anew), zp_mul(Tcur, Bnew))), nmod);
    ZPoly Snew = zp_mod_coeffs(zp_add(Scur, zp_mul(Scur, err)), nmod);
    ZPoly Tnew = zp_mod_coeffs(zp_add(Tcur, zp_mul(Tcur, err)), nmod);
    Acur = Anew;
    Bcur = Bnew;
    Scur = Snew;
    Tcur = Tnew;
    have = nxt;
  }
  // verify and recurse on B's blocks
  {
    ZPoly err = zp_mod_coeffs(zp_sub(f, zp_mul(Acur, Bcur)), target_mod);
    require(zp_deg(err) < 0, errc::internal_inconsistency, "Hensel lift failed");
  }
  std::vector<ZPoly> rest_blocks(blocks.begin() + 1, blocks.end());
  std::vector<ZPoly> rest = hensel_lift_blocks(Bcur, rest_blocks, q, m);
  std::vector<ZPoly> out{Acur};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

mpz_class zmat_det(std::vector<std::vector<mpz_class>> m) {
  std::size_t n = m.size();
  for (auto& row : m) require(row.size() == n, errc::usage, "determinant of non-square matrix");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::optional<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> A,
                                                     std::vector<mpq_class> b) {
  std::size_t rows = A.size();
  require(rows == b.size(), errc::usage, "rhs size");
  std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    mpq_class inv = 1 / A[r][c];
    for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      mpq_class f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  if (pivot_col.size() < cols) return std::nullopt;  // underdetermined
  std::vector<mpq_class> x(cols, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

long valuation_z(const mpz_class& n, const mpz_class& q) {
  require(n != 0, errc::usage, "valuation of zero");
  long v = 0;
  mpz_class t = n;
  while (t % q == 0) {
    t /= q;
    ++v;
  }
  return v;
}

std::vector<std::pair<mpz_class, long>> factor_integer(const mpz_class& n_in,
                                                       const std::vector<mpz_class>& hints,
                                                       unsigned long trial_bound) {
  mpz_class n = abs(n_in);
  require(n != 0, errc::usage, "factor of zero");
  std::vector<std::pair<mpz_class, long>> out;
  auto strip = [&](const mpz_class& q) {
    long e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e > 0) out.emplace_back(q, e);
  };
  for (const auto& q : hints) {
    require(mpz_probab_prime_p(q.get_mpz_t(), 30) != 0, errc::malformed_certificate,
            "prime_data entry " + q.get_str() + " is not prime");
    strip(q);
  }
  strip(mpz_class(2));
  for (mpz_class q = 3; q * q <= n && q <= trial_bound; q += 2) strip(q);
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0)
      out.emplace_back(n, 1);
    else
      fail(errc::cannot_factor,
           "composite cofactor " + n.get_str() + " beyond trial bound; supply prime_data");
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace iwm
