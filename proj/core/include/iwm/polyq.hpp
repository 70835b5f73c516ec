#ifndef IWM_POLYQ_HPP
#define IWM_POLYQ_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "iwm/error.hpp"

namespace iwm {

// Dense polynomials over Z (little-endian coefficients).
using ZPoly = std::vector<mpz_class>;

ZPoly zp_trim(ZPoly a);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_mod_coeffs(const ZPoly& a, const mpz_class& m);  // reduce into [0, m)
int zp_deg(const ZPoly& a);                               // -1 for zero

// division by a monic divisor, exact over any coefficient ring Z/m
void zp_divmod_monic(const ZPoly& a, const ZPoly& monic_b, const mpz_class& m, ZPoly& q, ZPoly& r);

// arithmetic mod (q, poly): coefficients mod q
ZPoly zp_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& monic_f, const mpz_class& q);
ZPoly zp_powmod(const ZPoly& a, const mpz_class& e, const ZPoly& monic_f, const mpz_class& q);

// gcd over the field F_q, monic output
ZPoly zp_gcd_fq(ZPoly a, ZPoly b, const mpz_class& q);

// Distinct factors of a squarefree-ish monic polynomial over F_q via
// Cantor-Zassenhaus (q an odd prime fitting in 62 bits). Input need not be
// squarefree: returns the distinct irreducible factors with multiplicities.
struct FqFactor {
  ZPoly poly;  // monic irreducible mod q
  int multiplicity;
};
std::vector<FqFactor> factor_mod_q(const ZPoly& f, const mpz_class& q);

// Dedekind maximality test for Z[x]/(f) at q. Returns false (non-maximal)
// when q divides the index [O_L : Z[gamma]].
bool dedekind_q_maximal(const ZPoly& f, const mpz_class& q);

// Hensel-lift a coprime factorization f ≡ prod blocks (mod q) to mod q^m.
std::vector<ZPoly> hensel_lift_blocks(const ZPoly& f, const std::vector<ZPoly>& blocks,
                                      const mpz_class& q, int m);

// Exact determinant over Z (Bareiss), used mod q^m via lifted entries.
mpz_class zmat_det(std::vector<std::vector<mpz_class>> m);

// Exact rational linear solve A x = b (A square or overdetermined consistent).
// Returns nullopt when inconsistent or underdetermined-pivot-deficient.
std::optional<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> A,
                                                     std::vector<mpq_class> b);

// p-adic valuation of a nonzero integer at q.
long valuation_z(const mpz_class& n, const mpz_class& q);

// Trial-division factorization of |n| with probable-prime cofactor handling.
// CANNOT_FACTOR when a composite cofactor beyond the trial bound remains and
// no hints cover it.
std::vector<std::pair<mpz_class, long>> factor_integer(const mpz_class& n,
                                                       const std::vector<mpz_class>& hints = {},
                                                       unsigned long trial_bound = 1000000);

} // namespace iwm

#endif
