#ifndef IWM_PADIC_HPP
#define IWM_PADIC_HPP

#include <gmpxx.h>

#include <string>

#include "iwm/error.hpp"

namespace iwm {

// A p-adic integer held to explicit finite precision: a canonical residue
// 0 <= value < p^prec. Precision is carried per value; mixed-precision
// arithmetic truncates to the shorter operand.
class PadicInt {
 public:
  PadicInt(long p, int prec, const mpz_class& value);
  static PadicInt from_int(long p, int prec, const mpz_class& v) { return PadicInt(p, prec, v); }

  long p() const { return p_; }
  int prec() const { return prec_; }
  const mpz_class& value() const { return v_; }
  const mpz_class& modulus() const { return mod_; }

  bool is_unit() const { return v_ % p_ != 0; }
  // p-adic valuation, capped at prec for the zero residue.
  int valuation() const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt pow(const mpz_class& e) const;
  PadicInt inverse() const;  // NOT_A_UNIT on non-units
  PadicInt with_prec(int prec) const;

  bool operator==(const PadicInt& o) const {
    return p_ == o.p_ && prec_ == o.prec_ && v_ == o.v_;
  }

  // Renders as "a mod p^N".
  std::string str() const;

 private:
  long p_;
  int prec_;
  mpz_class mod_;  // p^prec
  mpz_class v_;
};

// Square root of d in Z_p by Hensel lifting. Returns the root congruent to
// the smallest positive square root mod p; the companion root is p^N - t.
// NOT_A_RESIDUE when p | d or d is a quadratic non-residue mod p.
PadicInt hensel_sqrt(const mpz_class& d, long p, int prec);

// Iwasawa-normalized p-adic logarithm on units: log(u^(p-1))/(p-1), computed
// from the alternating series on the principal unit. Always ≡ 0 mod p.
PadicInt padic_log(const PadicInt& u);

// Teichmuller lift: the unique (p-1)-st root of unity congruent to a mod p,
// obtained by iterating x -> x^p to its fixed point.
PadicInt teichmuller(const PadicInt& a);

// Local criterion at a degree-p totally ramified extension of Q_p: true iff
// log_p(u) ≡ 0 mod p^2, equivalently u^(p-1) ≡ 1 mod p^2. Both criteria are
// evaluated and must agree. PRECISION_TOO_LOW when prec < 3.
bool gold_local_test(const PadicInt& alpha_embed);

mpz_class pow_int(const mpz_class& base, unsigned long e);

} // namespace iwm

#endif
