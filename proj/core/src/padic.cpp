#include "iwm/padic.hpp"

namespace iwm {

mpz_class pow_int(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

static mpz_class mod_pos(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

PadicInt::PadicInt(long p, int prec, const mpz_class& value) : p_(p), prec_(prec) {
  require(p >= 3 && p % 2 == 1, errc::usage, "p must be an odd prime");
  require(prec >= 1, errc::usage, "precision must be >= 1");
  mod_ = pow_int(mpz_class(p), (unsigned long)prec);
  v_ = mod_pos(value, mod_);
}

int PadicInt::valuation() const {
  if (v_ == 0) return prec_;
  int k = 0;
  mpz_class t = v_;
  while (t % p_ == 0) {
    t /= p_;
    ++k;
  }
  return k;
}

static void check_same_p(const PadicInt& a, const PadicInt& b) {
  require(a.p() == b.p(), errc::parameter_mismatch, "operands live over different primes");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_same_p(*this, o);
  int n = std::min(prec_, o.prec_);
  return PadicInt(p_, n, v_ + o.v_);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_same_p(*this, o);
  int n = std::min(prec_, o.prec_);
  return PadicInt(p_, n, v_ - o.v_);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_same_p(*this, o);
  int n = std::min(prec_, o.prec_);
  return PadicInt(p_, n, v_ * o.v_);
}

PadicInt PadicInt::pow(const mpz_class& e) const {
  require(e >= 0, errc::usage, "negative exponent: use inverse()");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), mod_.get_mpz_t());
  return PadicInt(p_, prec_, r);
}

PadicInt PadicInt::inverse() const {
  require(is_unit(), errc::not_a_unit, "inverse of a non-unit");
  mpz_class r;
  int ok = mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), mod_.get_mpz_t());
  require(ok != 0, errc::internal_inconsistency, "unit failed to invert");
  return PadicInt(p_, prec_, r);
}

PadicInt PadicInt::with_prec(int prec) const { return PadicInt(p_, prec, v_); }

std::string PadicInt::str() const {
  return v_.get_str() + " mod " + mod_.get_str();
}

PadicInt hensel_sqrt(const mpz_class& d, long p, int prec) {
  mpz_class pm(p);
  mpz_class d0 = mod_pos(d, pm);
  require(d0 != 0, errc::not_a_residue, "p divides d");
  // smallest positive square root mod p by scan (p is small here)
  long r0 = -1;
  for (long t = 1; t < p; ++t) {
    if (mod_pos(mpz_class(t) * t - d0, pm) == 0) {
      r0 = t;
      break;
    }
  }
  require(r0 >= 0, errc::not_a_residue, d.get_str() + " is not a quadratic residue mod " + std::to_string(p));

  // Newton lift: r <- r - (r^2 - d) / (2r), doubling precision each step.
  mpz_class r(r0);
  int k = 1;
  while (k < prec) {
    k = std::min(2 * k, prec);
    mpz_class mod = pow_int(pm, (unsigned long)k);
    mpz_class num = mod_pos(r * r - d, mod);
    mpz_class den = mod_pos(2 * r, mod);
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    r = mod_pos(r - num * den_inv, mod);
  }
  PadicInt root(p, prec, r);
  // keep the branch congruent to the smaller of the two square roots mod p
  if (mod_pos(root.value(), pm) != r0) root = PadicInt(p, prec, root.modulus() - root.value());
  require(mod_pos(root.value() * root.value() - d, root.modulus()) == 0, errc::internal_inconsistency,
          "Hensel lift failed");
  return root;
}

// log(1+z) for z ≡ 0 mod p, from the exact integer representative of z.
// Powers are taken exactly in Z before the division by k, so every one of
// the N reported digits is correct.
static mpz_class log_principal(const mpz_class& z, long p, int prec, const mpz_class& mod) {
  mpz_class sum = 0;
  mpz_class zk = 1;
  for (long k = 1;; ++k) {
    long vk = 0;
    long kk = k;
    while (kk % p == 0) {
      kk /= p;
      ++vk;
    }
    if (k - vk >= prec) break;
    zk *= z;  // exact z^k
    mpz_class term = zk / pow_int(mpz_class(p), (unsigned long)vk);
    mpz_class kinv;
    mpz_class kq(kk);
    mpz_invert(kinv.get_mpz_t(), kq.get_mpz_t(), mod.get_mpz_t());
    term = mod_pos(term * kinv, mod);
    if (k % 2 == 0) term = mod_pos(-term, mod);
    sum = mod_pos(sum + term, mod);
  }
  return sum;
}

PadicInt padic_log(const PadicInt& u) {
  require(u.is_unit(), errc::not_a_unit, "log of a non-unit");
  long p = u.p();
  int n = u.prec();
  const mpz_class& mod = u.modulus();
  mpz_class u1;
  mpz_class e(p - 1);
  mpz_powm(u1.get_mpz_t(), u.value().get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  mpz_class z = mod_pos(u1 - 1, mod);
  mpz_class raw = log_principal(z, p, n, mod);
  mpz_class inv_pm1;
  mpz_class pm1(p - 1);
  mpz_invert(inv_pm1.get_mpz_t(), pm1.get_mpz_t(), mod.get_mpz_t());
  return PadicInt(p, n, raw * inv_pm1);
}

PadicInt teichmuller(const PadicInt& a) {
  require(a.is_unit(), errc::not_a_unit, "Teichmuller lift of a non-unit");
  mpz_class x = a.value();
  mpz_class pe(a.p());
  for (int i = 0; i < a.prec() + 1; ++i) {
    mpz_class nx;
    mpz_powm(nx.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t(), a.modulus().get_mpz_t());
    if (nx == x) break;
    x = nx;
  }
  return PadicInt(a.p(), a.prec(), x);
}

bool gold_local_test(const PadicInt& alpha_embed) {
  require(alpha_embed.is_unit(), errc::not_a_unit, "local test needs a unit");
  require(alpha_embed.prec() >= 3, errc::precision_too_low,
          "mod-p^2 verdict needs precision >= 3");
  long p = alpha_embed.p();
  mpz_class p2 = pow_int(mpz_class(p), 2);

  PadicInt lg = padic_log(alpha_embed);
  bool by_log = mod_pos(lg.value(), p2) == 0;

  mpz_class up;
  mpz_class e(p - 1);
  mpz_powm(up.get_mpz_t(), alpha_embed.value().get_mpz_t(), e.get_mpz_t(), p2.get_mpz_t());
  bool by_power = up == 1;

  require(by_log == by_power, errc::internal_inconsistency,
          "log and power criteria disagree");
  return by_log;
}

} // namespace iwm
