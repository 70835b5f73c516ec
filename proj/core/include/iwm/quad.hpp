#ifndef IWM_QUAD_HPP
#define IWM_QUAD_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwm/error.hpp"
#include "iwm/padic.hpp"

namespace iwm {

bool is_fundamental_discriminant(const mpz_class& D);

// Imaginary quadratic field of fundamental discriminant D < 0.
struct QuadField {
  mpz_class disc;
  int w;  // number of roots of unity: 6 for D=-3, 4 for D=-4, else 2

  explicit QuadField(const mpz_class& D);
};

// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
  mpz_class a, b, c;

  mpz_class disc() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  QuadForm reduced() const;
  bool operator==(const QuadForm& o) const = default;
};

// The integral ideal [a, (b+sqrt(D))/2], b^2 ≡ D (mod 4a).
struct QuadIdeal {
  mpz_class a;
  mpz_class b;
};

// (x + y sqrt(D))/den with den in {1,2}. den=2 needs x ≡ y (mod 2) when
// D ≡ 1 (mod 4), and x even when D ≡ 0 (mod 4).
class QuadElement {
 public:
  QuadElement() = default;
  QuadElement(mpz_class D, mpz_class x, mpz_class y, mpz_class den);
  static QuadElement from_int(const mpz_class& D, const mpz_class& n) {
    return QuadElement(D, n, 0, 1);
  }
  // From coordinates u + v*omega on the integral basis (1, omega).
  static QuadElement from_omega(const mpz_class& D, const mpz_class& u, const mpz_class& v);

  const mpz_class& D() const { return D_; }
  const mpz_class& x() const { return x_; }
  const mpz_class& y() const { return y_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  mpz_class norm() const;   // (x^2 - D y^2) / den^2, exact
  mpz_class trace_num_over_den() const { return 2 * x_ / den_; }
  QuadElement conj() const;
  QuadElement operator+(const QuadElement& o) const;
  QuadElement operator-(const QuadElement& o) const;
  QuadElement operator*(const QuadElement& o) const;
  QuadElement operator-() const;
  QuadElement pow(unsigned long e) const;
  bool operator==(const QuadElement& o) const;

  // Coordinates on the integral basis (1, omega).
  std::pair<mpz_class, mpz_class> omega_coords() const;

  std::string str() const;

 private:
  void normalize();
  mpz_class D_ = -3, x_ = 0, y_ = 0, den_ = 1;
};

// Integral ideal as an HNF lattice [a, 0; t, s] on the basis (1, omega):
// generated by a and t + s*omega over Z. Norm = a*s.
struct IdealHNF {
  mpz_class D;
  mpz_class a, t, s;

  static IdealHNF one(const mpz_class& D) { return IdealHNF{D, 1, 0, 1}; }
  static IdealHNF from_ab(const mpz_class& D, const QuadIdeal& I);
  QuadIdeal to_ab() const;  // requires s == 1

  mpz_class norm() const { return a * s; }
  bool contains(const QuadElement& e) const;
  IdealHNF mul(const IdealHNF& o) const;
  IdealHNF pow(unsigned long e) const;
  IdealHNF primitive_part() const;
};

enum class SplitType { split, inert, ramified };
const char* split_type_name(SplitType t);

struct GoldReport {
  mpz_class disc;
  long p = 3;
  mpz_class h_K;
  SplitType split_type = SplitType::split;
  QuadElement alpha;
  PadicInt log_val;
  bool lambda_ge_2 = false;
  int s_count = 2;
  bool experimental = false;

  GoldReport() : log_val(3, 1, 0) {}
};

// Complete set of reduced positive definite forms of discriminant D; its
// cardinality is h_K. NOT_FUNDAMENTAL if D fails the discriminant test.
std::vector<QuadForm> reduced_forms(const mpz_class& D);

// Dirichlet class number formula h = (w/(2|D|)) |sum chi_D(k) k|, exact.
// Independent of the form enumeration. Requires fundamental D < -4.
mpz_class class_number_dirichlet(const mpz_class& D);

SplitType split_type(const mpz_class& D, long p);

// The pair (P0, P0~) of primes above a split p, with the smallest
// nonnegative b such that b^2 ≡ D (mod 4p).
std::pair<QuadIdeal, QuadIdeal> prime_above(const mpz_class& D, long p);

struct GeneratorOptions {
  mpz_class norm_budget = mpz_class("1000000000000");  // 10^12
};

// Generator alpha of I with N(alpha) = expected_norm, found by enumerating
// the norm form and testing membership. Normalized to y >= 0, then x > 0.
QuadElement ideal_generator(const mpz_class& D, const IdealHNF& I, const mpz_class& expected_norm,
                            const GeneratorOptions& opt = {});

// Generator of P0^h (principal when h = h_K).
QuadElement ideal_pow_generator(const mpz_class& D, const QuadIdeal& P0, unsigned long h,
                                const GeneratorOptions& opt = {});

// p-adic embedding: substitutes sqrt(D) by a Hensel root. which_root = 0
// takes hensel_sqrt's branch, 1 its companion p^N - t.
PadicInt embed(const QuadElement& elem, long p, int prec, int which_root);

// Gold's lambda >= 2 decision for split p not dividing h_K.
GoldReport gold_test(const mpz_class& D, long p, int prec, const GeneratorOptions& opt = {});

// Derived local criterion for inert/ramified p with cyclic nontrivial
// Cl(K)[p^infty]: log_p(N(alpha)) ≡ 0 mod p^2 for alpha generating I^p.
// EXPERIMENTAL: the local-norm reduction is a derived criterion awaiting
// independent validation.
GoldReport nonsplit_lambda2_test(const mpz_class& D, long p, int prec,
                                 const GeneratorOptions& opt = {});

// Form class-group helpers (Gauss composition through the ideal lattice).
QuadForm principal_form(const mpz_class& D);
QuadForm compose(const QuadForm& f, const QuadForm& g);
unsigned long form_order(const QuadForm& f, unsigned long h_bound);
IdealHNF form_to_ideal(const QuadForm& f);

} // namespace iwm

#endif
