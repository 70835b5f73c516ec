#include <algorithm>
#include <random>

#include "doctest.h"
#include "iwm/quad.hpp"

using namespace iwm;

TEST_CASE("fundamental discriminant recognition") {
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-7));
  CHECK(is_fundamental_discriminant(-8));
  CHECK(is_fundamental_discriminant(-11));
  CHECK_FALSE(is_fundamental_discriminant(-9));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK_FALSE(is_fundamental_discriminant(-5));
  CHECK_FALSE(is_fundamental_discriminant(5));
  CHECK(QuadField(-3).w == 6);
  CHECK(QuadField(-4).w == 4);
  CHECK(QuadField(-23).w == 2);
}

TEST_CASE("reduced forms pinned examples") {
  auto f3 = reduced_forms(-3);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0] == QuadForm{1, 1, 1});

  auto f11 = reduced_forms(-11);
  REQUIRE(f11.size() == 1);
  CHECK(f11[0] == QuadForm{1, 1, 3});

  auto f23 = reduced_forms(-23);
  REQUIRE(f23.size() == 3);
  CHECK(std::count(f23.begin(), f23.end(), QuadForm{1, 1, 6}) == 1);
  CHECK(std::count(f23.begin(), f23.end(), QuadForm{2, 1, 3}) == 1);
  CHECK(std::count(f23.begin(), f23.end(), QuadForm{2, -1, 3}) == 1);

  CHECK_THROWS_WITH_AS(reduced_forms(-12), doctest::Contains("NOT_FUNDAMENTAL"), error);
}

TEST_CASE("Dirichlet class number pinned examples") {
  CHECK(class_number_dirichlet(-23) == 3);
  CHECK(class_number_dirichlet(-11) == 1);
  CHECK(class_number_dirichlet(-163) == 1);
  CHECK_THROWS_AS(class_number_dirichlet(-4), error);
}

TEST_CASE("dual class-number oracles agree on every fundamental D in (-500, -4)") {
  int cases = 0;
  for (long d = -5; d > -500; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    ++cases;
    CHECK(mpz_class((long)reduced_forms(d).size()) == class_number_dirichlet(d));
  }
  CHECK(cases > 140);
}

TEST_CASE("split type pinned examples") {
  CHECK(split_type(-11, 3) == SplitType::split);
  CHECK(split_type(-3, 3) == SplitType::ramified);
  CHECK(split_type(-7, 5) == SplitType::inert);
}

TEST_CASE("prime_above pinned examples") {
  auto [p0, p0t] = prime_above(-11, 3);
  CHECK(p0.a == 3);
  CHECK(p0.b == 1);
  CHECK(p0t.b == 5);  // -1 mod 6

  auto [q0, q0t] = prime_above(-23, 3);
  CHECK(q0.b == 1);

  CHECK_THROWS_WITH_AS(prime_above(-7, 5), doctest::Contains("NOT_SPLIT"), error);
}

TEST_CASE("QuadElement arithmetic and norms") {
  QuadElement a(-11, 1, 1, 2);  // (1+sqrt(-11))/2
  CHECK(a.norm() == 3);
  CHECK(a.conj().norm() == 3);
  CHECK((a * a.conj()).is_rational());
  CHECK((a * a.conj()).x() == 3);
  QuadElement s(-8, 2, 1, 2);  // 1 + sqrt(-2), via the even-x den-2 form
  CHECK(s.norm() == 3);
  // omega coordinates round-trip
  auto [u, v] = s.omega_coords();
  CHECK(QuadElement::from_omega(-8, u, v) == s);
}

TEST_CASE("ideal HNF engine: products, powers, membership") {
  auto [p0, p0t] = prime_above(-11, 3);
  IdealHNF I = IdealHNF::from_ab(-11, p0);
  CHECK(I.norm() == 3);
  IdealHNF I2 = I.mul(I);
  CHECK(I2.norm() == 9);
  IdealHNF J = I.mul(IdealHNF::from_ab(-11, p0t));
  CHECK(J.norm() == 9);  // (3) as a lattice: 3 O_K
  CHECK(J.primitive_part().norm() == 1);
  QuadElement alpha(-11, 1, 1, 2);
  CHECK(I.contains(alpha));
  CHECK_FALSE(IdealHNF::from_ab(-11, p0t).contains(alpha));
}

TEST_CASE("ideal_pow_generator pinned examples") {
  auto [p0, p0t] = prime_above(-11, 3);
  QuadElement a = ideal_pow_generator(-11, p0, 1);
  CHECK(a == QuadElement(-11, 1, 1, 2));
  CHECK(a.norm() == 3);

  auto [q0, q0t] = prime_above(-4, 5);
  QuadElement b = ideal_pow_generator(-4, q0, 1);
  CHECK(b.norm() == 5);
  CHECK(IdealHNF::from_ab(-4, q0).contains(b));
  CHECK(b.y() >= 0);

  GeneratorOptions tight;
  tight.norm_budget = 100;
  CHECK_THROWS_WITH_AS(ideal_pow_generator(-11, p0, 9, tight),
                       doctest::Contains("BUDGET_EXCEEDED"), error);
}

TEST_CASE("generator norm equals p^h across split pairs") {
  for (long d = -5; d > -200; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    for (long p : {3L, 5L}) {
      if (split_type(d, p) != SplitType::split) continue;
      unsigned long h = reduced_forms(d).size();
      if (mpz_class((long)h) % p == 0) continue;
      auto [p0, p0t] = prime_above(d, p);
      QuadElement a = ideal_pow_generator(d, p0, h);
      CHECK(a.norm() == pow_int(mpz_class(p), h));
      CHECK(IdealHNF::from_ab(d, p0).pow(h).contains(a));
    }
  }
}

TEST_CASE("lattice-reduction generator matches brute-force enumeration on small norms") {
  // independent oracle: enumerate x^2 - D y^2 = den^2 N directly and apply
  // the same normalization
  auto enumerate_gen = [](const mpz_class& D, const IdealHNF& I,
                          const mpz_class& N) -> std::optional<QuadElement> {
    std::vector<QuadElement> cands;
    mpz_class absD = -D;
    mpz_class vmax = sqrt(4 * N / absD) + 1;
    for (mpz_class v = -vmax; v <= vmax; ++v) {
      if (((D % 4) + 4) % 4 == 1) {
        mpz_class rhs = 4 * N - absD * v * v;
        if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
        mpz_class X = sqrt(rhs);
        for (int s = 0; s < 2; ++s) {
          mpz_class Xs = s ? -X : X;
          if (s && X == 0) continue;
          if (((Xs - v) % 2 + 2) % 2 != 0) continue;
          QuadElement e = QuadElement::from_omega(D, (Xs - v) / 2, v);
          if (e.norm() == N && I.contains(e)) cands.push_back(e);
        }
      } else {
        mpz_class rhs = N - (absD / 4) * v * v;
        if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
        mpz_class u = sqrt(rhs);
        for (int s = 0; s < 2; ++s) {
          mpz_class us = s ? -u : u;
          if (s && u == 0) continue;
          QuadElement e = QuadElement::from_omega(D, us, v);
          if (e.norm() == N && I.contains(e)) cands.push_back(e);
        }
      }
    }
    std::vector<QuadElement> keep;
    for (const auto& e : cands)
      if (e.y() > 0 || (e.y() == 0 && e.x() > 0)) keep.push_back(e);
    if (keep.empty()) return std::nullopt;
    std::sort(keep.begin(), keep.end(), [](const QuadElement& A, const QuadElement& B) {
      mpz_class l = A.y() * B.den(), r = B.y() * A.den();
      if (l != r) return l < r;
      return A.x() * B.den() < B.x() * A.den();
    });
    return keep.front();
  };

  int agreements = 0;
  for (long d = -3; d > -120; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    for (long p : {3L, 5L, 7L}) {
      if (split_type(d, p) != SplitType::split) continue;
      unsigned long h = reduced_forms(d).size();
      if (mpz_class((long)h) % p == 0) continue;
      auto [p0, p0t] = prime_above(d, p);
      IdealHNF I = IdealHNF::from_ab(d, p0).pow(h);
      mpz_class N = pow_int(mpz_class(p), h);
      auto brute = enumerate_gen(d, I, N);
      QuadElement fast = ideal_pow_generator(d, p0, h);
      REQUIRE(brute.has_value());
      CHECK(*brute == fast);
      ++agreements;
    }
  }
  CHECK(agreements >= 30);
}

TEST_CASE("gold_test survives a class number of 25 (norms near 7^25)") {
  // h(-479) = 25; the generator comes from exact lattice reduction, and the
  // two internal mod-p^2 criteria must agree along the way
  GeneratorOptions gen;
  gen.norm_budget = pow_int(mpz_class(10), 30);
  mpz_class h = class_number_dirichlet(-479);
  REQUIRE(h == 25);
  for (long p : {3L, 7L}) {
    if (split_type(-479, p) != SplitType::split) continue;
    GoldReport rep = gold_test(-479, p, 8, gen);
    CHECK(rep.h_K == 25);
    CHECK(rep.alpha.norm() == pow_int(mpz_class(p), 25));
  }
}

TEST_CASE("embed pinned examples and conjugation identities") {
  CHECK(embed(QuadElement::from_int(-11, 1), 3, 4, 0).value() == 1);
  CHECK(embed(QuadElement::from_int(-11, 1), 3, 4, 1).value() == 1);
  // sqrt(D) itself maps to the chosen root
  PadicInt t = hensel_sqrt(-11, 3, 4);
  CHECK(embed(QuadElement(-11, 0, 1, 1), 3, 4, 0).value() == t.value());
  CHECK(embed(QuadElement(-11, 0, 1, 1), 3, 4, 1).value() == t.modulus() - t.value());

  QuadElement alpha(-11, 1, 1, 2);
  CHECK(embed(alpha, 3, 4, 0).value() == 16);  // (1+31)/2 mod 81

  // embed(e, root) + embed(conj e, root) = trace; embed(e, other) = embed(conj e, root)
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int i = 0; i < 25; ++i) {
    long x = d(rng), y = d(rng);
    QuadElement e(-11, x, y, 1);
    for (int root = 0; root < 2; ++root) {
      PadicInt s = embed(e, 3, 5, root) + embed(e.conj(), 3, 5, root);
      mpz_class tr = 2 * mpz_class(x);
      PadicInt want(3, 5, tr);
      CHECK(s.value() == want.value());
      CHECK(embed(e, 3, 5, 1 - root).value() == embed(e.conj(), 3, 5, root).value());
    }
  }
}

namespace {
// independent pure-integer oracle for the Gold criterion: alpha^(p-1) ≡ 1
// mod p^2 under the P0~ embedding, built only from a scan for b and the
// mod-p^2 root lift
bool gold_oracle(long D, long p) {
  long b = -1;
  for (long c = 0; c < 2 * p; ++c)
    if (((c * c - D) % (4 * p) + 4 * p) % (4 * p) == 0) {
      b = c;
      break;
    }
  REQUIRE(b >= 0);
  unsigned long h = reduced_forms(D).size();
  auto [p0, p0t] = prime_above(D, p);
  QuadElement alpha = ideal_pow_generator(D, p0, h);
  long p2 = p * p;
  long b2 = -1;
  for (long j = 0; j < p; ++j) {
    long cand = (b % p + p) % p + j * p;
    if (((cand * cand - D) % p2 + p2) % p2 == 0) {
      b2 = cand;
      break;
    }
  }
  REQUIRE(b2 >= 0);
  mpz_class den_inv;
  mpz_class den = alpha.den(), mod(p2);
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class a2 = (alpha.x() + alpha.y() * b2) * den_inv % p2;
  if (a2 < 0) a2 += p2;
  mpz_class pw;
  mpz_class e(p - 1);
  mpz_powm(pw.get_mpz_t(), a2.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return pw == 1;
}
} // namespace

TEST_CASE("gold_test pinned examples") {
  GoldReport r = gold_test(-11, 3, 6);
  CHECK(r.h_K == 1);
  CHECK(r.alpha == QuadElement(-11, 1, 1, 2));
  CHECK(r.s_count == 2);
  CHECK(r.lambda_ge_2 == gold_oracle(-11, 3));

  CHECK_THROWS_WITH_AS(gold_test(-23, 3, 6), doctest::Contains("PRECONDITION_P_DIVIDES_H"),
                       error);
  CHECK_THROWS_WITH_AS(gold_test(-7, 5, 6), doctest::Contains("NOT_SPLIT"), error);
}

TEST_CASE("gold verdict is unit- and root-labeling-independent") {
  for (long d : {-11L, -19L, -24L, -35L, -40L}) {
    for (long p : {3L, 5L, 7L}) {
      if (!is_fundamental_discriminant(d)) continue;
      if (split_type(d, p) != SplitType::split) continue;
      unsigned long h = reduced_forms(d).size();
      if (mpz_class((long)h) % p == 0) continue;
      auto [p0, p0t] = prime_above(d, p);
      QuadElement alpha = ideal_pow_generator(d, p0, h);
      // alpha is a unit at exactly one of the two completions
      int root = embed(alpha, p, 6, 0).is_unit() ? 0 : 1;
      bool va = gold_local_test(embed(alpha, p, 6, root));
      bool vna = gold_local_test(embed(-alpha, p, 6, root));
      CHECK(va == vna);  // (-1)^(p-1) = 1
      // swapping the root labeling and conjugating alpha lands at the same verdict
      bool vc = gold_local_test(embed(alpha.conj(), p, 6, 1 - root));
      CHECK(va == vc);
    }
  }
}

TEST_CASE("nonsplit lambda>=2 test") {
  // N(alpha) = 1 branch of the derived criterion: log(1) = 0
  CHECK(gold_local_test(PadicInt(3, 6, 1)) == true);

  // D=-31: 3 inert, h = 3, cyclic; runs with an order-3 ideal class
  GoldReport r = nonsplit_lambda2_test(-31, 3, 6);
  CHECK(r.split_type == SplitType::inert);
  CHECK(r.experimental);
  CHECK(r.s_count == 1);
  CHECK(r.h_K == 3);
  CHECK(r.alpha.norm() == 8);  // I has norm 2, alpha generates I^3

  // trivial Cl(K)[p]: 5 is inert in Q(sqrt(-7)) with h = 1
  CHECK_THROWS_WITH_AS(nonsplit_lambda2_test(-7, 5, 6), doctest::Contains("NO_ORDER_P_CLASS"),
                       error);
  // a split p is routed to the Gold test instead
  CHECK_THROWS_AS(nonsplit_lambda2_test(-11, 5, 6), error);

  // p | h with Cl cyclic of order p^2 still runs with an order-p class
  long found = 0;
  for (long d = -5; d > -5000 && !found; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    if (split_type(d, 3) == SplitType::split) continue;
    auto forms = reduced_forms(d);
    if (forms.size() != 9) continue;
    int tor = 0;
    for (const auto& f : forms) {
      QuadForm acc = principal_form(d);
      for (int i = 0; i < 3; ++i) acc = compose(acc, f);
      if (acc == principal_form(d)) ++tor;
    }
    if (tor != 3) continue;  // need cyclic Z/9
    found = d;
  }
  REQUIRE(found != 0);
  GoldReport r9 = nonsplit_lambda2_test(found, 3, 6);
  CHECK(r9.experimental);
}

TEST_CASE("form composition is a group law matching the class number") {
  for (long d : {-23L, -31L, -47L, -71L}) {
    auto forms = reduced_forms(d);
    QuadForm id = principal_form(d);
    // closure and inverses through composition
    for (const auto& f : forms) {
      QuadForm inv{f.a, -f.b, f.c};
      CHECK(compose(f, inv) == id.reduced());
      unsigned long o = form_order(f, forms.size());
      CHECK(forms.size() % o == 0);
    }
  }
}
