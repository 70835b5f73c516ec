#include <random>

#include "doctest.h"
#include "iwm/cyclo.hpp"

using namespace iwm;

namespace {

K1Element random_k1(const std::shared_ptr<const PeriodField>& pf, const mpz_class& D,
                    std::mt19937& rng, int spread = 2) {
  std::uniform_int_distribution<long> d(-spread, spread);
  std::vector<QuadElement> coeffs;
  for (int i = 0; i < pf->dim(); ++i) coeffs.emplace_back(D, d(rng), d(rng), 1);
  return K1Element(pf, D, coeffs);
}

} // namespace

TEST_CASE("period field at p = 3: the classical cubic field of conductor 9") {
  auto pf = PeriodField::build(3);
  CHECK(pf->primitive_root() == 2);
  // min poly of eta_0 = zeta_9 + zeta_9^-1 is x^3 - 3x + 1
  REQUIRE(pf->min_poly().size() == 4);
  CHECK(pf->min_poly()[0] == 1);
  CHECK(pf->min_poly()[1] == -3);
  CHECK(pf->min_poly()[2] == 0);  // the periods sum to mu(9) = 0
  CHECK(pf->min_poly()[3] == 1);

  // sigma is the cyclic shift on period indices
  CHECK(pf->sigma_perm() == std::vector<int>{1, 2, 0});

  // eta_0 + eta_1 + eta_2 = 0 in coordinates
  std::vector<mpz_class> sum(3, 0);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) sum[i] += pf->period_coords(k)[i];
  for (int i = 0; i < 3; ++i) CHECK(sum[i] == 0);

  // eta_1 (the cyclotomic S-unit) = 2 - eta_0: coordinates (2, -1, 0)
  CHECK(pf->eta_coords() == std::vector<mpz_class>{2, -1, 0});

  CHECK_THROWS_WITH_AS(PeriodField::build(17), doctest::Contains("DEGREE_CAP_EXCEEDED"), error);
}

TEST_CASE("period fields for p = 5, 7: exact invariants") {
  for (long p : {5L, 7L}) {
    auto pf = PeriodField::build(p);
    REQUIRE((long)pf->min_poly().size() == p + 1);
    CHECK(pf->min_poly()[p] == 1);
    CHECK(pf->min_poly()[p - 1] == 0);  // trace of the periods is 0
    // sigma permutes periods cyclically: sigma^p = 1 is asserted at build
    for (int i = 0; i < p; ++i) CHECK(pf->sigma_perm()[i] == (i + 1) % p);
  }
}

TEST_CASE("K1 arithmetic: sigma fixes K, has order p, commutes with products") {
  std::mt19937 rng(13);
  for (long p : {3L, 5L}) {
    auto pf = PeriodField::build(p);
    mpz_class D = -11;
    K1Element one = K1Element::one(pf, D);
    CHECK(sigma_apply(one) == one);

    QuadElement c(D, 3, 1, 2);
    K1Element cc = K1Element::constant(pf, D, c);
    CHECK(sigma_apply(cc) == cc);

    for (int i = 0; i < 12; ++i) {
      K1Element x = random_k1(pf, D, rng);
      K1Element y = random_k1(pf, D, rng);
      // sigma^p = identity
      K1Element z = x;
      for (long k = 0; k < p; ++k) z = sigma_apply(z);
      CHECK(z == x);
      // ring homomorphism
      CHECK(sigma_apply(x * y) == sigma_apply(x) * sigma_apply(y));
      CHECK(sigma_apply(x + y) == sigma_apply(x) + sigma_apply(y));
    }

    // sigma fixes exactly the constants: kernel of (sigma - 1) on the basis
    // grid has dimension 1 over Q_1-coordinates
    int fixed_basis_vectors = 0;
    for (int i = 0; i < pf->dim(); ++i) {
      K1Element e(pf, D);
      e.coeff(i) = QuadElement::from_int(D, 1);
      if (sigma_apply(e) == e) ++fixed_basis_vectors;
    }
    CHECK(fixed_basis_vectors == 1);  // only the constant slot
  }
}

TEST_CASE("relative norm: constants, eta_0 at p = 3, multiplicativity") {
  std::mt19937 rng(19);
  auto pf = PeriodField::build(3);
  mpz_class D = -11;

  QuadElement c(D, 1, 1, 2);
  K1Element cc = K1Element::constant(pf, D, c);
  CHECK(relative_norm(cc) == c.pow(3));

  // N(eta_0) = -min_poly(0) = -1
  K1Element eta0(pf, D);
  eta0.coeff(1) = QuadElement::from_int(D, 1);
  CHECK(relative_norm(eta0) == QuadElement::from_int(D, -1));

  int done = 0;
  while (done < 100) {
    K1Element x = random_k1(pf, D, rng, 2);
    K1Element y = random_k1(pf, D, rng, 2);
    if (x.is_zero() || y.is_zero()) continue;
    ++done;
    CHECK(relative_norm(x * y) == relative_norm(x) * relative_norm(y));
  }
}

TEST_CASE("eta_element: S-unit with absolute norm p") {
  for (long p : {3L, 5L, 7L}) {
    auto pf = PeriodField::build(p);
    mpz_class D = -11;
    K1Element eta = eta_element(pf, D);
    QuadElement nrm = relative_norm(eta);
    CHECK(nrm.is_rational());
    CHECK(nrm == QuadElement::from_int(D, p));  // N_{Q1/Q}(eta_1) = p
  }
}

TEST_CASE("a_product: constants collapse, Lemma identities hold exactly") {
  std::mt19937 rng(23);
  for (long p : {3L, 5L}) {
    auto pf = PeriodField::build(p);
    mpz_class D = (p == 3) ? mpz_class(-11) : mpz_class(-19);

    // beta constant: A_1 = c^(p(p-1)/2)
    QuadElement c(D, 1, 1, 2);
    K1Element cc = K1Element::constant(pf, D, c);
    K1Element a1c = a_product(cc, 1);
    CHECK(a1c == K1Element::constant(pf, D, c.pow((unsigned long)(p * (p - 1) / 2))));

    CHECK_THROWS_WITH_AS(a_product(cc, (unsigned long)p), doctest::Contains("ORDER_OUT_OF_RANGE"),
                         error);

    auto binom = [](unsigned long n, unsigned long k) {
      mpz_class r;
      mpz_bin_uiui(r.get_mpz_t(), n, k);
      return r.get_ui();
    };

    int done = 0;
    while (done < 50) {
      K1Element beta = random_k1(pf, D, rng, 1);
      if (beta.is_zero()) continue;
      ++done;
      K1Element b = K1Element::constant(pf, D, relative_norm(beta));
      // sigma(A_1) b = A_1 beta^p
      K1Element A1 = a_product(beta, 1);
      CHECK(sigma_apply(A1) * b == A1 * beta.pow((unsigned long)p));
      // sigma(A_j) sigma(A_(j-1)) = A_j beta^C(p, j), j >= 2
      K1Element prev = A1;
      for (unsigned long j = 2; j < (unsigned long)p; ++j) {
        K1Element Aj = a_product(beta, j);
        CHECK(sigma_apply(Aj) * sigma_apply(prev) == Aj * beta.pow(binom((unsigned long)p, j)));
        prev = Aj;
      }
    }
  }
}

TEST_CASE("group ring identities for all 1 <= n < p <= 13") {
  CHECK(group_ring_identity(3, 1));  // (sigma-1)(sigma+2sigma^2) + N = 3
  CHECK(group_ring_identity(5, 2));
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (long n = 1; n < p; ++n) CHECK(group_ring_identity(p, n));
  CHECK_THROWS_WITH_AS(group_ring_identity(3, 3), doctest::Contains("ORDER_OUT_OF_RANGE"), error);
  CHECK_THROWS_WITH_AS(group_ring_identity(3, 0), doctest::Contains("ORDER_OUT_OF_RANGE"), error);
}
