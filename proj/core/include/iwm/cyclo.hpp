#ifndef IWM_CYCLO_HPP
#define IWM_CYCLO_HPP

#include <memory>

#include "iwm/polyq.hpp"
#include "iwm/quad.hpp"

namespace iwm {

// Exact arithmetic in Q_1, the degree-p subfield of Q(mu_{p^2}), through
// Gaussian periods eta_i = sum_{h in H} zeta^{g^i h} (H the order-(p-1)
// subgroup of (Z/p^2)^*, g the smallest primitive root mod p^2).
//
// The raw periods satisfy sum eta_i = mu(p^2) = 0, so they span only the
// trace-zero hyperplane. Coordinates therefore live on the integral basis
//   B = (1, eta_0, ..., eta_{p-2});
// sigma (zeta -> zeta^g) permutes the periods cyclically and acts on B by an
// integer matrix kept alongside the permutation.
class PeriodField {
 public:
  static std::shared_ptr<const PeriodField> build(long p);
  static constexpr long degree_cap = 13;

  long p() const { return p_; }
  long primitive_root() const { return g_; }
  int dim() const { return (int)p_; }  // dim over Q

  const ZPoly& min_poly() const { return min_poly_; }           // of eta_0, degree p
  const std::vector<int>& sigma_perm() const { return sigma_perm_; }  // i -> i+1 mod p
  // sigma on B-coordinates (integer matrix, columns = images of basis)
  const std::vector<std::vector<mpz_class>>& sigma_matrix() const { return sigma_mat_; }
  // B_i * B_j in B-coordinates
  const std::vector<mpz_class>& struct_constant(int i, int j) const {
    return mult_table_[i * dim() + j];
  }
  // eta_1 = N_{Q(mu_{p^2})/Q_1}(1 - zeta_{p^2}) in B-coordinates
  const std::vector<mpz_class>& eta_coords() const { return eta_coords_; }
  // raw period eta_k in B-coordinates
  const std::vector<mpz_class>& period_coords(int k) const { return period_coords_[k]; }

 private:
  PeriodField() = default;
  long p_ = 3, g_ = 2;
  ZPoly min_poly_;
  std::vector<int> sigma_perm_;
  std::vector<std::vector<mpz_class>> sigma_mat_;
  std::vector<std::vector<mpz_class>> mult_table_;
  std::vector<mpz_class> eta_coords_;
  std::vector<std::vector<mpz_class>> period_coords_;
};

// An element of K_1 = K * Q_1: coordinates on B with coefficients in K.
class K1Element {
 public:
  K1Element(std::shared_ptr<const PeriodField> pf, mpz_class D);
  K1Element(std::shared_ptr<const PeriodField> pf, mpz_class D, std::vector<QuadElement> coeffs);

  static K1Element constant(std::shared_ptr<const PeriodField> pf, const mpz_class& D,
                            const QuadElement& c);
  static K1Element one(std::shared_ptr<const PeriodField> pf, const mpz_class& D);

  const std::shared_ptr<const PeriodField>& field() const { return pf_; }
  const mpz_class& D() const { return D_; }
  const std::vector<QuadElement>& coeffs() const { return coeffs_; }
  QuadElement& coeff(int i) { return coeffs_[i]; }
  const QuadElement& coeff(int i) const { return coeffs_[i]; }

  bool is_zero() const;
  bool is_constant() const;  // all non-1 coordinates zero

  K1Element operator+(const K1Element& o) const;
  K1Element operator-(const K1Element& o) const;
  K1Element operator*(const K1Element& o) const;
  K1Element pow(unsigned long e) const;
  bool operator==(const K1Element& o) const;

  std::string str() const;

 private:
  std::shared_ptr<const PeriodField> pf_;
  mpz_class D_;
  std::vector<QuadElement> coeffs_;  // length p, index 0 is the constant slot
};

// sigma extended to K_1 (fixes the K-coefficients).
K1Element sigma_apply(const K1Element& e);

// N_{K_1/K}(e) = prod_{i<p} sigma^i(e); INTERNAL_INCONSISTENCY if the product
// does not land in K.
QuadElement relative_norm(const K1Element& e);

// eta_1 as a K_1 element over the field of discriminant D.
K1Element eta_element(std::shared_ptr<const PeriodField> pf, const mpz_class& D);

// A_j = prod_{i=0}^{p-1} sigma^i(beta^C(i,j)), 1 <= j < p.
K1Element a_product(const K1Element& beta, unsigned long j);

// (sigma-1)(sum C(i,n) sigma^i) + sigma (sum C(i,n-1) sigma^i) = C(p,n) in
// Z[sigma]/(sigma^p - 1); for n = 1 the leading sigma is dropped, matching
// the first displayed identity. Exact expansion.
bool group_ring_identity(long p, long n);

} // namespace iwm

#endif
