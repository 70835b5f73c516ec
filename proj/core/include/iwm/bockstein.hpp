#ifndef IWM_BOCKSTEIN_HPP
#define IWM_BOCKSTEIN_HPP

#include <gmpxx.h>

#include <optional>

#include "iwm/cohomology.hpp"

namespace iwm {

// The module Omega/I^n ⊗ T for Omega = F_p[x]/(x^(p^l)), x = sigma - 1,
// chi : G -> Z/p^l. Basis x^i ⊗ t_j, index i*dim(T)+j. The action is
//   g · (x^i ⊗ t) = sum_k C(chi(g), k) x^(i+k) ⊗ (g·t), truncated at x^n.
struct OmegaModule {
  const FpModule* T;
  const CharacterChi* chi;
  std::size_t n;
  FpModule mod;

  static OmegaModule build(const FpModule& T, const CharacterChi& chi, std::size_t n);

  std::size_t dimT() const { return T->dim(); }
  // x^k-coefficient block of a module vector
  FpVector coeff(const FpVector& v, std::size_t k) const;
  // embed a T-vector as x^k ⊗ t
  FpVector embed_at(const FpVector& t, std::size_t k) const;
};

// Splits a 1-cochain with Omega/I^n ⊗ T values into its T-valued layers
// psi_0, ..., psi_(n-1), and reassembles.
std::vector<Cochain1> omega_cochain_layers(const OmegaModule& W, const Cochain1& f);
Cochain1 omega_cochain_from_layers(const OmegaModule& W, const std::vector<Cochain1>& layers);

// Generalized Bockstein map by the connecting-map recipe: lift f to
// Omega/I^(n+1) ⊗ T by zero-filling x^n, apply d1, check the result lands in
// x^n ⊗ T, strip x^n. Returns a 2-cochain representing Psi^(n)(f) in H^2(G,T).
// Psi^(0) = 0 by convention. NOT_A_COCYCLE if f is not a cocycle.
Cochain2 bockstein_direct(const OmegaModule& W, const Cochain1& f);

// Theorem-side formula: sum_{i=1..n} C(chi, i) ∪ psi_(n-i) on cochains.
Cochain2 bockstein_formula(const FpModule& T, const CharacterChi& chi,
                           const std::vector<Cochain1>& psis);

// Smallest n in [1, n_max] with Psi^(n) != 0, or nullopt. When all previous
// levels vanish, only psi_0-classes are scanned (Theorem-reduce shortcut),
// falling back to the full cocycle basis if a lift is unavailable.
std::optional<std::size_t> min_nonvanishing_psi(const FpModule& T, const CharacterChi& chi,
                                                std::size_t n_max,
                                                CohomologyBudget budget = {});

// Property check: with Psi^(i) = 0 for i < n (verified, else
// HYPOTHESIS_FAILED), Psi^(n) agrees on `trials` random pairs of cocycles
// sharing the class of psi_0.
bool reduce_independence_check(const FpModule& T, const CharacterChi& chi, std::size_t n,
                               int trials = 50, unsigned seed = 7);

// Lift f in Z^1(G, Omega/I^n ⊗ T) one level: a cocycle in Omega/I^(n+1) ⊗ T
// with the same lower layers. Exists iff Psi^(n)(f) is a coboundary.
std::optional<Cochain1> lift_one_level(const OmegaModule& Wn, const Cochain1& f);

// dim H^r(U, T) = dim H^r(G, F_p[G/U] ⊗ T) for r = 1, 2 (Shapiro at finite
// level). U must be normal with G/U a cyclic p-power group.
bool shapiro_check(const FpModule& T, const std::vector<int>& U_elements, uint64_t p);

// Induced module F_p[G/U] ⊗ T with g(coset ⊗ t) = (g·coset) ⊗ g·t.
FpModule induced_module(const FpModule& T, const Quotient& Q);

// Corestriction (transfer) of a 1-cochain on U to G.
Cochain1 corestriction(const FpModule& T, const Subgroup& U, const Cochain1& c_on_U);

// Is psi in H^1(G, T) in the image of Cor : H^1(U, T) -> H^1(G, T)?
// Decided by a linear solve for a lift of psi to H^1(G, Omega ⊗ T) with
// Omega = F_p[G/U] the full group algebra.
bool norm_image_check(const FpModule& T, const CharacterChi& chi, const Cochain1& psi);

// epsilon_omega = (1/#Delta) sum omega(s) s^{-1} in (Z/p^N)[Delta].
struct IdempotentEpsilon {
  const FiniteGroup* delta;
  mpz_class modulus;                // p^N
  std::vector<mpz_class> coeffs;    // indexed by group element

  std::vector<mpz_class> act(const std::vector<mpz_class>& other) const;  // ring product
  bool is_idempotent() const;
};
IdempotentEpsilon epsilon_idempotent(const FiniteGroup& delta,
                                     const std::vector<mpz_class>& omega_values, long p, int N);

// Checks Psi^(n)(tau·phi) = tau·Psi^(n)(phi) as H^2(G,T) classes for every
// tau in the prime-to-p part of scriptG/N and a basis of cocycles.
// scriptG ⊇ G ⊇ N, T an F_p[scriptG]-module given on scriptG. chi is passed
// by its values on the parent group's elements (entries off G are ignored).
bool equivariance_check(const FpModule& T_on_scriptG, const std::vector<int>& G_elements,
                        const std::vector<int>& N_elements,
                        const std::vector<uint64_t>& chi_values_on_parent, int chi_level,
                        std::size_t n);

// Filtration bookkeeping for finite modules over F_p[x]/(x^m): returns the
// dimensions of x^i M / x^(i+1) M. With graded pieces F_p up to level n and
// stabilization at n, #M = p^n (Nakayama).
std::vector<std::size_t> x_filtration_dims(const FpMatrix& x_action);

} // namespace iwm

#endif
