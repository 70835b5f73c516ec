#ifndef IWM_MASSEY_HPP
#define IWM_MASSEY_HPP

#include <map>
#include <optional>
#include <string>

#include "iwm/cohomology.hpp"

namespace iwm {

// Strictly upper unitriangular matrix over F_p (diagonal implicitly 1).
class UnipotentMatrix {
 public:
  UnipotentMatrix(uint64_t p, std::size_t size);
  static UnipotentMatrix identity(uint64_t p, std::size_t size) { return {p, size}; }

  uint64_t p() const { return p_; }
  std::size_t size() const { return size_; }
  uint64_t at(std::size_t i, std::size_t j) const;           // full matrix entry
  void set_upper(std::size_t i, std::size_t j, uint64_t v);  // i < j only

  UnipotentMatrix mul(const UnipotentMatrix& o) const;
  UnipotentMatrix inverse() const;
  UnipotentMatrix commutator(const UnipotentMatrix& o) const;  // a b a^-1 b^-1
  bool operator==(const UnipotentMatrix& o) const = default;
  bool operator<(const UnipotentMatrix& o) const { return a_ < o.a_; }

 private:
  uint64_t p_;
  std::size_t size_;
  std::vector<uint64_t> a_;  // strictly upper entries, row-major
};

// Defining system for an (N)-fold Massey product: the partial homomorphism
// rho : G -> U_(N+1)/Z. Interior entries (j <= N) are F_p-valued cochains
// with trivial action; last-column entries are T-valued; (1, N+1) is absent
// structurally. Validity is the twisted law
//   rho_(i,j)(g1 g2) = sum_k rho_(i,k)(g1) · g1 rho_(k,j)(g2).
class DefiningSystem {
 public:
  DefiningSystem(const FpModule& T, std::size_t N);

  const FpModule& module() const { return *T_; }
  const FiniteGroup& group() const { return T_->group(); }
  std::size_t N() const { return N_; }        // number of characters
  std::size_t msize() const { return N_ + 1; }

  // interior scalar entries, 1 <= i < j <= N
  FpVector& scalar_entry(std::size_t i, std::size_t j);
  const FpVector& scalar_entry(std::size_t i, std::size_t j) const;
  // last-column entries, 2 <= i <= N (T-valued)
  Cochain1& column_entry(std::size_t i);
  const Cochain1& column_entry(std::size_t i) const;

  // Verifies the twisted homomorphism law on every defined entry.
  bool is_valid() const;
  void require_valid(errc code = errc::not_cocycle_compatible) const;

  // Proper-system metadata when built by proper_system().
  const CharacterChi* proper_chi = nullptr;
  std::vector<Cochain1> proper_psis;

 private:
  const FpModule* T_;
  std::size_t N_;
  std::vector<FpVector> scalars_;  // indexed by (i-1)*(N+1)+(j-1)
  std::vector<Cochain1> column_;   // indexed by i-2, for i in [2, N]
};

struct MasseyResult {
  Cochain2 value;
  bool vanishes = false;
  std::optional<Cochain1> witness;  // corner cochain with d(witness) = -value
};

// The binomial-staircase defining system for (chi,...,chi,psi_0) with free
// last column psi_(n-1)..psi_0 (bottom-up). psis = [psi_0, ..., psi_(n-1)].
// NOT_COCYCLE_COMPATIBLE when the twisted law fails (equivalently, when
// sum psi_i x^i is not a cocycle in Omega/I^n ⊗ T).
DefiningSystem proper_system(const FpModule& T, const CharacterChi& chi,
                             const std::vector<Cochain1>& psis);

// Massey 2-cocycle value(g,h) = sum_(j=2..N) rho_(1,j)(g) · g rho_(j,N+1)(h),
// its coboundary test, and the corner witness when it vanishes.
MasseyResult massey_value(const DefiningSystem& ds);

// Searches for a corner cochain making the full matrix map a (twisted)
// homomorphism into U_(N+1); verified multiplicative on all pairs.
struct Lift {
  Cochain1 corner;
  // full unipotent images, only for 1-dimensional T (entries are scalars)
  std::vector<UnipotentMatrix> images;
};
std::optional<Lift> lift_search(const DefiningSystem& ds);

// Lemma blocklemma: two systems sharing the first n columns and last m rows
// combine by adding the up-right blocks. BLOCK_MISMATCH when the shared
// blocks differ.
DefiningSystem block_compose(const DefiningSystem& ds1, const DefiningSystem& ds2,
                             std::size_t n_top);

// Extends a proper system by m steps: binomials continue, zeros below psi_0.
DefiningSystem extend_proper(const DefiningSystem& ds, std::size_t m);

struct MnOptions {
  std::size_t max_matrix_size = 8;
  std::size_t max_order = 100000;
};

// The group M_n = <s, t_0, ..., t_n> inside U_(n+2)(F_p): s the full
// superdiagonal, t_0 the single (n+1, n+2) entry, t_(k+1) = [s, t_k].
// Returns the closure with generator metadata.
struct MnGroup {
  FiniteGroup group;
  int s;                      // element index of s
  std::vector<int> t;         // element indices of t_0..t_n
  std::vector<UnipotentMatrix> elements;  // index -> matrix
};
MnGroup build_Mn(uint64_t p, std::size_t n, const MnOptions& opt = {});

// serialization for replaying defining systems in tests
std::string defining_system_to_json(const DefiningSystem& ds);
DefiningSystem defining_system_from_json(const FpModule& T, const std::string& text);

} // namespace iwm

#endif
