#ifndef IWM_COHOMOLOGY_HPP
#define IWM_COHOMOLOGY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "iwm/group.hpp"

namespace iwm {

// Inhomogeneous cochains on a finite group with coefficients in an
// FpModule M of dimension d, stored flat:
//   Cochain1: |G|*d entries, block g holds c(g)
//   Cochain2: |G|^2*d entries, block g*|G|+h holds z(g,h)
using Cochain1 = FpVector;
using Cochain2 = FpVector;

struct CohomologyBudget {
  // guard on |G|^2 * dim for degree-<=1 solves (the d1 matrix height)
  std::size_t max_c2_size = 243ULL * 243ULL * 6ULL;
  // guard on |G|^3 * dim for streaming the d2 constraint rows
  std::size_t max_d2_rows = 2'000'000ULL;
};

Cochain1 d0(const FpModule& M, const FpVector& m);
Cochain2 d1(const FpModule& M, const Cochain1& c);
FpVector d2(const FpModule& M, const Cochain2& z);  // |G|^3*d entries
bool is_cocycle1(const FpModule& M, const Cochain1& c);
bool is_cocycle2(const FpModule& M, const Cochain2& z);

// Per-(G, M) cohomology workspace. Lazily builds and caches the spaces it
// is asked for; everything is exact linear algebra over F_p.
class CohomologyContext {
 public:
  explicit CohomologyContext(const FpModule& M, CohomologyBudget budget = {});

  const FpModule& module() const { return *M_; }
  const FiniteGroup& group() const { return M_->group(); }

  const std::vector<Cochain1>& z1_basis();
  std::size_t b1_rank();
  std::size_t h1_dim();
  // representatives of an H^1 basis (subset of z1 vectors, independent mod B^1)
  const std::vector<Cochain1>& h1_basis();
  bool is_coboundary1(const Cochain1& c);

  std::size_t z2_dim();
  const std::vector<Cochain2>& z2_basis();
  std::size_t b2_rank();
  std::size_t h2_dim();
  const std::vector<Cochain2>& h2_basis();
  bool is_coboundary2(const Cochain2& z);
  bool same_class2(const Cochain2& a, const Cochain2& b);
  // solves d1(c) = z; nullopt when z is not a coboundary
  std::optional<Cochain1> coboundary_preimage(const Cochain2& z);

 private:
  void build_z1();
  void build_b1();
  void build_b2();
  void build_z2();
  const FpModule* M_;
  CohomologyBudget budget_;
  std::optional<std::vector<Cochain1>> z1_;
  std::optional<RowEchelon> b1_ech_;
  std::optional<std::vector<Cochain1>> h1_;
  std::optional<ColumnSpaceSolver> b2_;
  std::optional<std::vector<Cochain2>> z2_;
  std::optional<std::vector<Cochain2>> h2_;
};

// dim H^1 / dim H^2 with basis, one-shot convenience wrappers
struct CohBasis {
  std::size_t dim;
  std::vector<FpVector> reps;
};
CohBasis h1(const FpModule& M, CohomologyBudget budget = {});
CohBasis h2(const FpModule& M, CohomologyBudget budget = {});

// Cup product of 1-cochains through a bilinear pairing T1 x T2 -> T3:
// (a ∪ b)(g, h) = pair(a(g), g·b(h)).
// `pairing` maps (dim1 x dim2) -> dim3 coordinates: pairing[k] is the dim1 x dim2
// matrix of the k-th output coordinate.
Cochain2 cup(const FpModule& M1, const Cochain1& a, const FpModule& M2, const Cochain1& b,
             const std::vector<FpMatrix>& pairing);

// Scalar cup: T1 = F_p with trivial action, values of `a` multiply b's module values.
Cochain2 cup_scalar(const FpVector& a, const FpModule& M2, const Cochain1& b);

} // namespace iwm

#endif
