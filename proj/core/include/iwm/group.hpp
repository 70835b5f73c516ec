#ifndef IWM_GROUP_HPP
#define IWM_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwm/error.hpp"
#include "iwm/fp_linalg.hpp"

namespace iwm {

// A finite group given by its multiplication table. Element 0 is the
// identity. Tables are validated on construction: identity, inverses, and
// associativity (exhaustive up to order 100, 1000 random triples beyond).
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<int>> mult_table, std::vector<int> generators,
              std::vector<std::string> labels = {});

  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);

  int order() const { return (int)table_.size(); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  const std::vector<int>& generators() const { return gens_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  int element_order(int a) const;
  int conjugate(int t, int g) const { return mul(mul(inv(t), g), t); }  // t^-1 g t
  bool is_abelian() const;
  bool is_normal(const std::vector<int>& subgroup_elements) const;

  // Closure of a generating set inside this group.
  std::vector<int> closure(std::vector<int> gens) const;
  // Commutator subgroup [G, G].
  std::vector<int> commutator_subgroup() const;
  // p-rank of the abelianization G/[G,G], i.e. dim_Fp Hom(G, F_p).
  int abelianization_p_rank(uint64_t p) const;

  // For the direct_product constructor: index of (a, b).
  int pair_index(int a, int b) const;
  std::pair<int, int> pair_split(int idx) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  std::vector<std::string> labels_;
  int product_left_order_ = 0;  // set when built as a direct product
};

// Subgroup as a standalone group: elements re-indexed, with the embedding
// kept. elements[i] is the parent index of the i-th subgroup element.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> elements;        // subgroup index -> parent index
  std::vector<int> parent_to_sub;   // parent index -> subgroup index or -1
};
Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> gens);

// Quotient G/N for a normal subgroup N (given by parent element indices).
// Cosets are indexed 0..[G:N)-1 with 0 the trivial coset.
struct Quotient {
  FiniteGroup group;
  std::vector<int> coset_of;   // parent index -> coset index
  std::vector<int> coset_rep;  // coset index -> a representative parent index
};
Quotient make_quotient(const FiniteGroup& G, const std::vector<int>& normal_elements);

// An F_p[G]-module of finite dimension: one invertible matrix per group
// generator, extended to all elements along words and checked consistent
// with the multiplication table.
class FpModule {
 public:
  // trivial module of given dimension
  FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim);
  // from matrices for G.generators()
  FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim,
           const std::vector<FpMatrix>& generator_matrices);
  // from explicit per-element matrices (internal/OmegaModule use)
  FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim, std::vector<FpMatrix> all,
           bool verify);

  const FiniteGroup& group() const { return *G_; }
  uint64_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const FpMatrix& act(int g) const { return mats_[g]; }
  FpVector apply(int g, const FpVector& v) const { return mats_[g].apply(v); }

  // Restriction to a subgroup.
  FpModule restrict_to(const Subgroup& U) const;

 private:
  void verify_table_consistency() const;
  const FiniteGroup* G_;
  uint64_t p_;
  std::size_t dim_;
  std::vector<FpMatrix> mats_;
};

// Surjective character chi : G -> Z/p^l. Values are canonical residues.
class CharacterChi {
 public:
  CharacterChi(const FiniteGroup& G, uint64_t p, int level, std::vector<uint64_t> values);

  const FiniteGroup& group() const { return *G_; }
  uint64_t p() const { return p_; }
  int level() const { return level_; }
  uint64_t modulus() const { return modulus_; }
  uint64_t operator()(int g) const { return values_[g]; }

  // binomial C(chi(g), k) mod p
  uint64_t binom(int g, uint64_t k) const { return fp::binomial(values_[g], k, p_); }

  // Elements with chi = 0, i.e. ker chi.
  std::vector<int> kernel_elements() const;

 private:
  const FiniteGroup* G_;
  uint64_t p_;
  int level_;
  uint64_t modulus_;
  std::vector<uint64_t> values_;
};

// JSON loading of groups and modules (schema documented in the README).
struct LoadedGroup {
  FiniteGroup group;
  std::optional<FpModule> module;
};
LoadedGroup load_group_json(const std::string& text);
std::string group_to_json(const FiniteGroup& G, const FpModule* module);

} // namespace iwm

#endif
