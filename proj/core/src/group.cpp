#include "iwm/group.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "json.hpp"

namespace iwm {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mult_table, std::vector<int> generators,
                         std::vector<std::string> labels)
    : table_(std::move(mult_table)), gens_(std::move(generators)), labels_(std::move(labels)) {
  int n = (int)table_.size();
  require(n > 0, errc::usage, "empty group");
  for (auto& row : table_) {
    require((int)row.size() == n, errc::usage, "multiplication table not square");
    for (int v : row) require(0 <= v && v < n, errc::usage, "table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    require(table_[0][a] == a && table_[a][0] == a, errc::usage, "element 0 is not an identity");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == 0) {
        require(table_[b][a] == 0, errc::usage, "one-sided inverse");
        inv_[a] = b;
        break;
      }
    require(inv_[a] >= 0, errc::usage, "missing inverse");
  }
  if (n <= 100) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          require(mul(mul(a, b), c) == mul(a, mul(b, c)), errc::usage, "table not associative");
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int i = 0; i < 1000; ++i) {
      int a = d(rng), b = d(rng), c = d(rng);
      require(mul(mul(a, b), c) == mul(a, mul(b, c)), errc::usage, "table not associative");
    }
  }
  if (gens_.empty()) {
    for (int a = 1; a < n; ++a) gens_.push_back(a);
  }
  require((int)closure(gens_).size() == n, errc::usage, "generators do not generate");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), {n > 1 ? 1 : 0});
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  int na = A.order(), nb = B.order();
  int n = na * nb;
  auto idx = [nb](int a, int b) { return a * nb + b; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          t[idx(a1, b1)][idx(a2, b2)] = idx(A.mul(a1, a2), B.mul(b1, b2));
  std::vector<int> gens;
  for (int g : A.generators()) gens.push_back(idx(g, 0));
  for (int g : B.generators()) gens.push_back(idx(0, g));
  FiniteGroup G(std::move(t), gens);
  G.product_left_order_ = nb;
  return G;
}

int FiniteGroup::pair_index(int a, int b) const {
  require(product_left_order_ > 0, errc::usage, "not a direct product");
  return a * product_left_order_ + b;
}

std::pair<int, int> FiniteGroup::pair_split(int idx) const {
  require(product_left_order_ > 0, errc::usage, "not a direct product");
  return {idx / product_left_order_, idx % product_left_order_};
}

int FiniteGroup::element_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  int n = order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& sub) const {
  std::vector<char> in(order(), 0);
  for (int s : sub) in[s] = 1;
  for (int g = 0; g < order(); ++g)
    for (int s : sub)
      if (!in[mul(mul(g, s), inv(g))]) return false;
  return true;
}

std::vector<int> FiniteGroup::closure(std::vector<int> gens) const {
  std::set<int> seen{0};
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int g : gens) {
      int x = mul(queue[i], g);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  std::vector<int> out(seen.begin(), seen.end());
  return out;
}

std::vector<int> FiniteGroup::commutator_subgroup() const {
  std::vector<int> comms;
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      comms.push_back(mul(mul(a, b), mul(inv(a), inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(comms);
}

int FiniteGroup::abelianization_p_rank(uint64_t p) const {
  // p-rank of a finite abelian group A = log_p #{a : a^p = 1}
  Quotient Q = make_quotient(*this, commutator_subgroup());
  const FiniteGroup& A = Q.group;
  int count = 0;
  for (int a = 0; a < A.order(); ++a) {
    int x = 0;
    for (uint64_t i = 0; i < p; ++i) x = A.mul(x, a);
    if (x == 0) ++count;
  }
  int rank = 0;
  while (count > 1) {
    count /= (int)p;
    ++rank;
  }
  return rank;
}

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> gens) {
  std::vector<int> elems = G.closure(gens);
  std::sort(elems.begin(), elems.end());
  std::vector<int> p2s(G.order(), -1);
  for (int i = 0; i < (int)elems.size(); ++i) p2s[elems[i]] = i;
  int m = (int)elems.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int x = G.mul(elems[i], elems[j]);
      require(p2s[x] >= 0, errc::internal_inconsistency, "closure not closed");
      t[i][j] = p2s[x];
    }
  std::vector<int> sgens;
  for (int g : gens) sgens.push_back(p2s[g]);
  if (sgens.empty()) sgens.push_back(0);
  return Subgroup{FiniteGroup(std::move(t), sgens), std::move(elems), std::move(p2s)};
}

Quotient make_quotient(const FiniteGroup& G, const std::vector<int>& normal_elements) {
  require(G.is_normal(normal_elements), errc::usage, "subgroup is not normal");
  std::vector<char> in(G.order(), 0);
  for (int s : normal_elements) in[s] = 1;
  std::vector<int> coset_of(G.order(), -1);
  std::vector<int> reps;
  // coset 0 must be N itself
  for (int s : normal_elements) coset_of[s] = 0;
  reps.push_back(0);
  for (int g = 0; g < G.order(); ++g) {
    if (coset_of[g] >= 0) continue;
    int c = (int)reps.size();
    reps.push_back(g);
    for (int s : normal_elements) coset_of[G.mul(g, s)] = c;
  }
  int m = (int)reps.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = coset_of[G.mul(reps[i], reps[j])];
  std::vector<int> qgens;
  for (int g : G.generators())
    if (coset_of[g] != 0) qgens.push_back(coset_of[g]);
  if (qgens.empty()) qgens.push_back(0);
  std::sort(qgens.begin(), qgens.end());
  qgens.erase(std::unique(qgens.begin(), qgens.end()), qgens.end());
  return Quotient{FiniteGroup(std::move(t), qgens), std::move(coset_of), std::move(reps)};
}

// --- modules ---------------------------------------------------------------

FpModule::FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim)
    : G_(&G), p_(p), dim_(dim), mats_(G.order(), FpMatrix::identity(p, dim)) {}

FpModule::FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim,
                   const std::vector<FpMatrix>& generator_matrices)
    : G_(&G), p_(p), dim_(dim) {
  require(generator_matrices.size() == G.generators().size(), errc::usage,
          "need one matrix per generator");
  mats_.assign(G.order(), FpMatrix());
  std::vector<char> known(G.order(), 0);
  mats_[0] = FpMatrix::identity(p, dim);
  known[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
      int g = G.generators()[gi];
      int y = G.mul(x, g);
      FpMatrix m = mats_[x].mul(generator_matrices[gi]);
      if (!known[y]) {
        mats_[y] = std::move(m);
        known[y] = 1;
        queue.push_back(y);
      } else {
        require(mats_[y] == m, errc::usage,
                "generator matrices do not satisfy the group's relations");
      }
    }
  }
  for (char k : known) require(k, errc::internal_inconsistency, "module BFS did not reach all elements");
  verify_table_consistency();
}

FpModule::FpModule(const FiniteGroup& G, uint64_t p, std::size_t dim, std::vector<FpMatrix> all,
                   bool verify)
    : G_(&G), p_(p), dim_(dim), mats_(std::move(all)) {
  require(mats_.size() == (std::size_t)G.order(), errc::usage, "need one matrix per element");
  if (verify) verify_table_consistency();
}

void FpModule::verify_table_consistency() const {
  int n = G_->order();
  if (n <= 81) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        require(mats_[G_->mul(a, b)] == mats_[a].mul(mats_[b]), errc::usage,
                "module action inconsistent with multiplication table");
  } else {
    std::mt19937 rng(98765);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int i = 0; i < 1000; ++i) {
      int a = d(rng), b = d(rng);
      require(mats_[G_->mul(a, b)] == mats_[a].mul(mats_[b]), errc::usage,
              "module action inconsistent with multiplication table");
    }
  }
}

FpModule FpModule::restrict_to(const Subgroup& U) const {
  std::vector<FpMatrix> mats;
  mats.reserve(U.elements.size());
  for (int e : U.elements) mats.push_back(mats_[e]);
  return FpModule(U.group, p_, dim_, std::move(mats), false);
}

// --- characters --------------------------------------------------------------

CharacterChi::CharacterChi(const FiniteGroup& G, uint64_t p, int level,
                           std::vector<uint64_t> values)
    : G_(&G), p_(p), level_(level), values_(std::move(values)) {
  require(level >= 1, errc::usage, "level must be >= 1");
  modulus_ = 1;
  for (int i = 0; i < level; ++i) modulus_ *= p;
  require(values_.size() == (std::size_t)G.order(), errc::usage, "need one value per element");
  for (auto& v : values_) v %= modulus_;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      require(values_[G.mul(a, b)] == (values_[a] + values_[b]) % modulus_, errc::usage,
              "chi is not a homomorphism");
  bool surj = false;
  for (auto v : values_)
    if (v % p != 0) surj = true;
  require(surj, errc::usage, "chi is not surjective onto Z/p^l");
}

std::vector<int> CharacterChi::kernel_elements() const {
  std::vector<int> out;
  for (int g = 0; g < G_->order(); ++g)
    if (values_[g] == 0) out.push_back(g);
  return out;
}

// --- JSON ---------------------------------------------------------------------

LoadedGroup load_group_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  require(j.contains("order") && j.contains("mult"), errc::usage,
          "group JSON needs 'order' and 'mult'");
  int n = j["order"].get<int>();
  auto mult = j["mult"].get<std::vector<std::vector<int>>>();
  require((int)mult.size() == n, errc::usage, "mult table size != order");
  std::vector<int> gens;
  if (j.contains("generators")) gens = j["generators"].get<std::vector<int>>();
  FiniteGroup G(std::move(mult), std::move(gens));
  std::optional<FpModule> mod;
  if (j.contains("module")) {
    auto& jm = j["module"];
    uint64_t p = jm["p"].get<uint64_t>();
    std::size_t dim = jm["dim"].get<std::size_t>();
    std::vector<FpMatrix> gm;
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
      std::string key = std::to_string(G.generators()[gi]);
      require(jm["action"].contains(key), errc::usage, "missing action for generator " + key);
      auto rows = jm["action"][key].get<std::vector<std::vector<long long>>>();
      FpMatrix m(p, dim, dim);
      require(rows.size() == dim, errc::usage, "action matrix shape");
      for (std::size_t r = 0; r < dim; ++r) {
        require(rows[r].size() == dim, errc::usage, "action matrix shape");
        for (std::size_t c = 0; c < dim; ++c) m.set(r, c, rows[r][c]);
      }
      gm.push_back(std::move(m));
    }
    mod.emplace(G, p, dim, gm);
  }
  return LoadedGroup{std::move(G), std::move(mod)};
}

std::string group_to_json(const FiniteGroup& G, const FpModule* module) {
  nlohmann::json j;
  j["order"] = G.order();
  j["mult"] = G.table();
  j["generators"] = G.generators();
  if (module) {
    nlohmann::json jm;
    jm["p"] = module->p();
    jm["dim"] = module->dim();
    nlohmann::json act;
    for (int g : G.generators()) {
      std::vector<std::vector<uint64_t>> rows(module->dim(), std::vector<uint64_t>(module->dim()));
      for (std::size_t r = 0; r < module->dim(); ++r)
        for (std::size_t c = 0; c < module->dim(); ++c) rows[r][c] = module->act(g).at(r, c);
      act[std::to_string(g)] = rows;
    }
    jm["action"] = act;
    j["module"] = jm;
  }
  return j.dump(2);
}

} // namespace iwm
