#include "iwm/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace iwm {

namespace {

// Arithmetic in Z[zeta_{p^2}] via length-p^2 coefficient vectors modulo
// (x^{p^2} - 1), canonicalized into the power basis of Phi_{p^2} on demand.
struct CycloRing {
  long p;
  long n;    // p^2
  long phi;  // p(p-1)

  std::vector<mpz_class> zero() const { return std::vector<mpz_class>(n, 0); }

  std::vector<mpz_class> mul(const std::vector<mpz_class>& a,
                             const std::vector<mpz_class>& b) const {
    std::vector<mpz_class> r(n, 0);
    for (long i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; j < n; ++j)
        if (b[j] != 0) r[(i + j) % n] += a[i] * b[j];
    }
    return r;
  }

  // reduce into coefficients 0..phi-1 using x^(phi+j) = -sum_k x^(kp+j)
  std::vector<mpz_class> canonical(std::vector<mpz_class> a) const {
    for (long e = n - 1; e >= phi; --e) {
      if (a[e] == 0) continue;
      mpz_class c = a[e];
      a[e] = 0;
      long j = e - phi;
      for (long k = 0; k + 1 < p; ++k) a[k * p + j] -= c;
    }
    return a;
  }

  std::vector<mpz_class> galois(const std::vector<mpz_class>& a, long t) const {
    std::vector<mpz_class> r(n, 0);
    for (long i = 0; i < n; ++i)
      if (a[i] != 0) r[(i * t) % n] += a[i];
    return r;
  }
};

long multiplicative_order(long a, long m) {
  long x = a % m, o = 1;
  while (x != 1) {
    x = (x * a) % m;
    ++o;
  }
  return o;
}

} // namespace

std::shared_ptr<const PeriodField> PeriodField::build(long p) {
  require(p >= 3 && p % 2 == 1, errc::usage, "p must be an odd prime");
  require(p <= degree_cap, errc::degree_cap_exceeded,
          "p = " + std::to_string(p) + " exceeds the degree cap " + std::to_string(degree_cap));
  // small static cache: fields are immutable and cheap to share
  static std::mutex mtx;
  static std::map<long, std::shared_ptr<const PeriodField>> cache;
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }

  auto pf = std::shared_ptr<PeriodField>(new PeriodField());
  pf->p_ = p;
  long n = p * p;
  long phi = p * (p - 1);
  CycloRing R{p, n, phi};

  // smallest primitive root mod p^2
  long g = -1;
  for (long cand = 2; cand < n; ++cand) {
    if (std::gcd(cand, n) != 1) continue;
    if (multiplicative_order(cand, n) == phi) {
      g = cand;
      break;
    }
  }
  require(g > 0, errc::internal_inconsistency, "no primitive root mod p^2");
  pf->g_ = g;

  // H = <g^p>, cosets g^i H give the p periods
  std::vector<long> H;
  {
    long gp = 1;
    for (long i = 0; i < p; ++i) gp = (gp * g) % n;
    long x = 1;
    for (long i = 0; i < p - 1; ++i) {
      x = (i == 0) ? gp : (x * gp) % n;
      H.push_back(x);
    }
  }
  require((long)H.size() == p - 1, errc::internal_inconsistency, "subgroup size");

  std::vector<std::vector<mpz_class>> periods;  // canonical phi-length tails in n-length vectors
  long gi = 1;
  for (long i = 0; i < p; ++i) {
    auto v = R.zero();
    for (long h : H) v[(gi * h) % n] += 1;
    periods.push_back(R.canonical(std::move(v)));
    gi = (gi * g) % n;
  }

  // sum of all periods must vanish (mu(p^2) = 0)
  {
    auto s = R.zero();
    for (const auto& pe : periods)
      for (long i = 0; i < n; ++i) s[i] += pe[i];
    s = R.canonical(std::move(s));
    for (long i = 0; i < n; ++i)
      require(s[i] == 0, errc::internal_inconsistency, "periods do not sum to zero");
  }

  // basis B = (1, eta_0, .., eta_{p-2}) as canonical ring vectors
  std::vector<std::vector<mpz_class>> basis;
  {
    auto one = R.zero();
    one[0] = 1;
    basis.push_back(one);
    for (long i = 0; i + 1 < p; ++i) basis.push_back(periods[i]);
  }

  // express a canonical ring vector in B, demanding integer coordinates
  auto express = [&](const std::vector<mpz_class>& target) {
    std::vector<std::vector<mpq_class>> A(phi, std::vector<mpq_class>(p, 0));
    std::vector<mpq_class> b(phi, 0);
    for (long r = 0; r < phi; ++r) {
      for (long c = 0; c < p; ++c) A[r][c] = mpq_class(basis[c][r]);
      b[r] = mpq_class(target[r]);
    }
    auto sol = solve_rational(std::move(A), std::move(b));
    require(sol.has_value(), errc::internal_inconsistency, "element not in the period basis span");
    std::vector<mpz_class> out;
    for (auto& x : *sol) {
      x.canonicalize();
      require(x.get_den() == 1, errc::internal_inconsistency,
              "non-integral coordinate in the period basis");
      out.push_back(x.get_num());
    }
    return out;
  };

  // min_poly of eta_0: expand prod (x - eta_i) with coefficients in the ring
  {
    std::vector<std::vector<mpz_class>> poly{R.zero()};
    poly[0][0] = 1;  // constant polynomial 1 (in x)
    for (long i = 0; i < p; ++i) {
      std::vector<std::vector<mpz_class>> next(poly.size() + 1, R.zero());
      for (std::size_t k = 0; k < poly.size(); ++k) {
        // * x
        for (long t = 0; t < n; ++t) next[k + 1][t] += poly[k][t];
        // * (-eta_i)
        auto prod = R.mul(poly[k], periods[i]);
        for (long t = 0; t < n; ++t) next[k][t] -= prod[t];
      }
      poly = std::move(next);
    }
    ZPoly mp;
    for (auto& coeffvec : poly) {
      auto c = R.canonical(std::move(coeffvec));
      for (long t = 1; t < n; ++t)
        require(c[t] == 0, errc::internal_inconsistency, "min_poly coefficient not rational");
      mp.push_back(c[0]);
    }
    require((int)mp.size() == p + 1 && mp.back() == 1, errc::internal_inconsistency,
            "min_poly not monic of degree p");
    pf->min_poly_ = mp;
  }

  // period coordinates, sigma permutation/matrix, structure constants
  for (long i = 0; i < p; ++i) pf->period_coords_.push_back(express(periods[i]));
  pf->sigma_perm_.resize(p);
  for (long i = 0; i < p; ++i) pf->sigma_perm_[i] = (int)((i + 1) % p);
  {
    // sigma(B_c) expressed in B
    pf->sigma_mat_.assign(p, std::vector<mpz_class>(p, 0));
    for (long c = 0; c < p; ++c) {
      auto img = R.canonical(R.galois(basis[c], g));
      auto coords = express(img);
      for (long r = 0; r < p; ++r) pf->sigma_mat_[r][c] = coords[r];
    }
  }
  {
    pf->mult_table_.assign((std::size_t)p * p, {});
    for (long i = 0; i < p; ++i)
      for (long j = 0; j < p; ++j) {
        auto prod = R.canonical(R.mul(basis[i], basis[j]));
        pf->mult_table_[i * p + j] = express(prod);
      }
  }
  {
    // eta_1 = prod_{h in H} (1 - zeta^h)
    auto acc = R.zero();
    acc[0] = 1;
    for (long h : H) {
      auto f = R.zero();
      f[0] = 1;
      f[h] -= 1;
      acc = R.mul(acc, f);
    }
    pf->eta_coords_ = express(R.canonical(std::move(acc)));
  }

  // sigma^p = identity on the basis
  {
    auto mat_mul = [&](const std::vector<std::vector<mpz_class>>& A,
                       const std::vector<std::vector<mpz_class>>& B) {
      std::vector<std::vector<mpz_class>> C(p, std::vector<mpz_class>(p, 0));
      for (long i = 0; i < p; ++i)
        for (long k = 0; k < p; ++k)
          if (A[i][k] != 0)
            for (long j = 0; j < p; ++j) C[i][j] += A[i][k] * B[k][j];
      return C;
    };
    std::vector<std::vector<mpz_class>> acc(p, std::vector<mpz_class>(p, 0));
    for (long i = 0; i < p; ++i) acc[i][i] = 1;
    for (long i = 0; i < p; ++i) acc = mat_mul(acc, pf->sigma_mat_);
    for (long i = 0; i < p; ++i)
      for (long j = 0; j < p; ++j)
        require(acc[i][j] == (i == j ? 1 : 0), errc::internal_inconsistency, "sigma^p != 1");
  }

  std::shared_ptr<const PeriodField> out = pf;
  {
    std::lock_guard<std::mutex> lk(mtx);
    cache[p] = out;
  }
  return out;
}

K1Element::K1Element(std::shared_ptr<const PeriodField> pf, mpz_class D)
    : pf_(std::move(pf)), D_(std::move(D)) {
  coeffs_.assign(pf_->dim(), QuadElement::from_int(D_, 0));
}

K1Element::K1Element(std::shared_ptr<const PeriodField> pf, mpz_class D,
                     std::vector<QuadElement> coeffs)
    : pf_(std::move(pf)), D_(std::move(D)), coeffs_(std::move(coeffs)) {
  require((int)coeffs_.size() == pf_->dim(), errc::parameter_mismatch,
          "need p coordinates on the period basis");
  for (const auto& c : coeffs_)
    require(c.D() == D_, errc::parameter_mismatch, "coefficient field mismatch");
}

K1Element K1Element::constant(std::shared_ptr<const PeriodField> pf, const mpz_class& D,
                              const QuadElement& c) {
  K1Element e(std::move(pf), D);
  e.coeffs_[0] = c;
  return e;
}

K1Element K1Element::one(std::shared_ptr<const PeriodField> pf, const mpz_class& D) {
  return constant(std::move(pf), D, QuadElement::from_int(D, 1));
}

bool K1Element::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool K1Element::is_constant() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

static void check_compatible(const K1Element& a, const K1Element& b) {
  require(a.field()->p() == b.field()->p() && a.D() == b.D(), errc::parameter_mismatch,
          "K1 elements over different fields");
}

K1Element K1Element::operator+(const K1Element& o) const {
  check_compatible(*this, o);
  std::vector<QuadElement> out;
  out.reserve(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] + o.coeffs_[i]);
  return K1Element(pf_, D_, std::move(out));
}

K1Element K1Element::operator-(const K1Element& o) const {
  check_compatible(*this, o);
  std::vector<QuadElement> out;
  out.reserve(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] - o.coeffs_[i]);
  return K1Element(pf_, D_, std::move(out));
}

K1Element K1Element::operator*(const K1Element& o) const {
  check_compatible(*this, o);
  int d = pf_->dim();
  std::vector<QuadElement> out(d, QuadElement::from_int(D_, 0));
  for (int i = 0; i < d; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      QuadElement prod = coeffs_[i] * o.coeffs_[j];
      const auto& sc = pf_->struct_constant(i, j);
      for (int k = 0; k < d; ++k) {
        if (sc[k] == 0) continue;
        out[k] = out[k] + prod * QuadElement::from_int(D_, sc[k]);
      }
    }
  }
  return K1Element(pf_, D_, std::move(out));
}

K1Element K1Element::pow(unsigned long e) const {
  K1Element r = one(pf_, D_);
  K1Element b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool K1Element::operator==(const K1Element& o) const {
  if (pf_->p() != o.pf_->p() || D_ != o.D_) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!(coeffs_[i] == o.coeffs_[i])) return false;
  return true;
}

std::string K1Element::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ", ";
    s += coeffs_[i].str();
  }
  return s + "]";
}

K1Element sigma_apply(const K1Element& e) {
  const auto& M = e.field()->sigma_matrix();
  int d = e.field()->dim();
  std::vector<QuadElement> out(d, QuadElement::from_int(e.D(), 0));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (M[r][c] == 0 || e.coeff(c).is_zero()) continue;
      out[r] = out[r] + e.coeff(c) * QuadElement::from_int(e.D(), M[r][c]);
    }
  return K1Element(e.field(), e.D(), std::move(out));
}

QuadElement relative_norm(const K1Element& e) {
  require(!e.is_zero(), errc::usage, "norm of zero");
  K1Element acc = e;
  K1Element cur = e;
  for (long i = 1; i < e.field()->p(); ++i) {
    cur = sigma_apply(cur);
    acc = acc * cur;
  }
  require(acc.is_constant(), errc::internal_inconsistency,
          "norm does not land in the base field");
  return acc.coeff(0);
}

K1Element eta_element(std::shared_ptr<const PeriodField> pf, const mpz_class& D) {
  const auto& coords = pf->eta_coords();
  std::vector<QuadElement> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(QuadElement::from_int(D, c));
  return K1Element(std::move(pf), D, std::move(out));
}

K1Element a_product(const K1Element& beta, unsigned long j) {
  long p = beta.field()->p();
  require(1 <= (long)j && (long)j < p, errc::order_out_of_range, "need 1 <= j < p");
  K1Element acc = K1Element::one(beta.field(), beta.D());
  K1Element conj = beta;  // sigma^i(beta)
  for (long i = 0; i < p; ++i) {
    if (i > 0) conj = sigma_apply(conj);
    // C(i, j) fits comfortably in unsigned long for p <= 13
    unsigned long binom = 1;
    if ((unsigned long)i >= j) {
      for (unsigned long t = 0; t < j; ++t) binom = binom * ((unsigned long)i - t) / (t + 1);
    } else {
      binom = 0;
    }
    if (binom) acc = acc * conj.pow(binom);
  }
  return acc;
}

bool group_ring_identity(long p, long n) {
  require(p >= 3, errc::usage, "p must be an odd prime");
  require(1 <= n && n < p, errc::order_out_of_range, "need 1 <= n < p");
  auto binom = [](long m, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)m, (unsigned long)k);
    return r;
  };
  // vectors of length p indexed by sigma^i, arithmetic in Z[sigma]/(sigma^p-1)
  std::vector<mpz_class> A(p, 0), B(p, 0);
  for (long i = 0; i < p; ++i) {
    A[i] = binom(i, n);
    B[i] = binom(i, n - 1);
  }
  std::vector<mpz_class> lhs(p, 0);
  // (sigma - 1) A
  for (long i = 0; i < p; ++i) {
    lhs[(i + 1) % p] += A[i];
    lhs[i] -= A[i];
  }
  // + sigma B (n >= 2) or + B (n = 1)
  long shift = (n == 1) ? 0 : 1;
  for (long i = 0; i < p; ++i) lhs[(i + shift) % p] += B[i];
  mpz_class c = binom(p, n);
  for (long i = 0; i < p; ++i) {
    mpz_class want = (i == 0) ? c : mpz_class(0);
    if (lhs[i] != want) return false;
  }
  return true;
}

} // namespace iwm
