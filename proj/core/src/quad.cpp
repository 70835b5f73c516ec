#include "iwm/quad.hpp"

#include <algorithm>
#include <tuple>

namespace iwm {

static mpz_class mod_pos(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

static bool is_squarefree(mpz_class n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
    while (n % d == 0) n /= d;
  }
  return true;
}

bool is_fundamental_discriminant(const mpz_class& D) {
  if (D >= 0) return false;
  mpz_class r = mod_pos(D, 4);
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    mpz_class m = D / 4;
    mpz_class rm = mod_pos(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
  }
  return false;
}

QuadField::QuadField(const mpz_class& D) : disc(D) {
  require(is_fundamental_discriminant(D), errc::not_fundamental,
          D.get_str() + " is not a fundamental discriminant < 0");
  w = (D == -3) ? 6 : (D == -4) ? 4 : 2;
}

// --- forms ---------------------------------------------------------------

bool QuadForm::is_reduced() const {
  mpz_class ab = abs(b);
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

QuadForm QuadForm::reduced() const {
  QuadForm f = *this;
  while (true) {
    // normalize b into (-a, a]
    mpz_class r = mod_pos(f.b + f.a, 2 * f.a);  // b+a mod 2a in [0,2a)
    mpz_class nb = r - f.a;
    if (nb != f.b) {
      f.c = f.c + ((f.b + nb) / 2) * ((f.b - nb) / (2 * f.a)) * 1;  // recompute below instead
      mpz_class D = disc();
      f.b = nb;
      f.c = (f.b * f.b - D) / (4 * f.a);
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    break;
  }
  if ((f.a == f.c || abs(f.b) == f.a) && f.b < 0) f.b = -f.b;
  return f;
}

std::vector<QuadForm> reduced_forms(const mpz_class& D) {
  QuadField K(D);
  std::vector<QuadForm> out;
  mpz_class absD = -D;
  // |b| <= sqrt(|D|/3); b ≡ D (mod 2)
  mpz_class bmax = sqrt(absD / 3) + 1;
  for (mpz_class b = mod_pos(D, 2); b <= bmax; b += 2) {
    mpz_class n = (b * b - D) / 4;
    for (mpz_class a = std::max(b, mpz_class(1)); a * a <= n; ++a) {
      if (n % a != 0) continue;
      mpz_class c = n / a;
      QuadForm f{a, b, c};
      if (f.is_reduced()) out.push_back(f);
      if (b > 0) {
        QuadForm g{a, -b, c};
        if (g.is_reduced()) out.push_back(g);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });
  return out;
}

mpz_class class_number_dirichlet(const mpz_class& D) {
  require(is_fundamental_discriminant(D) && D < -4, errc::not_fundamental,
          "Dirichlet sum needs fundamental D < -4");
  mpz_class absD = -D;
  mpz_class sum = 0;
  for (mpz_class k = 1; k < absD; ++k) {
    int chi = mpz_kronecker(D.get_mpz_t(), k.get_mpz_t());
    sum += chi * k;
  }
  mpz_class h = abs(sum) / absD;  // w = 2 for D < -4
  require(abs(sum) % absD == 0, errc::internal_inconsistency, "Dirichlet sum not divisible");
  return h;
}

SplitType split_type(const mpz_class& D, long p) {
  require(p >= 3 && p % 2 == 1, errc::usage, "p must be an odd prime");
  int k = mpz_kronecker_si(D.get_mpz_t(), p);
  if (k == 1) return SplitType::split;
  if (k == -1) return SplitType::inert;
  return SplitType::ramified;
}

const char* split_type_name(SplitType t) {
  switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

std::pair<QuadIdeal, QuadIdeal> prime_above(const mpz_class& D, long p) {
  require(split_type(D, p) == SplitType::split, errc::not_split,
          "p = " + std::to_string(p) + " does not split");
  mpz_class fourp = 4 * mpz_class(p);
  for (mpz_class b = 0; b < 2 * p; ++b) {
    if (mod_pos(b * b - D, fourp) == 0)
      return {QuadIdeal{p, b}, QuadIdeal{p, mod_pos(-b, 2 * p)}};
  }
  fail(errc::internal_inconsistency, "no square root of D mod 4p for a split prime");
}

// --- elements ------------------------------------------------------------

QuadElement::QuadElement(mpz_class D, mpz_class x, mpz_class y, mpz_class den)
    : D_(std::move(D)), x_(std::move(x)), y_(std::move(y)), den_(std::move(den)) {
  require(den_ == 1 || den_ == 2, errc::usage, "den must be 1 or 2");
  if (den_ == 2) {
    if (mod_pos(D_, 4) == 1)
      require(mod_pos(x_ - y_, 2) == 0, errc::usage, "den=2 needs x ≡ y mod 2");
    else
      require(mod_pos(x_, 2) == 0, errc::usage, "den=2 needs x even when D ≡ 0 mod 4");
  }
  normalize();
}

void QuadElement::normalize() {
  if (den_ == 2 && x_ % 2 == 0 && y_ % 2 == 0) {
    x_ /= 2;
    y_ /= 2;
    den_ = 1;
  }
}

QuadElement QuadElement::from_omega(const mpz_class& D, const mpz_class& u, const mpz_class& v) {
  if (mod_pos(D, 4) == 1) return QuadElement(D, 2 * u + v, v, 2);
  return QuadElement(D, 2 * u, v, 2);
}

std::pair<mpz_class, mpz_class> QuadElement::omega_coords() const {
  // D ≡ 1 (4): omega = (1+sqrt(D))/2, so (x + y sqrt(D))/den = (x-y)/den + (2y/den) omega
  // D ≡ 0 (4): omega = sqrt(D)/2,  so (x + y sqrt(D))/den = x/den + (2y/den) omega
  mpz_class u, v;
  if (mod_pos(D_, 4) == 1) {
    u = x_ - y_;
    v = 2 * y_;
  } else {
    u = x_;
    v = 2 * y_;
  }
  require(u % den_ == 0 && v % den_ == 0, errc::internal_inconsistency, "non-integral element");
  return {u / den_, v / den_};
}

mpz_class QuadElement::norm() const {
  mpz_class n = x_ * x_ - D_ * y_ * y_;
  require(n % (den_ * den_) == 0, errc::internal_inconsistency, "norm not integral");
  return n / (den_ * den_);
}

QuadElement QuadElement::conj() const { return QuadElement(D_, x_, -y_, den_); }
QuadElement QuadElement::operator-() const { return QuadElement(D_, -x_, -y_, den_); }

static void check_same_field(const QuadElement& a, const QuadElement& b) {
  require(a.D() == b.D(), errc::parameter_mismatch, "elements of different fields");
}

QuadElement QuadElement::operator+(const QuadElement& o) const {
  check_same_field(*this, o);
  mpz_class d = den_ * o.den_ / gcd(den_, o.den_);
  return QuadElement(D_, x_ * (d / den_) + o.x_ * (d / o.den_), y_ * (d / den_) + o.y_ * (d / o.den_), d);
}

QuadElement QuadElement::operator-(const QuadElement& o) const { return *this + (-o); }

QuadElement QuadElement::operator*(const QuadElement& o) const {
  check_same_field(*this, o);
  mpz_class nx = x_ * o.x_ + y_ * o.y_ * D_;
  mpz_class ny = x_ * o.y_ + y_ * o.x_;
  mpz_class nd = den_ * o.den_;
  if (nd == 4) {
    require(nx % 2 == 0 && ny % 2 == 0, errc::internal_inconsistency, "product not half-integral");
    nx /= 2;
    ny /= 2;
    nd = 2;
  }
  return QuadElement(D_, nx, ny, nd);
}

QuadElement QuadElement::pow(unsigned long e) const {
  QuadElement r = from_int(D_, 1);
  QuadElement b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool QuadElement::operator==(const QuadElement& o) const {
  return D_ == o.D_ && x_ * o.den_ == o.x_ * den_ && y_ * o.den_ == o.y_ * den_;
}

std::string QuadElement::str() const {
  std::string s = "(" + x_.get_str();
  if (y_ >= 0) s += "+" + y_.get_str();
  else s += y_.get_str();
  s += "*sqrt(" + D_.get_str() + "))";
  if (den_ == 2) s += "/2";
  return s;
}

// --- ideal lattices -------------------------------------------------------

// omega multiplication parameters: omega^2 = tr*omega - nm.
static void omega_params(const mpz_class& D, mpz_class& tr, mpz_class& nm) {
  if (mod_pos(D, 4) == 1) {
    tr = 1;
    nm = (1 - D) / 4;
  } else {
    tr = 0;
    nm = -D / 4;
  }
}

IdealHNF IdealHNF::from_ab(const mpz_class& D, const QuadIdeal& I) {
  require(mod_pos(I.b * I.b - D, 4 * I.a) == 0, errc::usage, "b^2 ≢ D mod 4a");
  mpz_class t;
  if (mod_pos(D, 4) == 1) {
    require(mod_pos(I.b, 2) == 1, errc::usage, "b parity");
    t = (I.b - 1) / 2;
  } else {
    require(mod_pos(I.b, 2) == 0, errc::usage, "b parity");
    t = I.b / 2;
  }
  return IdealHNF{D, I.a, mod_pos(t, I.a), 1};
}

QuadIdeal IdealHNF::to_ab() const {
  require(s == 1, errc::internal_inconsistency, "not a primitive ideal");
  mpz_class b = 2 * t;
  if (mod_pos(D, 4) == 1) b += 1;
  return QuadIdeal{a, mod_pos(b, 2 * a)};
}

bool IdealHNF::contains(const QuadElement& e) const {
  require(e.D() == D, errc::parameter_mismatch, "element of different field");
  auto [u, v] = e.omega_coords();
  if (v % s != 0) return false;
  mpz_class w = v / s;
  return mod_pos(u - w * t, a) == 0;
}

// HNF of the lattice generated by rows (u_i, v_i) on the basis (1, omega).
static IdealHNF hnf_from_rows(const mpz_class& D, std::vector<std::pair<mpz_class, mpz_class>> rows) {
  mpz_class a_acc = 0;
  mpz_class ct = 0, cs = 0;  // current (t, s) row with s != 0
  for (auto& [u, v] : rows) {
    if (v == 0) {
      a_acc = gcd(a_acc, u);
      continue;
    }
    if (cs == 0) {
      ct = u;
      cs = v;
      continue;
    }
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), cs.get_mpz_t(), v.get_mpz_t());
    mpz_class nt = x * ct + y * u;
    // leftover pure-integer row from the eliminated combination
    mpz_class lu = (cs / g) * u - (v / g) * ct;
    a_acc = gcd(a_acc, lu);
    ct = nt;
    cs = g;
  }
  require(cs != 0 && a_acc != 0, errc::internal_inconsistency, "lattice not of full rank");
  if (cs < 0) {
    cs = -cs;
    ct = -ct;
  }
  if (a_acc < 0) a_acc = -a_acc;
  return IdealHNF{D, a_acc, mod_pos(ct, a_acc), cs};
}

IdealHNF IdealHNF::mul(const IdealHNF& o) const {
  require(D == o.D, errc::parameter_mismatch, "ideals of different fields");
  mpz_class tr, nm;
  omega_params(D, tr, nm);
  // generators: products of (a,0),(t,s) with (o.a,0),(o.t,o.s)
  auto prod = [&](const mpz_class& u1, const mpz_class& v1, const mpz_class& u2,
                  const mpz_class& v2) -> std::pair<mpz_class, mpz_class> {
    return {u1 * u2 - v1 * v2 * nm, u1 * v2 + v1 * u2 + v1 * v2 * tr};
  };
  std::vector<std::pair<mpz_class, mpz_class>> rows;
  rows.push_back(prod(a, 0, o.a, 0));
  rows.push_back(prod(a, 0, o.t, o.s));
  rows.push_back(prod(t, s, o.a, 0));
  rows.push_back(prod(t, s, o.t, o.s));
  return hnf_from_rows(D, std::move(rows));
}

IdealHNF IdealHNF::pow(unsigned long e) const {
  IdealHNF r = IdealHNF::one(D);
  IdealHNF b = *this;
  while (e) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

IdealHNF IdealHNF::primitive_part() const {
  mpz_class g = gcd(gcd(a, t), s);
  return IdealHNF{D, a / g, t / g, s / g};
}

// --- generators -----------------------------------------------------------

QuadElement ideal_generator(const mpz_class& D, const IdealHNF& I, const mpz_class& expected_norm,
                            const GeneratorOptions& opt) {
  require(expected_norm > 0, errc::usage, "norm must be positive");
  require(expected_norm <= opt.norm_budget, errc::budget_exceeded,
          "norm " + expected_norm.get_str() + " exceeds the generator search budget");
  require(I.norm() == expected_norm, errc::usage, "expected norm must equal N(I)");
  // The norm form is positive definite, and beta in I has N(beta) >= N(I)
  // with equality exactly for generators. Lagrange-Gauss reduction of the
  // HNF basis therefore finds every generator as a minimal vector.
  auto Q = [&](const mpz_class& u, const mpz_class& v) -> mpz_class {
    if (mod_pos(D, 4) == 1) return mpz_class(u * u + u * v + v * v * ((1 - D) / 4));
    return mpz_class(u * u + v * v * (-D / 4));
  };
  mpz_class u1 = I.a, v1 = 0;
  mpz_class u2 = I.t, v2 = I.s;
  mpz_class q1 = Q(u1, v1), q2 = Q(u2, v2);
  while (true) {
    if (q1 > q2) {
      std::swap(u1, u2);
      std::swap(v1, v2);
      std::swap(q1, q2);
    }
    // mu = nearest integer to B(b1,b2)/Q(b1), with 2B = Q(b1+b2)-Q(b1)-Q(b2)
    mpz_class twoB = Q(u1 + u2, v1 + v2) - q1 - q2;
    mpz_class num = twoB, den = 2 * q1;
    mpz_class mu;
    // round to nearest (ties toward zero are fine for termination)
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class r = num - fl * den;
    mu = (2 * r >= den) ? fl + 1 : fl;
    if (mu == 0) break;
    u2 -= mu * u1;
    v2 -= mu * v1;
    q2 = Q(u2, v2);
  }
  std::vector<QuadElement> candidates;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y) {
      if (x == 0 && y == 0) continue;
      mpz_class u = x * u1 + y * u2, v = x * v1 + y * v2;
      if (Q(u, v) != expected_norm) continue;
      QuadElement e = QuadElement::from_omega(D, u, v);
      require(e.norm() == expected_norm && I.contains(e), errc::internal_inconsistency,
              "reduced lattice vector escaped the ideal");
      candidates.push_back(e);
    }
  require(!candidates.empty(), errc::not_principal,
          "no generator of norm " + expected_norm.get_str());
  // normalize: y >= 0, then x > 0 on ties; deterministic pick by (y/den, x/den)
  std::vector<QuadElement> keep;
  for (const auto& e : candidates) {
    if (e.y() > 0 || (e.y() == 0 && e.x() > 0)) keep.push_back(e);
  }
  require(!keep.empty(), errc::internal_inconsistency, "sign normalization removed all candidates");
  std::sort(keep.begin(), keep.end(), [](const QuadElement& A, const QuadElement& B) {
    mpz_class l = A.y() * B.den(), r = B.y() * A.den();
    if (l != r) return l < r;
    l = A.x() * B.den();
    r = B.x() * A.den();
    return l < r;
  });
  return keep.front();
}

QuadElement ideal_pow_generator(const mpz_class& D, const QuadIdeal& P0, unsigned long h,
                                const GeneratorOptions& opt) {
  IdealHNF I = IdealHNF::from_ab(D, P0);
  mpz_class n = I.norm();
  mpz_class nh;
  mpz_pow_ui(nh.get_mpz_t(), n.get_mpz_t(), h);
  require(nh <= opt.norm_budget, errc::budget_exceeded,
          "p^h = " + nh.get_str() + " exceeds enumeration budget");
  return ideal_generator(D, I.pow(h), nh, opt);
}

PadicInt embed(const QuadElement& elem, long p, int prec, int which_root) {
  require(which_root == 0 || which_root == 1, errc::usage, "which_root must be 0 or 1");
  PadicInt t = hensel_sqrt(elem.D(), p, prec);
  mpz_class root = which_root == 0 ? t.value() : t.modulus() - t.value();
  mpz_class den_inv;
  mpz_class den = elem.den();
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), t.modulus().get_mpz_t());
  return PadicInt(p, prec, (elem.x() + elem.y() * root) * den_inv);
}

// --- class group helpers ---------------------------------------------------

QuadForm principal_form(const mpz_class& D) {
  mpz_class b = mod_pos(D, 2);
  return QuadForm{1, b, (b * b - D) / 4};
}

IdealHNF form_to_ideal(const QuadForm& f) {
  mpz_class D = f.disc();
  return IdealHNF::from_ab(D, QuadIdeal{f.a, mod_pos(-f.b, 2 * f.a)});
}

static QuadForm ideal_to_form(const IdealHNF& I) {
  QuadIdeal ab = I.to_ab();
  mpz_class b = mod_pos(-ab.b, 2 * ab.a);
  // shift b into a representative with b ≡ D mod 2 kept by construction
  mpz_class D = I.D;
  mpz_class c = (b * b - D) / (4 * ab.a);
  return QuadForm{ab.a, b, c};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  require(f.disc() == g.disc(), errc::parameter_mismatch, "forms of different discriminant");
  IdealHNF I = form_to_ideal(f).mul(form_to_ideal(g)).primitive_part();
  return ideal_to_form(I).reduced();
}

unsigned long form_order(const QuadForm& f, unsigned long h_bound) {
  QuadForm id = principal_form(f.disc());
  QuadForm acc = f.reduced();
  for (unsigned long k = 1; k <= h_bound; ++k) {
    if (acc == id) return k;
    acc = compose(acc, f);
  }
  fail(errc::internal_inconsistency, "order exceeds class-number bound");
}

// --- Gold test --------------------------------------------------------------

GoldReport gold_test(const mpz_class& D, long p, int prec, const GeneratorOptions& opt) {
  QuadField K(D);
  require(prec >= 3, errc::precision_too_low, "need precision >= 3");
  auto st = split_type(D, p);
  require(st == SplitType::split, errc::not_split,
          "p = " + std::to_string(p) + " is " + split_type_name(st) + " in Q(sqrt(" + D.get_str() + "))");

  mpz_class h = (mpz_class)(long)reduced_forms(D).size();
  if (D < -4) {
    mpz_class h2 = class_number_dirichlet(D);
    require(h == h2, errc::internal_inconsistency, "class number oracles disagree");
  }
  require(h % p != 0, errc::precondition_p_divides_h,
          "p divides h_K = " + h.get_str());

  auto [P0, P0t] = prime_above(D, p);
  QuadElement alpha = ideal_pow_generator(D, P0, h.get_ui(), opt);

  // The completion at P0~ sends sqrt(D) to the Hensel root congruent to +b,
  // where b is P0's coefficient (the P0-embedding kills (b+sqrt(D))/2).
  PadicInt t = hensel_sqrt(D, p, prec);
  int which = (mod_pos(t.value(), p) == mod_pos(P0.b, p)) ? 0 : 1;
  PadicInt u = embed(alpha, p, prec, which);
  require(u.is_unit(), errc::internal_inconsistency, "alpha is not a unit at P0~");

  bool verdict = gold_local_test(u);

  // independent route: alpha^(p-1) ≡ 1 mod P0~^2 through O_K / P0~^2 ≅ Z/p^2
  {
    mpz_class p2 = mpz_class(p) * p;
    mpz_class b2(-1);
    for (long j = 0; j < p; ++j) {
      mpz_class cand = mod_pos(P0.b, p) + mpz_class(j) * p;
      if (mod_pos(cand * cand - D, p2) == 0) {
        b2 = cand;
        break;
      }
    }
    require(b2 >= 0, errc::internal_inconsistency, "no mod-p^2 lift of b");
    mpz_class den_inv;
    mpz_class den = alpha.den();
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p2.get_mpz_t());
    mpz_class a2 = mod_pos((alpha.x() + alpha.y() * b2) * den_inv, p2);
    mpz_class pw;
    mpz_class e(p - 1);
    mpz_powm(pw.get_mpz_t(), a2.get_mpz_t(), e.get_mpz_t(), p2.get_mpz_t());
    require((pw == 1) == verdict, errc::internal_inconsistency,
            "direct congruence disagrees with the local test");
  }

  GoldReport rep;
  rep.disc = D;
  rep.p = p;
  rep.h_K = h;
  rep.split_type = SplitType::split;
  rep.alpha = alpha;
  rep.log_val = padic_log(u);
  rep.lambda_ge_2 = verdict;
  rep.s_count = 2;
  rep.experimental = false;
  return rep;
}

GoldReport nonsplit_lambda2_test(const mpz_class& D, long p, int prec,
                                 const GeneratorOptions& opt) {
  QuadField K(D);
  require(prec >= 3, errc::precision_too_low, "need precision >= 3");
  auto st = split_type(D, p);
  require(st != SplitType::split, errc::usage, "p splits; use the Gold test");

  auto forms = reduced_forms(D);
  unsigned long h = forms.size();
  // p-torsion census: cyclic p-part ⟺ exactly p classes killed by p
  std::vector<QuadForm> torsion;
  QuadForm id = principal_form(D);
  for (const auto& f : forms) {
    QuadForm fp = f;
    QuadForm acc = id;
    for (long i = 0; i < p; ++i) acc = compose(acc, fp);
    if (acc == id) torsion.push_back(f);
  }
  require(torsion.size() > 1, errc::no_order_p_class, "Cl(K)[p] is trivial");
  require(torsion.size() == (std::size_t)p, errc::not_cyclic,
          "Cl(K)[p^infty] is not cyclic");

  // an order-p class represented by a form with p coprime to a
  std::optional<QuadForm> pick;
  for (const auto& f : torsion) {
    if (f == id) continue;
    if (f.a % p != 0) {
      pick = f;
      break;
    }
    QuadForm rot{f.c, -f.b, f.a};  // equivalent form through [[0,-1],[1,0]]
    if (rot.a % p != 0) {
      pick = rot;
      break;
    }
  }
  require(pick.has_value(), errc::no_order_p_class,
          "no order-p class with representative coprime to p");

  IdealHNF I = form_to_ideal(*pick);
  mpz_class nI = I.norm();
  mpz_class np;
  mpz_pow_ui(np.get_mpz_t(), nI.get_mpz_t(), (unsigned long)p);
  require(np <= opt.norm_budget, errc::budget_exceeded, "N(I)^p exceeds enumeration budget");
  QuadElement alpha = ideal_generator(D, I.pow((unsigned long)p), np, opt);

  mpz_class nrm = alpha.norm();
  require(mod_pos(nrm, p) != 0, errc::internal_inconsistency, "norm of alpha not a p-unit");
  PadicInt u(p, prec, nrm);
  bool verdict = gold_local_test(u);

  GoldReport rep;
  rep.disc = D;
  rep.p = p;
  rep.h_K = (long)h;
  rep.split_type = st;
  rep.alpha = alpha;
  rep.log_val = padic_log(u);
  rep.lambda_ge_2 = verdict;
  rep.s_count = 1;
  rep.experimental = true;
  return rep;
}

} // namespace iwm
