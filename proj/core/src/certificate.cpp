#include "iwm/certificate.hpp"

#include <algorithm>

#include "json.hpp"

namespace iwm {

static mpz_class json_int(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer()) return mpz_class((long)j.get<long long>());
  fail(errc::malformed_certificate, "expected an integer or decimal string");
}

BetaCertificate BetaCertificate::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::malformed_certificate, std::string("bad JSON: ") + e.what());
  }
  BetaCertificate c;
  try {
    c.disc = json_int(j.at("disc"));
    c.p = (long)json_int(j.at("p")).get_si();
    for (const auto& t : j.at("beta")) {
      require(t.size() == 3, errc::malformed_certificate, "beta entries are [x, y, den]");
      c.beta.push_back({json_int(t[0]), json_int(t[1]), json_int(t[2])});
    }
    const auto& a1 = j.at("alpha1");
    require(a1.size() == 3, errc::malformed_certificate, "alpha1 is [x, y, den]");
    c.alpha1 = {json_int(a1[0]), json_int(a1[1]), json_int(a1[2])};
    if (j.contains("prime_data") && !j["prime_data"].is_null())
      for (const auto& q : j["prime_data"]) c.prime_data.push_back(json_int(q));
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::malformed_certificate, std::string("missing field: ") + e.what());
  }
  require((long)c.beta.size() == c.p, errc::malformed_certificate,
          "beta must have exactly p coordinates");
  return c;
}

std::string BetaCertificate::to_json() const {
  nlohmann::json j;
  j["disc"] = disc.get_str();
  j["p"] = std::to_string(p);
  nlohmann::json bb = nlohmann::json::array();
  for (const auto& t : beta)
    bb.push_back({t[0].get_str(), t[1].get_str(), t[2].get_str()});
  j["beta"] = bb;
  j["alpha1"] = {alpha1[0].get_str(), alpha1[1].get_str(), alpha1[2].get_str()};
  if (!prime_data.empty()) {
    nlohmann::json pd = nlohmann::json::array();
    for (const auto& q : prime_data) pd.push_back(q.get_str());
    j["prime_data"] = pd;
  }
  return j.dump(2);
}

K1Element BetaCertificate::beta_element(const std::shared_ptr<const PeriodField>& pf) const {
  std::vector<QuadElement> coeffs;
  for (const auto& t : beta) {
    try {
      coeffs.emplace_back(disc, t[0], t[1], t[2]);
    } catch (const error& e) {
      fail(errc::malformed_certificate, std::string("bad beta coordinate: ") + e.what());
    }
  }
  return K1Element(pf, disc, std::move(coeffs));
}

QuadElement BetaCertificate::alpha1_element() const {
  try {
    return QuadElement(disc, alpha1[0], alpha1[1], alpha1[2]);
  } catch (const error& e) {
    fail(errc::malformed_certificate, std::string("bad alpha1: ") + e.what());
  }
}

// ---- valuations in K_1 through a primitive element --------------------------

namespace {

// rational coordinates of a K1Element on the 2p-dimensional Q-basis
// (B_i) x (1, sqrt(D))
std::vector<mpq_class> flat_coords(const K1Element& e) {
  std::vector<mpq_class> out;
  out.reserve(2 * e.coeffs().size());
  for (const auto& c : e.coeffs()) {
    out.emplace_back(mpq_class(c.x()) / mpq_class(c.den()));
    out.emplace_back(mpq_class(c.y()) / mpq_class(c.den()));
  }
  return out;
}

struct GammaContext {
  K1Element gamma;
  ZPoly min_poly;                            // monic, degree 2p, integer
  std::vector<std::vector<mpq_class>> pow_coords;  // columns gamma^0..gamma^(2p-1)

  GammaContext(const K1Element& g, ZPoly mp, std::vector<std::vector<mpq_class>> pc)
      : gamma(g), min_poly(std::move(mp)), pow_coords(std::move(pc)) {}
};

std::optional<GammaContext> build_gamma(const std::shared_ptr<const PeriodField>& pf,
                                        const mpz_class& D, long s) {
  long p = pf->p();
  std::size_t deg = 2 * (std::size_t)p;
  // gamma = eta_0 + s * omega
  QuadElement omega = (((D % 4) + 4) % 4 == 1) ? QuadElement(D, 1, 1, 2) : QuadElement(D, 0, 1, 2);
  K1Element gamma(pf, D);
  gamma.coeff(0) = omega * QuadElement::from_int(D, s);
  gamma.coeff(1) = QuadElement::from_int(D, 1);

  std::vector<K1Element> powers;
  powers.push_back(K1Element::one(pf, D));
  for (std::size_t k = 1; k <= deg; ++k) powers.push_back(powers.back() * gamma);

  std::vector<std::vector<mpq_class>> A(deg, std::vector<mpq_class>(deg, 0));
  std::vector<mpq_class> b(deg, 0);
  for (std::size_t k = 0; k < deg; ++k) {
    auto col = flat_coords(powers[k]);
    for (std::size_t r = 0; r < deg; ++r) A[r][k] = col[r];
  }
  auto top = flat_coords(powers[deg]);
  for (std::size_t r = 0; r < deg; ++r) b[r] = top[r];
  auto sol = solve_rational(A, b);
  if (!sol) return std::nullopt;  // gamma not primitive
  ZPoly mp(deg + 1, 0);
  mp[deg] = 1;
  for (std::size_t k = 0; k < deg; ++k) {
    mpq_class c = -(*sol)[k];
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;  // not an algebraic integer relation
    mp[k] = c.get_num();
  }
  return GammaContext(gamma, std::move(mp), std::move(A));
}

} // namespace

std::vector<std::pair<long, long>> k1_valuations_above(const K1Element& nu, const mpz_class& q) {
  require(!nu.is_zero(), errc::usage, "valuation of zero");
  require(mpz_probab_prime_p(q.get_mpz_t(), 30) != 0, errc::usage, "q must be prime");
  const auto& pf = nu.field();
  long p = pf->p();
  require(q != p, errc::usage, "q = p is excluded from the valuation condition");
  std::size_t deg = 2 * (std::size_t)p;

  // try primitive-element candidates until one is q-maximal
  std::optional<GammaContext> ctx;
  for (long s = 1; s <= 6 && !ctx; ++s) {
    auto cand = build_gamma(pf, nu.D(), s);
    if (!cand) continue;
    if (dedekind_q_maximal(cand->min_poly, q)) ctx = std::move(cand);
  }
  require(ctx.has_value(), errc::index_divisor,
          "q = " + q.get_str() + " divides the index of every tried period order");

  // express nu as a polynomial in gamma with a common denominator
  auto target = flat_coords(nu);
  auto sol = solve_rational(ctx->pow_coords, target);
  require(sol.has_value(), errc::internal_inconsistency, "nu not in the gamma power basis");
  mpz_class den = 1;
  for (auto& c : *sol) {
    c.canonicalize();
    den = lcm(den, c.get_den());
  }
  ZPoly P(deg, 0);
  for (std::size_t k = 0; k < deg; ++k) {
    mpq_class scaled = (*sol)[k] * den;
    scaled.canonicalize();
    require(scaled.get_den() == 1, errc::internal_inconsistency, "denominator clearing failed");
    P[k] = scaled.get_num();
  }
  P = zp_trim(std::move(P));
  long vden = valuation_z(den == 0 ? mpz_class(1) : den, q);
  if (den == 1) vden = 0;

  // exact |N(den*nu)| for the precision bound, via the relative norm tower
  mpz_class n_abs;
  {
    QuadElement w = relative_norm(nu);
    mpq_class nq = mpq_class(w.norm());
    mpq_class dq;
    mpz_class dpow;
    mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), (unsigned long)deg);
    nq *= mpq_class(dpow);
    nq.canonicalize();
    require(nq.get_den() == 1 && nq != 0, errc::internal_inconsistency, "norm not integral");
    n_abs = abs(mpz_class(nq.get_num()));
  }
  long vn = (n_abs % q == 0) ? valuation_z(n_abs, q) : 0;
  int m = (int)vn + 3;
  mpz_class qm = pow_int(q, (unsigned long)m);

  auto facs = factor_mod_q(ctx->min_poly, q);
  std::vector<ZPoly> blocks;
  for (const auto& f : facs) {
    ZPoly blk{1};
    for (int i = 0; i < f.multiplicity; ++i) blk = zp_mod_coeffs(zp_mul(blk, f.poly), q);
    blocks.push_back(blk);
  }
  std::vector<ZPoly> lifted = hensel_lift_blocks(ctx->min_poly, blocks, q, m);

  std::vector<std::pair<long, long>> out;
  long vsum = 0;
  for (std::size_t bi = 0; bi < lifted.size(); ++bi) {
    const ZPoly& F = lifted[bi];
    long fdeg = zp_deg(facs[bi].poly);
    long e = facs[bi].multiplicity;
    std::size_t bd = (std::size_t)zp_deg(F);
    // multiplication matrix of P in (Z/q^m)[x]/(F)
    std::vector<std::vector<mpz_class>> M(bd, std::vector<mpz_class>(bd, 0));
    ZPoly xj{1};
    for (std::size_t j = 0; j < bd; ++j) {
      ZPoly col = zp_mulmod(P, xj, F, qm);
      for (std::size_t r = 0; r < bd; ++r) M[r][j] = r < col.size() ? col[r] : mpz_class(0);
      xj = zp_mulmod(xj, ZPoly{0, 1}, F, qm);
    }
    mpz_class det = zmat_det(M) % qm;
    if (det < 0) det += qm;
    require(det != 0, errc::internal_inconsistency, "valuation precision too small");
    long vq = valuation_z(det, q);
    require(vq % fdeg == 0, errc::internal_inconsistency, "block valuation not divisible by f");
    long v_scaled = vq / fdeg;         // valuation of den*nu at this prime
    long v = v_scaled - e * vden;      // correct for the denominator
    require(v >= 0, errc::internal_inconsistency, "negative valuation of an integral element");
    out.emplace_back(fdeg, v);
    vsum += vq;
  }
  require(vsum == vn, errc::internal_inconsistency,
          "valuations do not sum to the norm valuation");
  return out;
}

CertificateReport verify_certificate(const BetaCertificate& cert, const CertificateOptions& opt) {
  require(opt.prec >= 3, errc::precision_too_low, "need precision >= 3");
  QuadField K(cert.disc);
  require(split_type(cert.disc, cert.p) == SplitType::split, errc::not_split,
          "p must split for the certificate chain");
  auto pf = PeriodField::build(cert.p);
  K1Element beta = cert.beta_element(pf);
  require(!beta.is_zero(), errc::malformed_certificate, "beta must be nonzero");
  QuadElement alpha1 = cert.alpha1_element();
  require(!alpha1.is_zero(), errc::malformed_certificate, "alpha1 must be nonzero");

  CertificateReport rep;
  rep.disc = cert.disc;
  rep.p = cert.p;

  // alpha: injected by tests, or derived from (disc, p) as in the Gold chain
  QuadElement alpha = [&]() {
    if (opt.alpha_override) return *opt.alpha_override;
    mpz_class h = (long)reduced_forms(cert.disc).size();
    require(h % cert.p != 0, errc::precondition_p_divides_h, "p divides h_K");
    auto [P0, P0t] = prime_above(cert.disc, cert.p);
    return ideal_pow_generator(cert.disc, P0, h.get_ui(), opt.gen);
  }();
  rep.alpha = alpha;

  // (i) relative norm matches alpha up to sign
  QuadElement nrm = relative_norm(beta);
  if (nrm == alpha)
    rep.matched_sign = 1;
  else if (nrm == -alpha)
    rep.matched_sign = -1;
  else
    fail(errc::norm_mismatch,
         "N(beta) = " + nrm.str() + " differs from ±alpha = ±" + alpha.str());
  rep.norm_ok = true;
  if (opt.norm_check_only) return rep;

  // (ii) A_1'
  K1Element a1 = a_product(beta, 1);
  K1Element nu = a1 * K1Element::constant(pf, cert.disc, alpha1);

  // (iii) valuations at primes q != p of the absolute norm
  {
    QuadElement w = relative_norm(nu);
    mpz_class n_abs = w.norm();
    require(n_abs != 0, errc::internal_inconsistency, "norm vanished");
    auto primes = factor_integer(n_abs, cert.prime_data);
    for (const auto& [q, e] : primes) {
      if (q == cert.p) continue;
      auto vals = k1_valuations_above(nu, q);
      long maxv = 0;
      for (const auto& [f, v] : vals) {
        maxv = std::max(maxv, v);
        require(v % cert.p == 0, errc::valuation_fail,
                "v_Q(alpha1 * A1') = " + std::to_string(v) + " at a prime above q = " +
                    q.get_str() + " is not divisible by p");
      }
      rep.checked_primes.emplace_back(q, maxv);
    }
  }
  rep.valuations_ok = true;

  // (iv) local test on alpha_1 at the P0~ root
  auto [P0, P0t] = prime_above(cert.disc, cert.p);
  PadicInt t = hensel_sqrt(cert.disc, cert.p, opt.prec);
  mpz_class tb = t.value() % cert.p;
  int which = (tb == ((P0.b % cert.p) + cert.p) % cert.p) ? 0 : 1;
  PadicInt u = embed(alpha1, cert.p, opt.prec, which);
  require(u.is_unit(), errc::not_a_unit, "alpha1 is not a unit at the completion");
  rep.lambda_ge_3 = gold_local_test(u);
  rep.log_val = padic_log(u);
  return rep;
}

} // namespace iwm
