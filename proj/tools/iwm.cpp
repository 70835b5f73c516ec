// iwm: lambda-invariant bounds for imaginary quadratic fields through exact
// arithmetic, plus demos of the underlying Bockstein/Massey machinery.
#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "iwm/bockstein.hpp"
#include "iwm/certificate.hpp"
#include "iwm/massey.hpp"
#include "iwm/report.hpp"

using namespace iwm;

namespace {

long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Timer {
  long t0 = now_ms();
  long elapsed() const { return now_ms() - t0; }
};

int cmd_gold(long disc, long p, int prec, bool json, bool nonsplit_experimental,
             const mpz_class& budget) {
  Timer timer;
  GeneratorOptions gen;
  if (budget > 0) gen.norm_budget = budget;
  GoldReport g;
  if (nonsplit_experimental && split_type(mpz_class(disc), p) != SplitType::split)
    g = nonsplit_lambda2_test(mpz_class(disc), p, prec, gen);
  else
    g = gold_test(mpz_class(disc), p, prec, gen);
  LambdaReport rep = ladder_from_gold(g, timer.elapsed());
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << rep.human();
    std::cout << "  h_K = " << g.h_K.get_str() << ", " << split_type_name(g.split_type)
              << ", alpha = " << g.alpha.str() << ", log_p = " << g.log_val.str() << "\n";
    if (g.experimental)
      std::cout << "  EXPERIMENTAL: the nonsplit criterion is a derived reduction, not a"
                   " published statement\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, int prec, bool json) {
  Timer timer;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open certificate file: " << path << "\n";
    return 4;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  BetaCertificate cert = BetaCertificate::from_json(ss.str());

  // the certificate is meaningful only past the lambda >= 2 gate
  GoldReport gate = gold_test(cert.disc, cert.p, prec);
  require(gate.lambda_ge_2, errc::hypothesis_failed,
          "lambda >= 2 fails for this (disc, p); the certificate decides nothing");

  CertificateOptions opt;
  opt.prec = prec;
  CertificateReport crep = verify_certificate(cert, opt);
  LambdaReport rep = ladder_from_gold(gate, 0);
  rep.verdicts.pop_back();  // replace NEEDS_CERTIFICATE with the decided level
  rep.push(3, crep.lambda_ge_3 ? LevelStatus::proved : LevelStatus::refuted,
           "certificate chain: norm matched (sign " + std::to_string(crep.matched_sign) +
               "), valuations checked at " + std::to_string(crep.checked_primes.size()) +
               " primes, log_p(alpha_1) = " + crep.log_val.str());
  rep.timing_ms = timer.elapsed();
  std::cout << (json ? rep.to_json() + "\n" : rep.human());
  return 0;
}

int cmd_sweep(long dmin, long dmax, long p, int prec, const std::string& out_path,
              const mpz_class& budget) {
  require(dmin <= dmax, errc::usage, "need dmin <= dmax");
  std::vector<long> discs;
  for (long d = dmax; d >= dmin; --d) {
    if (d >= 0) continue;
    if (!is_fundamental_discriminant(d)) continue;
    if (split_type(d, p) != SplitType::split) continue;
    if (mpz_class((long)reduced_forms(d).size()) % p == 0) continue;
    discs.push_back(d);
  }
  std::sort(discs.begin(), discs.end(),
            [](long a, long b) { return std::llabs(a) < std::llabs(b); });

  GeneratorOptions gen;
  if (budget > 0) gen.norm_budget = budget;
  std::vector<std::string> rows(discs.size());
  // fan out over discriminants; rows are joined in deterministic order
  std::size_t workers = std::min<std::size_t>(std::max<std::size_t>(discs.size(), 1), 8);
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= discs.size()) return;
        try {
          rows[i] = gold_report_to_json(gold_test(mpz_class(discs[i]), p, prec, gen));
        } catch (const error& e) {
          rows[i] = std::string(R"({"schema":1,"disc":")") + std::to_string(discs[i]) +
                    R"(","p":")" + std::to_string(p) + R"(","error":")" + errc_name(e.code()) +
                    R"("})";
        }
      }
    }));
  for (auto& f : futs) f.get();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    require(file.good(), errc::usage, "cannot open output file " + out_path);
    out = &file;
  }
  for (const auto& r : rows) (*out) << r << "\n";
  return 0;
}

// --- demo suites -------------------------------------------------------------

CharacterChi identity_chi(const FiniteGroup& Zn, uint64_t p, int level) {
  std::vector<uint64_t> vals(Zn.order());
  for (int g = 0; g < Zn.order(); ++g) vals[g] = (uint64_t)g;
  return CharacterChi(Zn, p, level, vals);
}

Cochain1 random_combo(const std::vector<Cochain1>& basis, uint64_t p, std::mt19937& rng) {
  Cochain1 out(basis.at(0).size(), 0);
  std::uniform_int_distribution<uint64_t> d(0, p - 1);
  for (const auto& b : basis) {
    uint64_t c = d(rng);
    if (!c) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fp::add(out[i], fp::mul(c, b[i], p), p);
  }
  return out;
}

bool demo_bockstein(long p, bool verbose) {
  FiniteGroup Zp2 = FiniteGroup::cyclic((int)(p * p));
  FpModule T(Zp2, (uint64_t)p, 1);
  CharacterChi chi = identity_chi(Zp2, (uint64_t)p, 2);
  CohomologyContext ctxT(T);
  std::mt19937 rng(4242);
  int agree = 0, total = 0;
  for (std::size_t n : {1u, 2u}) {
    OmegaModule W = OmegaModule::build(T, chi, n);
    CohomologyContext ctxW(W.mod);
    for (int i = 0; i < 50; ++i) {
      Cochain1 f = random_combo(ctxW.z1_basis(), (uint64_t)p, rng);
      Cochain2 a = bockstein_direct(W, f);
      Cochain2 b = bockstein_formula(T, chi, omega_cochain_layers(W, f));
      ++total;
      if (ctxT.same_class2(a, b)) ++agree;
    }
  }
  if (verbose)
    std::cout << "bockstein direct-vs-formula agreement: " << agree << "/" << total << "\n";
  return agree == total && total == 100;
}

bool demo_massey(long p, bool verbose) {
  FiniteGroup G = FiniteGroup::cyclic((int)(p * p));
  FpModule T(G, (uint64_t)p, 1);
  CharacterChi chi = identity_chi(G, (uint64_t)p, 2);
  OmegaModule W2 = OmegaModule::build(T, chi, 2);
  CohomologyContext ctx(W2.mod);
  const auto& basis = ctx.z1_basis();
  std::size_t k = basis.size();
  std::vector<uint64_t> digits(k, 0);
  int checked = 0, vanished = 0;
  while (true) {
    Cochain1 f(W2.mod.dim() * G.order(), 0);
    for (std::size_t i = 0; i < k; ++i)
      if (digits[i])
        for (std::size_t t = 0; t < f.size(); ++t)
          f[t] = fp::add(f[t], fp::mul(digits[i], basis[i][t], (uint64_t)p), (uint64_t)p);
    DefiningSystem ds = proper_system(T, chi, omega_cochain_layers(W2, f));
    MasseyResult mv = massey_value(ds);
    bool lift = lift_search(ds).has_value();
    if (mv.vanishes != lift) return false;
    ++checked;
    if (mv.vanishes) ++vanished;
    std::size_t pos = 0;
    while (pos < k && ++digits[pos] == (uint64_t)p) digits[pos++] = 0;
    if (pos == k) break;
  }
  if (verbose)
    std::cout << "massey vanishing == lifting on " << checked << " proper systems (" << vanished
              << " vanish)\n";
  return checked > 0;
}

bool demo_mn(long p, long n, bool verbose) {
  MnGroup M = build_Mn((uint64_t)p, (std::size_t)n);
  mpz_class want = pow_int(mpz_class(p), (unsigned long)(n + 2));
  bool ok = mpz_class(M.group.order()) == want;
  auto comm = [&](int a, int b) {
    return M.group.mul(M.group.mul(a, b), M.group.mul(M.group.inv(a), M.group.inv(b)));
  };
  if (verbose) {
    std::cout << "M_" << n << " over F_" << p << ": order " << M.group.order() << "\n";
    std::cout << "relations:\n";
  }
  ok = ok && M.group.element_order(M.s) == (int)p;
  if (verbose) std::cout << "  s^" << p << " = 1\n";
  for (std::size_t k = 0; k <= (std::size_t)n; ++k) {
    ok = ok && (M.t[k] == 0 || M.group.element_order(M.t[k]) == (int)p);
    if (verbose) std::cout << "  t_" << k << "^" << p << " = 1\n";
  }
  for (std::size_t k = 0; k < (std::size_t)n; ++k) {
    ok = ok && comm(M.s, M.t[k]) == M.t[k + 1];
    if (verbose) std::cout << "  [s, t_" << k << "] = t_" << (k + 1) << "\n";
  }
  ok = ok && comm(M.s, M.t[(std::size_t)n]) == 0;
  if (verbose) std::cout << "  [s, t_" << n << "] = 1\n";
  return ok;
}

bool demo_equivariance(bool verbose) {
  FiniteGroup SG = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(9));
  FpMatrix sign(3, 1, 1);
  sign.set(0, 0, -1);
  FpModule T(SG, 3, 1, std::vector<FpMatrix>{sign, FpMatrix::identity(3, 1)});
  std::vector<int> G_elems, N_elems;
  for (int b = 0; b < 9; ++b) G_elems.push_back(SG.pair_index(0, b));
  for (int b : {0, 3, 6}) N_elems.push_back(SG.pair_index(0, b));
  std::vector<uint64_t> vals(SG.order(), 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 9; ++b) vals[SG.pair_index(a, b)] = (uint64_t)(b % 3);
  for (std::size_t n : {1u, 2u}) {
    if (!equivariance_check(T, G_elems, N_elems, vals, 1, n)) return false;
    if (verbose) std::cout << "Psi^(" << n << ") commutes with the Z/2 action\n";
  }
  return true;
}

bool demo_periods(long p, bool verbose) {
  auto pf = PeriodField::build(p);
  if (verbose) {
    std::cout << "Q_1 inside Q(mu_" << p * p << "), primitive root g = " << pf->primitive_root()
              << "\nmin poly of eta_0 (low to high):";
    for (const auto& c : pf->min_poly()) std::cout << " " << c.get_str();
    std::cout << "\n";
  }
  mpz_class D = -11;
  K1Element eta = eta_element(pf, D);
  QuadElement nrm = relative_norm(eta);
  bool ok = nrm == QuadElement::from_int(D, p);
  if (verbose) std::cout << "N(eta_1) = " << nrm.str() << "\n";
  for (long n = 1; n < p; ++n) ok = ok && group_ring_identity(p, n);
  if (verbose) std::cout << "group ring identities hold for 1 <= n < " << p << "\n";
  return ok;
}

int cmd_demo(const std::string& topic, long p, long n, bool verbose) {
  bool ok = false;
  if (topic == "bockstein")
    ok = demo_bockstein(p, verbose);
  else if (topic == "massey")
    ok = demo_massey(p, verbose);
  else if (topic == "mn")
    ok = demo_mn(p, n, verbose);
  else if (topic == "equivariance")
    ok = demo_equivariance(verbose);
  else if (topic == "periods")
    ok = demo_periods(p, verbose);
  else {
    std::cerr << "unknown demo topic: " << topic
              << " (expected bockstein, massey, mn, equivariance, periods)\n";
    return 1;
  }
  if (!ok) {
    std::cerr << "demo " << topic << ": invariant FAILED\n";
    return 5;
  }
  std::cout << "demo " << topic << ": ok\n";
  return 0;
}

int cmd_selftest() {
  struct Item {
    const char* name;
    bool ok;
  };
  std::vector<Item> items;
  items.push_back({"bockstein", demo_bockstein(3, false)});
  items.push_back({"massey", demo_massey(3, false)});
  items.push_back({"mn", demo_mn(3, 2, false)});
  items.push_back({"equivariance", demo_equivariance(false)});
  items.push_back({"periods", demo_periods(3, false) && demo_periods(5, false)});
  bool all = true;
  for (const auto& it : items) {
    std::cout << (it.ok ? "[ok]   " : "[FAIL] ") << it.name << "\n";
    all = all && it.ok;
  }
  return all ? 0 : 5;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-invariant bounds via exact cup/Massey-product arithmetic"};
  app.require_subcommand(1);

  long disc = 0, p = 3, n = 2, dmin = 0, dmax = 0;
  int prec = 8;
  bool json = false, nonsplit = false;
  std::string cert_path, out_path, topic;
  long long budget = 0;

  auto* gold = app.add_subcommand("gold", "lambda ladder for one (disc, p)");
  gold->add_option("--disc", disc, "fundamental discriminant < 0")->required();
  gold->add_option("--p", p, "odd prime");
  gold->add_option("--prec", prec, "p-adic working precision");
  gold->add_flag("--json", json, "emit the report as JSON");
  gold->add_flag("--nonsplit-experimental", nonsplit,
                 "run the derived inert/ramified criterion when p does not split");
  gold->add_option("--budget", budget, "generator enumeration budget");

  auto* verify = app.add_subcommand("verify", "verify a beta certificate (lambda >= 3 step)");
  verify->add_option("--cert", cert_path, "certificate JSON path")->required();
  verify->add_option("--prec", prec, "p-adic working precision");
  verify->add_flag("--json", json, "emit the report as JSON");

  auto* sweep = app.add_subcommand("sweep", "gold reports for a discriminant range");
  sweep->add_option("--dmin", dmin, "lowest discriminant (inclusive)")->required();
  sweep->add_option("--dmax", dmax, "highest discriminant (inclusive)")->required();
  sweep->add_option("--p", p, "odd prime");
  sweep->add_option("--prec", prec, "p-adic working precision");
  sweep->add_option("--out", out_path, "output path (JSON lines); stdout when omitted");
  sweep->add_option("--budget", budget, "generator enumeration budget");

  auto* demo = app.add_subcommand("demo", "run an engine showcase with verbose traces");
  demo->add_option("topic", topic, "bockstein | massey | mn | equivariance | periods")
      ->required();
  demo->add_option("--p", p, "odd prime");
  demo->add_option("--n", n, "tower index for mn");

  auto* selftest = app.add_subcommand("selftest", "run every demo suite quietly");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (gold->parsed()) return cmd_gold(disc, p, prec, json, nonsplit, mpz_class((long)budget));
    if (verify->parsed()) return cmd_verify(cert_path, prec, json);
    if (sweep->parsed())
      return cmd_sweep(dmin, dmax, p, prec, out_path, mpz_class((long)budget));
    if (demo->parsed()) return cmd_demo(topic, p, n, true);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 5;
  }
  return 1;
}
