#include "iwm/report.hpp"

#include <sstream>

#include "json.hpp"

namespace iwm {

const char* level_status_name(LevelStatus s) {
  switch (s) {
    case LevelStatus::proved: return "PROVED";
    case LevelStatus::refuted: return "REFUTED";
    case LevelStatus::needs_certificate: return "NEEDS_CERTIFICATE";
    case LevelStatus::experimental: return "EXPERIMENTAL";
  }
  return "?";
}

static LevelStatus level_status_from(const std::string& s) {
  if (s == "PROVED") return LevelStatus::proved;
  if (s == "REFUTED") return LevelStatus::refuted;
  if (s == "NEEDS_CERTIFICATE") return LevelStatus::needs_certificate;
  if (s == "EXPERIMENTAL") return LevelStatus::experimental;
  fail(errc::usage, "unknown level status " + s);
}

void LambdaReport::push(int level, LevelStatus status, std::string note) {
  verdicts.push_back(LevelVerdict{level, status, std::move(note)});
  check_monotone();
}

void LambdaReport::check_monotone() const {
  int refuted_at = -1;
  for (const auto& v : verdicts) {
    if (v.status == LevelStatus::refuted && (refuted_at < 0 || v.level < refuted_at))
      refuted_at = v.level;
  }
  if (refuted_at < 0) return;
  for (const auto& v : verdicts)
    require(!(v.status == LevelStatus::proved && v.level > refuted_at),
            errc::internal_inconsistency, "PROVED above a REFUTED level");
}

std::string LambdaReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["disc"] = disc.get_str();
  j["p"] = std::to_string(p);
  j["s_count"] = s_count;
  j["timing_ms"] = timing_ms;
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json jv;
    jv["level"] = v.level;
    jv["status"] = level_status_name(v.status);
    jv["note"] = v.note;
    vs.push_back(jv);
  }
  j["verdicts"] = vs;
  return j.dump(2);
}

LambdaReport LambdaReport::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  require(j.value("schema", 0) == 1, errc::usage, "unknown schema");
  LambdaReport r;
  r.disc = mpz_class(j.at("disc").get<std::string>());
  r.p = std::stol(j.at("p").get<std::string>());
  r.s_count = j.at("s_count").get<int>();
  r.timing_ms = j.at("timing_ms").get<long>();
  for (const auto& jv : j.at("verdicts"))
    r.verdicts.push_back(LevelVerdict{jv.at("level").get<int>(),
                                      level_status_from(jv.at("status").get<std::string>()),
                                      jv.at("note").get<std::string>()});
  r.check_monotone();
  return r;
}

bool LambdaReport::operator==(const LambdaReport& o) const {
  return disc == o.disc && p == o.p && verdicts == o.verdicts && s_count == o.s_count &&
         timing_ms == o.timing_ms;
}

std::string LambdaReport::human() const {
  std::ostringstream out;
  out << "lambda bounds for disc = " << disc.get_str() << ", p = " << p
      << "  (#S = " << s_count << ")\n";
  for (const auto& v : verdicts) {
    out << "  lambda >= " << v.level << "  " << level_status_name(v.status);
    if (!v.note.empty()) out << "  -- " << v.note;
    out << "\n";
  }
  return out.str();
}

LambdaReport ladder_from_gold(const GoldReport& g, long timing_ms) {
  LambdaReport r;
  r.disc = g.disc;
  r.p = g.p;
  r.s_count = g.s_count;
  r.timing_ms = timing_ms;
  if (g.split_type == SplitType::split) {
    r.push(1, LevelStatus::proved, "always holds in the split case");
    r.push(2, g.lambda_ge_2 ? LevelStatus::proved : LevelStatus::refuted,
           "log_p(alpha) ≡ 0 mod p^2 test, alpha = " + g.alpha.str());
    if (g.lambda_ge_2)
      r.push(3, LevelStatus::needs_certificate, "supply a beta certificate (verify command)");
  } else {
    r.push(1, LevelStatus::proved, "always holds with a nontrivial cyclic p-class group");
    r.push(2, g.lambda_ge_2 ? LevelStatus::experimental : LevelStatus::refuted,
           std::string("derived local-norm criterion (EXPERIMENTAL), alpha = ") + g.alpha.str());
  }
  return r;
}

LambdaReport ladder_from_certificate(const CertificateReport& c, long timing_ms) {
  LambdaReport r;
  r.disc = c.disc;
  r.p = c.p;
  r.s_count = 2;
  r.timing_ms = timing_ms;
  r.push(3, c.lambda_ge_3 ? LevelStatus::proved : LevelStatus::refuted,
         "certificate chain: norm, valuations, local test at alpha_1");
  return r;
}

std::string gold_report_to_json(const GoldReport& g) {
  nlohmann::json j;
  j["schema"] = 1;
  j["disc"] = g.disc.get_str();
  j["p"] = std::to_string(g.p);
  j["h_K"] = g.h_K.get_str();
  j["split_type"] = split_type_name(g.split_type);
  j["alpha"] = {g.alpha.x().get_str(), g.alpha.y().get_str(), g.alpha.den().get_str()};
  j["log_val"] = g.log_val.str();
  j["lambda_ge_2"] = g.lambda_ge_2;
  j["s_count"] = std::to_string(g.s_count);
  j["experimental"] = g.experimental;
  return j.dump();
}

} // namespace iwm
