#ifndef IWM_REPORT_HPP
#define IWM_REPORT_HPP

#include <string>
#include <vector>

#include "iwm/certificate.hpp"
#include "iwm/quad.hpp"

namespace iwm {

enum class LevelStatus { proved, refuted, needs_certificate, experimental };
const char* level_status_name(LevelStatus s);

struct LevelVerdict {
  int level;
  LevelStatus status;
  std::string note;
  bool operator==(const LevelVerdict& o) const = default;
};

// Ladder of lambda bounds: monotone (REFUTED at level n forbids PROVED
// above n), with #S so the -#S+1 correction stays visible.
struct LambdaReport {
  mpz_class disc;
  long p = 3;
  std::vector<LevelVerdict> verdicts;
  int s_count = 2;
  long timing_ms = 0;

  void push(int level, LevelStatus status, std::string note);
  void check_monotone() const;  // INTERNAL_INCONSISTENCY on violations

  std::string to_json() const;
  static LambdaReport from_json(const std::string& text);
  bool operator==(const LambdaReport& o) const;
  std::string human() const;
};

LambdaReport ladder_from_gold(const GoldReport& g, long timing_ms);
LambdaReport ladder_from_certificate(const CertificateReport& c, long timing_ms);

std::string gold_report_to_json(const GoldReport& g);

} // namespace iwm

#endif
