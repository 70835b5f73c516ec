#ifndef IWM_ERROR_HPP
#define IWM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iwm {

enum class errc {
  // usage / parameter errors
  usage,
  parameter_mismatch,
  order_out_of_range,
  truncation_range,
  // precondition failures
  not_a_residue,
  not_a_unit,
  precision_too_low,
  not_fundamental,
  not_split,
  not_principal,
  precondition_p_divides_h,
  no_order_p_class,
  not_cyclic,
  p_divides_delta,
  structure_mismatch,
  not_a_cocycle,
  not_cocycle_compatible,
  block_mismatch,
  hypothesis_failed,
  // budget guards
  budget_exceeded,
  degree_cap_exceeded,
  // certificate verification
  malformed_certificate,
  norm_mismatch,
  valuation_fail,
  index_divisor,
  cannot_factor,
  // internal assertion (must be unreachable on valid inputs)
  internal_inconsistency,
};

const char* errc_name(errc c);

// Exit-code category used by the CLI: 1 usage, 2 precondition, 3 budget,
// 4 certificate, 5 invariant failure.
int errc_exit_code(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

} // namespace iwm

#endif
