#pragma once

#include <stdexcept>
#include <string>

namespace bmcx {

enum class errc {
  degenerate_triple,
  indeterminate,
  out_of_disk,
  outside_disk,
  insufficient_samples,
  not_real_valued,
  unsupported_variant,
  outside_domain,
  stencil_outside_domain,
  invalid_exponents,
  coincident_points,
  pole_point,
  origin_point,
  start_outside_domain,
  start_at_origin,
  bad_config,
  parse_error,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

}  // namespace bmcx
