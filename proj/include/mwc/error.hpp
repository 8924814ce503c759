#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mwc {

enum class ErrorKind {
  invalid_set,
  invalid_nesting,
  empty_complement,
  invalid_partition,
  invalid_k,
  invalid_parameter,
  cap_exceeded,
  unsplittable,
  solver_failure,
  undefined_quotient,
  parse_error,
  malformed_trace,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the category the
/// CLI reports in structured errors.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Raised when an exact enumeration would exceed its configured cap.
class CapExceeded : public Error {
public:
  CapExceeded(std::string cap, long long limit, long long requested)
      : Error(ErrorKind::cap_exceeded,
              "cap '" + cap + "' exceeded: limit " + std::to_string(limit) +
                  ", requested " + std::to_string(requested)),
        cap_(std::move(cap)), limit_(limit), requested_(requested) {}

  const std::string& cap() const noexcept { return cap_; }
  long long limit() const noexcept { return limit_; }
  long long requested() const noexcept { return requested_; }

private:
  std::string cap_;
  long long limit_;
  long long requested_;
};

} // namespace mwc
