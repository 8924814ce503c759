#include "mwc/ratio.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "mwc/error.hpp"

namespace mwc {

namespace {

using u128 = unsigned __int128;

Ratio from_wide(u128 num, u128 den) {
  if (den == 0) {
    throw Error(ErrorKind::invalid_parameter, "ratio denominator is zero");
  }
  u128 a = num, b = den;
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (num > kMax || den > kMax) {
    throw Error(ErrorKind::invalid_parameter, "ratio overflow");
  }
  return Ratio(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
}

} // namespace

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) {
    throw Error(ErrorKind::invalid_parameter, "ratio denominator is zero");
  }
  const std::uint64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
  if (num_ == 0) den_ = 1;
}

double Ratio::to_double() const noexcept {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Ratio::to_string() const {
  if (is_infinite()) return "inf";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ratio Ratio::parse(std::string_view text) {
  if (text == "inf") return infinity();
  auto bad = [&] {
    return Error(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
  };
  const auto slash = text.find('/');
  std::uint64_t p = 0, q = 1;
  auto parse_u = [&](std::string_view part, std::uint64_t& out) {
    if (part.empty()) throw bad();
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw bad();
  };
  if (slash == std::string_view::npos) {
    parse_u(text, p);
  } else {
    parse_u(text.substr(0, slash), p);
    parse_u(text.substr(slash + 1), q);
    if (q == 0) throw bad();
  }
  return Ratio(p, q);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Ratio operator+(const Ratio& a, const Ratio& b) {
  if (a.is_infinite() || b.is_infinite()) return Ratio::infinity();
  return from_wide(static_cast<u128>(a.num_) * b.den_ + static_cast<u128>(b.num_) * a.den_,
                   static_cast<u128>(a.den_) * b.den_);
}

Ratio operator*(const Ratio& a, std::uint64_t k) {
  if (a.is_infinite()) return k == 0 ? Ratio(0) : a;
  return from_wide(static_cast<u128>(a.num_) * k, a.den_);
}

Ratio operator/(const Ratio& a, std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_parameter, "ratio division by zero");
  if (a.is_infinite()) return a;
  return from_wide(a.num_, static_cast<u128>(a.den_) * k);
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(ErrorKind::invalid_parameter, "integer power overflow");
    }
    out *= base;
  }
  return out;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::invalid_set: return "invalid-set";
  case ErrorKind::invalid_nesting: return "invalid-nesting";
  case ErrorKind::empty_complement: return "empty-complement";
  case ErrorKind::invalid_partition: return "invalid-partition";
  case ErrorKind::invalid_k: return "invalid-k";
  case ErrorKind::invalid_parameter: return "invalid-parameter";
  case ErrorKind::cap_exceeded: return "cap-exceeded";
  case ErrorKind::unsplittable: return "unsplittable";
  case ErrorKind::solver_failure: return "solver-failure";
  case ErrorKind::undefined_quotient: return "undefined-quotient";
  case ErrorKind::parse_error: return "parse-error";
  case ErrorKind::malformed_trace: return "malformed-trace";
  }
  return "unknown";
}

} // namespace mwc
