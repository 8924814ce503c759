#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mwc {

/// Exact nonnegative rational in lowest terms, with an Infinity sentinel that
/// compares greater than every finite value.
class Ratio {
public:
  constexpr Ratio() = default;
  Ratio(std::uint64_t num, std::uint64_t den = 1);

  static constexpr Ratio infinity() {
    Ratio r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  bool is_infinite() const noexcept { return den_ == 0; }
  bool is_zero() const noexcept { return num_ == 0 && den_ != 0; }
  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  double to_double() const noexcept;

  /// "p/q" for finite values (always with a denominator), "inf" otherwise.
  std::string to_string() const;
  static Ratio parse(std::string_view text);

  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept;

  friend Ratio operator+(const Ratio& a, const Ratio& b);
  friend Ratio operator*(const Ratio& a, std::uint64_t k);
  friend Ratio operator*(std::uint64_t k, const Ratio& a) { return a * k; }
  friend Ratio operator/(const Ratio& a, std::uint64_t k);

private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Integer power used for the 3^k factors; throws on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

} // namespace mwc
