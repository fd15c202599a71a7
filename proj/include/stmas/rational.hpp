#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stmas {

/// Exact rational in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  /// Throws std::domain_error on a zero denominator.
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational &, const Rational &) = default;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational operator/(const Rational &a, const Rational &b);

/// "7/24", "-11/6", "1".
std::string to_string(const Rational &r);
/// Accepts "p/q" or "p"; nullopt on malformed input or q == 0.
std::optional<Rational> parse_rational(std::string_view text);

} // namespace stmas
