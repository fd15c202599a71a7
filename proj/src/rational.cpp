#include "stmas/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace stmas {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational operator/(const Rational &a, const Rational &b) {
  if (b.is_zero())
    throw std::domain_error("division by a zero rational");
  return Rational(a.num() * b.den(), a.den() * b.num());
}

std::string to_string(const Rational &r) {
  if (r.den() == 1)
    return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

namespace {

std::optional<std::int64_t> parse_i64(std::string_view text) {
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  if (text.empty())
    return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    return std::nullopt;
  return value;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto num = parse_i64(text.substr(0, slash));
  if (!num)
    return std::nullopt;
  if (slash == std::string_view::npos)
    return Rational(*num);
  auto den = parse_i64(text.substr(slash + 1));
  if (!den || *den == 0)
    return std::nullopt;
  return Rational(*num, *den);
}

} // namespace stmas
