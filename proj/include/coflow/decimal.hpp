#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coflow {

// Fixed-point decimal with six fractional digits. Weights and weighted
// objectives are accumulated in this type so that sums are exact.
class Decimal {
 public:
  static constexpr std::int64_t kScale = 1'000'000;
  static constexpr int kDigits = 6;

  constexpr Decimal() = default;

  static constexpr Decimal from_units(std::int64_t units) { return Decimal(units); }

  static Decimal from_integer(std::int64_t value) {
    std::int64_t units = 0;
    if (__builtin_mul_overflow(value, kScale, &units)) {
      throw std::overflow_error("decimal overflow");
    }
    return Decimal(units);
  }

  // Accepts [-]digits[.digits] with at most six fractional digits.
  static Decimal parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed decimal '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
      text.remove_suffix(1);
    }
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    int frac_digits = 0;
    bool any = false;
    for (; pos < text.size() && text[pos] != '.'; ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') throw fail();
      if (__builtin_mul_overflow(whole, 10, &whole) || __builtin_add_overflow(whole, c - '0', &whole)) {
        throw std::overflow_error("decimal overflow");
      }
      any = true;
    }
    if (pos < text.size()) {
      ++pos;
      for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c < '0' || c > '9') throw fail();
        if (frac_digits == kDigits) {
          if (c != '0') throw std::invalid_argument("decimal '" + std::string(text) + "' exceeds six fractional digits");
          continue;
        }
        frac = frac * 10 + (c - '0');
        ++frac_digits;
        any = true;
      }
    }
    if (!any) throw fail();
    for (int d = frac_digits; d < kDigits; ++d) frac *= 10;
    Decimal result = from_integer(whole) + Decimal(frac);
    return negative ? Decimal(-result.units_) : result;
  }

  constexpr std::int64_t units() const { return units_; }
  double to_double() const { return static_cast<double>(units_) / static_cast<double>(kScale); }

  // Shortest exact rendering: "1", "0.5", "2.125".
  std::string to_string() const {
    std::int64_t u = units_;
    std::string sign;
    if (u < 0) {
      sign = "-";
      u = -u;
    }
    std::string out = sign + std::to_string(u / kScale);
    std::int64_t frac = u % kScale;
    if (frac != 0) {
      std::string digits = std::to_string(frac);
      digits.insert(0, static_cast<std::size_t>(kDigits) - digits.size(), '0');
      while (digits.back() == '0') digits.pop_back();
      out += "." + digits;
    }
    return out;
  }

  friend Decimal operator+(Decimal a, Decimal b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a.units_, b.units_, &r)) throw std::overflow_error("decimal overflow");
    return Decimal(r);
  }
  Decimal& operator+=(Decimal other) { return *this = *this + other; }

  // Exact scaling by an integer count (w_k * C_k).
  friend Decimal operator*(Decimal a, std::int64_t count) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a.units_, count, &r)) throw std::overflow_error("decimal overflow");
    return Decimal(r);
  }

  friend constexpr auto operator<=>(Decimal, Decimal) = default;
  friend constexpr bool operator==(Decimal, Decimal) = default;

 private:
  constexpr explicit Decimal(std::int64_t units) : units_(units) {}
  std::int64_t units_ = 0;
};

}  // namespace coflow
