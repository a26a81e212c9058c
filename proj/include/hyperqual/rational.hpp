#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperqual {

/// Raised when an exact result does not fit the 64-bit representation.
class RationalOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Arithmetic is checked: a result that cannot be represented
/// raises RationalOverflow instead of wrapping.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool in_unit_interval() const { return num_ >= 0 && num_ <= den_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "n/d", or "n" when the denominator is 1.
  std::string str() const;
  /// Lossy conversion, for display only.
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Accepts "n", "n/d", or a decimal with at most 6 fractional digits.
  static Rational parse(std::string_view text);

private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace hyperqual

template <>
struct std::hash<hyperqual::Rational> {
  std::size_t operator()(const hyperqual::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
