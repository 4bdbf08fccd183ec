#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "gapsched/core.hpp"

namespace gapsched {

namespace detail {
__extension__ typedef __int128 Wide;
}  // namespace detail

// Exact rational p/q with q > 0 in lowest terms. Comparisons go through
// 128-bit products, enough for coordinates up to 2^40 and denominators
// bounded by the instance size.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { reduce(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  // Smallest integer >= value.
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<detail::Wide>(a.num_) * b.den_ + static_cast<detail::Wide>(b.num_) * a.den_,
                     static_cast<detail::Wide>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<detail::Wide>(a.num_) * b.den_ - static_cast<detail::Wide>(b.num_) * a.den_,
                     static_cast<detail::Wide>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, std::int64_t k) {
    if (k == 0) throw InvalidArgument("Rational: division by zero");
    return from_wide(a.num_, static_cast<detail::Wide>(a.den_) * k);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    detail::Wide l = static_cast<detail::Wide>(a.num_) * b.den_;
    detail::Wide r = static_cast<detail::Wide>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static Rational from_wide(detail::Wide num, detail::Wide den) {
    if (den == 0) throw InvalidArgument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    detail::Wide a = num < 0 ? -num : num, b = den;
    while (b != 0) {
      detail::Wide t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void reduce() {
    if (den_ == 0) throw InvalidArgument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace gapsched
