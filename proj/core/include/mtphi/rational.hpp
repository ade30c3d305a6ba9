#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace mtphi {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational on arbitrary-precision integers.  Always normalized:
/// positive denominator, coprime parts, 0 stored as 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d);

  /// Accepts "a", "-a", "a/b" with optional sign on either part.
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  std::string str() const;
  double to_double() const;

 private:
  BigInt num_;
  BigInt den_;
};

/// Exponent of p in q; q must be nonzero.
long padic_val(const Rational& q, long p);

/// base^e for e >= 0.
BigInt pow_int(const BigInt& base, unsigned long e);

}  // namespace mtphi
