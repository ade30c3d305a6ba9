#include "mtphi/rational.hpp"

#include "mtphi/errors.hpp"

namespace mtphi {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { return DomainError("cannot parse rational '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s == "-" || s == "+") throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
    return BigInt(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) s += "/" + den_.str();
  return s;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

long padic_val(const Rational& q, long p) {
  if (q.is_zero()) throw ZeroValuation("p-adic valuation of zero rational");
  auto count = [p](BigInt v) {
    long n = 0;
    if (v < 0) v = -v;
    while (v % p == 0) {
      v /= p;
      ++n;
    }
    return n;
  };
  long vn = count(q.num());
  return vn > 0 ? vn : -count(q.den());
}

BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt acc = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1UL) acc *= b;
    b *= b;
    e >>= 1UL;
  }
  return acc;
}

}  // namespace mtphi
