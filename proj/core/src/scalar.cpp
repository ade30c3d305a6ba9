#include "mtphi/scalar.hpp"

#include <algorithm>
#include <optional>

#include "mtphi/errors.hpp"

namespace mtphi {

namespace {

void require_same_field(const LocalField& a, const LocalField& b) {
  if (!a.same_as(b)) throw WrongShape("operands belong to different fields");
}

}  // namespace

Scalar::Scalar(LocalField k, std::vector<Qp> coords)
    : field_(std::move(k)), coords_(std::move(coords)) {}

Scalar Scalar::zero(const LocalField& k) {
  return Scalar(k, std::vector<Qp>(k.e(), qp_zero(k.precision())));
}

Scalar Scalar::one(const LocalField& k) { return from_integer(k, 1); }

Scalar Scalar::from_rational(const LocalField& k, const Rational& q) {
  Scalar s = zero(k);
  s.coords_[0] = qp_from_rational(q, k.p(), k.precision());
  return s;
}

Scalar Scalar::from_integer(const LocalField& k, long n) {
  return from_rational(k, Rational(n));
}

Scalar Scalar::from_coords(const LocalField& k, std::vector<Qp> coords) {
  if (coords.size() != static_cast<std::size_t>(k.e()))
    throw WrongShape("coordinate count does not match the ramification index");
  return Scalar(k, std::move(coords));
}

Scalar Scalar::pi(const LocalField& k) {
  if (k.e() == 1) return from_integer(k, k.p());
  Scalar s = zero(k);
  s.coords_[1] = qp_from_rational(Rational(1), k.p(), k.precision());
  return s;
}

bool Scalar::is_zero() const {
  bool weak = false;
  for (const Qp& c : coords_) {
    if (!c.is_zero()) return false;
    if (c.aprec < 1) weak = true;
  }
  if (weak) throw InsufficientPrecision("zero test below one tracked digit");
  return true;
}

bool Scalar::in_base() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

long Scalar::min_aprec() const {
  long m = coords_[0].aprec;
  for (const Qp& c : coords_) m = std::min(m, c.aprec);
  return m;
}

Rational Scalar::val() const {
  const int e = field_.e();
  std::optional<Rational> definite;
  std::optional<Rational> hidden;
  for (int i = 0; i < e; ++i) {
    const Qp& c = coords_[i];
    Rational shift{BigInt(i), BigInt(e)};
    if (c.is_zero()) {
      Rational b = Rational(BigInt(c.aprec)) + shift;
      if (!hidden || b < *hidden) hidden = b;
    } else {
      Rational v = Rational(BigInt(c.val)) + shift;
      if (!definite || v < *definite) definite = v;
    }
  }
  if (!definite)
    throw ZeroValuation("valuation of an element indistinguishable from zero");
  // Distinct pi-powers carry distinct valuations mod 1, so the visible
  // minimum is exact unless a hidden coordinate could sink below it.
  if (hidden && *hidden < *definite)
    throw InsufficientPrecision("valuation hidden below the precision bound");
  return *definite;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(field_, o.field_);
  std::vector<Qp> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i)
    out[i] = qp_add(coords_[i], o.coords_[i], field_.p(), field_.precision());
  return Scalar(field_, std::move(out));
}

Scalar Scalar::operator-() const {
  std::vector<Qp> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i)
    out[i] = qp_neg(coords_[i], field_.p(), field_.precision());
  return Scalar(field_, std::move(out));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(field_, o.field_);
  const long p = field_.p();
  const long cap = field_.precision();
  const int e = field_.e();
  // Schoolbook product of the coordinate polynomials, then reduction by
  // pi^e = sum_j minus_eis[j] pi^j.
  std::vector<Qp> prod(2 * e - 1, qp_zero(cap));
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j)
      prod[i + j] = qp_add(prod[i + j], qp_mul(coords_[i], o.coords_[j], p, cap), p, cap);
  const std::vector<Qp>& me = field_.minus_eis();
  for (int k = 2 * e - 2; k >= e; --k) {
    Qp c = prod[k];
    prod[k] = qp_zero(cap);
    for (int j = 0; j < e; ++j)
      prod[k - e + j] = qp_add(prod[k - e + j], qp_mul(c, me[j], p, cap), p, cap);
  }
  prod.resize(e);
  return Scalar(field_, std::move(prod));
}

Scalar Scalar::inv() const {
  const long p = field_.p();
  const long cap = field_.precision();
  const int e = field_.e();
  if (e == 1) return Scalar(field_, {qp_inv(coords_[0], p, cap)});

  // Coordinates of x * pi^j give the columns of the regular representation;
  // solve sum_j y_j (x pi^j) = 1 by elimination with minimal-valuation
  // pivots.
  std::vector<std::vector<Qp>> a(e, std::vector<Qp>(e + 1, qp_zero(cap)));
  Scalar power = *this;
  for (int j = 0; j < e; ++j) {
    for (int r = 0; r < e; ++r) a[r][j] = power.coords_[r];
    if (j + 1 < e) power = power * pi(field_);
  }
  a[0][e] = qp_from_rational(Rational(1), p, cap);

  std::vector<bool> used(e, false);
  std::vector<int> pivot_row(e, -1);
  for (int col = 0; col < e; ++col) {
    int best = -1;
    for (int r = 0; r < e; ++r) {
      if (used[r] || a[r][col].is_zero()) continue;
      if (best < 0 || a[r][col].val < a[best][col].val) best = r;
    }
    if (best < 0)
      throw InsufficientPrecision("element not invertible at tracked precision");
    used[best] = true;
    pivot_row[col] = best;
    Qp piv_inv = qp_inv(a[best][col], p, cap);
    for (int j = col; j <= e; ++j) a[best][j] = qp_mul(a[best][j], piv_inv, p, cap);
    for (int r = 0; r < e; ++r) {
      if (r == best || a[r][col].is_zero()) continue;
      Qp f = a[r][col];
      for (int j = col; j <= e; ++j)
        a[r][j] = qp_sub(a[r][j], qp_mul(f, a[best][j], p, cap), p, cap);
    }
  }
  std::vector<Qp> y(e, qp_zero(cap));
  for (int col = 0; col < e; ++col) y[col] = a[pivot_row[col]][e];
  return Scalar(field_, std::move(y));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  Scalar acc = one(field_);
  Scalar b = *this;
  unsigned long m = n;
  while (m > 0) {
    if (m & 1UL) acc = acc * b;
    b = b * b;
    m >>= 1UL;
  }
  return acc;
}

bool Scalar::eq(const Scalar& o) const { return (*this - o).is_zero(); }

Scalar Scalar::rebase(const LocalField& k) const {
  if (k.p() != field_.p() || k.e() != field_.e() || k.precision() != field_.precision())
    throw WrongShape("rebase between incompatible fields");
  return Scalar(k, coords_);
}

}  // namespace mtphi
