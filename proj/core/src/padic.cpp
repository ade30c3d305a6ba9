#include "mtphi/padic.hpp"

#include <cmath>
#include <vector>

#include "mtphi/errors.hpp"

namespace mtphi {

Scalar branch_scalar(const LocalField& field) {
  std::vector<Qp> coords(field.e(), qp_zero(field.precision()));
  coords[0] = field.branch();
  return Scalar::from_coords(field, std::move(coords));
}

Scalar teichmuller(const LocalField& field, long r) {
  const long p = field.p();
  if (r < 1 || r >= p) throw NotAUnit("residue out of range for a Teichmuller lift");
  const long cap = field.precision();
  BigInt mod = pow_int(BigInt(p), cap);
  BigInt x(r);
  while (true) {
    BigInt next = boost::multiprecision::powm(x, BigInt(p), mod);
    if (next == x) break;
    x = next;
  }
  std::vector<Qp> coords(field.e(), qp_zero(cap));
  coords[0] = qp_make(0, x, cap, p, cap);
  return Scalar::from_coords(field, std::move(coords));
}

Scalar unit_log(const Scalar& u) {
  const LocalField& f = u.field();
  Rational nu(0);
  try {
    nu = u.val();
  } catch (const ZeroValuation&) {
    throw NotAUnit("log of an element indistinguishable from zero");
  }
  if (!(nu == Rational(0))) throw NotAUnit("unit_log needs valuation zero");

  // Residue of u is the mod-p digit of the constant coordinate.
  long r = BigInt(u.coords()[0].unit % f.p()).convert_to<long>();
  Scalar one_unit = u;
  if (r != 1) one_unit = u * teichmuller(f, r).inv();
  Scalar z = one_unit - Scalar::one(f);
  if (z.is_zero()) return Scalar::zero(f);

  // Term n has valuation n*v(z) - v_p(n) >= n*v(z) - log_p(n); sum until
  // that lower bound is past the cap and is increasing in n.
  double v = z.val().to_double();
  double lp = std::log(static_cast<double>(f.p()));
  double cap = static_cast<double>(f.precision());
  Scalar acc = Scalar::zero(f);
  Scalar zpow = z;
  long n = 1;
  while (true) {
    Scalar term = zpow * Scalar::from_rational(f, Rational(BigInt(1), BigInt(n)));
    acc = (n % 2 == 1) ? acc + term : acc - term;
    ++n;
    double bound = n * v - std::log(static_cast<double>(n)) / lp;
    if (bound > cap + 1.0 && n > 1.0 / (v * lp)) break;
    zpow = zpow * z;
  }
  return acc;
}

Scalar branch_log(const Scalar& y) {
  const LocalField& f = y.field();
  const int e = f.e();
  Rational nu = y.val();
  Rational me = nu * Rational(e);
  long m = me.num().convert_to<long>();  // denominator of val divides e

  Scalar pi = Scalar::pi(f);
  Scalar p_scalar = Scalar::from_integer(f, f.p());
  Scalar log_pi = (branch_scalar(f) + unit_log(pi.pow(e) / p_scalar)) /
                  Scalar::from_integer(f, e);
  return Scalar::from_integer(f, m) * log_pi + unit_log(y * pi.pow(-m));
}

}  // namespace mtphi
