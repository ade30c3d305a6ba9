#include "mtphi/local_field.hpp"

#include "mtphi/errors.hpp"

namespace mtphi {

struct LocalField::Data {
  long p;
  int precision;
  std::vector<Rational> eisenstein;
  Qp branch;
  int e;
  std::vector<Qp> minus_eis;
};

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::shared_ptr<const LocalField::Data> LocalField::build(long p, int precision,
                                                          std::vector<Rational> eis,
                                                          Qp branch) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (precision < 1) throw DomainError("precision must be positive");
  auto d = std::make_shared<LocalField::Data>();
  d->p = p;
  d->precision = precision;
  d->e = eis.empty() ? 1 : static_cast<int>(eis.size()) - 1;
  if (!eis.empty()) {
    if (eis.size() < 2) throw DomainError("Eisenstein polynomial must have degree >= 1");
    if (eis.back() != Rational(1)) throw DomainError("Eisenstein polynomial must be monic");
    for (std::size_t j = 0; j + 1 < eis.size(); ++j) {
      const Rational& a = eis[j];
      if (!a.is_zero() && padic_val(a, p) < 1)
        throw DomainError("Eisenstein coefficients below the leading one need valuation >= 1");
      if (j == 0 && (a.is_zero() || padic_val(a, p) != 1))
        throw DomainError("Eisenstein constant term needs valuation exactly 1");
    }
    d->minus_eis.reserve(eis.size() - 1);
    for (std::size_t j = 0; j + 1 < eis.size(); ++j)
      d->minus_eis.push_back(qp_from_rational(-eis[j], p, precision));
  }
  d->eisenstein = std::move(eis);
  d->branch = std::move(branch);
  return d;
}

LocalField::LocalField(long p, int precision, std::vector<Rational> eisenstein,
                       const Rational& branch)
    : data_(build(p, precision, std::move(eisenstein),
                  qp_from_rational(branch, p, precision))) {}

LocalField::LocalField(long p, int precision, std::vector<Rational> eisenstein, Qp branch)
    : data_(build(p, precision, std::move(eisenstein), std::move(branch))) {}

long LocalField::p() const { return data_->p; }
int LocalField::precision() const { return data_->precision; }
int LocalField::e() const { return data_->e; }
const std::vector<Rational>& LocalField::eisenstein() const { return data_->eisenstein; }
const Qp& LocalField::branch() const { return data_->branch; }
const std::vector<Qp>& LocalField::minus_eis() const { return data_->minus_eis; }

bool LocalField::same_as(const LocalField& o) const {
  if (data_ == o.data_) return true;
  if (data_->p != o.data_->p || data_->precision != o.data_->precision ||
      data_->e != o.data_->e)
    return false;
  if (data_->eisenstein.size() != o.data_->eisenstein.size()) return false;
  for (std::size_t i = 0; i < data_->eisenstein.size(); ++i)
    if (data_->eisenstein[i] != o.data_->eisenstein[i]) return false;
  return qp_eq(data_->branch, o.data_->branch, data_->p, data_->precision);
}

}  // namespace mtphi
