#pragma once

#include <memory>
#include <vector>

#include "mtphi/qp.hpp"
#include "mtphi/rational.hpp"

namespace mtphi {

/// K = Q_p[x]/(E) for a monic Eisenstein polynomial E, with K_0 = Q_p.
///
/// Carries the absolute precision cap (count of base-p digits per Q_p
/// coordinate) and the branch parameter c = log p in K_0 used by the
/// branched logarithm.  Value-semantic handle over immutable shared data;
/// cheap to copy.
///
/// `eisenstein` is the full ascending coefficient list [a_0, ..., a_{e-1}, 1]
/// of E; an empty list means K = Q_p (e = 1, uniformizer p).
class LocalField {
 public:
  LocalField(long p, int precision, std::vector<Rational> eisenstein, const Rational& branch);
  LocalField(long p, int precision, std::vector<Rational> eisenstein, Qp branch);

  long p() const;
  int precision() const;
  /// Ramification index e = deg E; 1 for K = Q_p.
  int e() const;
  const std::vector<Rational>& eisenstein() const;
  const Qp& branch() const;

  /// Negated non-leading Eisenstein coefficients at full precision:
  /// pi^e = sum_j minus_eis()[j] * pi^j.
  const std::vector<Qp>& minus_eis() const;

  bool same_as(const LocalField& o) const;

 private:
  struct Data;
  static std::shared_ptr<const Data> build(long p, int precision,
                                           std::vector<Rational> eisenstein, Qp branch);
  std::shared_ptr<const Data> data_;
};

}  // namespace mtphi
