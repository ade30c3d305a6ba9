#pragma once

#include <complex>
#include <vector>

namespace mtphi {

using Cplx = std::complex<double>;

/// One step of the weight filtration: the even step 2i together with real
/// spanning vectors of W_{2i}, each of length dim.
struct RWeightStep {
  int step = 0;
  std::vector<std::vector<double>> basis;
};

/// One step of the Hodge filtration on the complexification.
struct RHodgeStep {
  int step = 0;
  std::vector<std::vector<Cplx>> basis;
};

/// Real mixed Tate Hodge structure as finite data: W listed by ascending
/// even step (the largest spans everything), F listed by ascending step
/// (the smallest spans everything, steps above the largest are zero).
/// Validity means every weight graded piece Gr^W_{2i} is concentrated in
/// Hodge bidegree (i, i); compute_d checks this.
struct RealMTHS {
  int dim = 0;
  std::vector<RWeightStep> weights;
  std::vector<RHodgeStep> hodge;
};

/// A matrix on the weight graded of a RealMTHS.  Columns are grouped by
/// strictly descending weight, weights[j] giving the weight of column j;
/// mat is row major.
struct ArchComparison {
  std::vector<int> weights;
  std::vector<std::vector<Cplx>> mat;
};

/// The comparison automorphism d between the two splittings that F and
/// conj(F) induce on the weight graded.  Unipotent, (d - 1) strictly
/// lowers weight, and conj(d) = inverse(d) to floating tolerance.  Throws
/// NotMTHS when the bidegree invariant fails or a splitting map is
/// singular, WrongShape on malformed containers.
ArchComparison compute_d(const RealMTHS& h);

/// epsilon = log(d), the nilpotent logarithm of the comparison; conjugation
/// negates it.
ArchComparison epsilon_arch(const RealMTHS& h);

/// Finite exponential series of a nilpotent matrix; NotUnipotent when
/// powers fail to vanish.
std::vector<std::vector<Cplx>> arch_exp(const std::vector<std::vector<Cplx>>& x);

/// Li_k(z) by direct series, |z| <= 0.95; Li_0(z) = z/(1-z).  Throws
/// DomainError outside the disc or for k < 0.
Cplx polylog(int k, Cplx z, double tol = 1e-12);

/// Conventions for bd_value the text leaves open: the sign of b_1 and the
/// choice of square root of -1 (flipping it negates odd k and fixes even k).
struct BDOptions {
  bool b1_positive = false;
  bool conj_i = false;
};

/// Single-valued polylogarithm combination
///   2i sum_{l=0..k} b_l (log z zbar)^l / l! * Im(Li_{k-l}(z))
/// for even k, with Re in place of Im for odd k; b_l are the Bernoulli
/// numbers under BDOptions.  z must lie in the polylog disc away from 0
/// and 1; k >= 1.
Cplx bd_value(int k, Cplx z, double tol = 1e-12, const BDOptions& opt = {});

}  // namespace mtphi
