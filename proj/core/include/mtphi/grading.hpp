#pragma once

#include <map>

#include "mtphi/filmod.hpp"

namespace mtphi {

/// Object of the graded category: base-field dimensions per degree together
/// with a unipotent automorphism of the K-extension on the degree-ascending
/// basis.  (eta - id) strictly raises degree, so eta is lower
/// block-unitriangular; degree n matches slope -n on the module side.
struct CEtaObject {
  LocalField field;
  std::map<int, int> dims;
  KMat eta;
};

ValidationReport validate_ceta(const CEtaObject& v);

/// The equivalence out of crystalline mixed Tate modules: multiplicity of
/// degree n is dim M_{-n} and eta is the slope-basis comparison point.
CEtaObject psi(const FilPhiNModule& m);

/// Quasi-inverse: phi = p^{-n} on the degree-n block, N = 0, and F^i
/// spanned by the eta-images of the degrees <= -i.  psi(phi_inv(v)) = v on
/// the nose.
FilPhiNModule phi_inv(const CEtaObject& v);

/// Finite-series log of a unipotent matrix and exp of a nilpotent one;
/// mutually inverse.  NotUnipotent when the series fails to terminate.
KMat nilpotent_log(const KMat& u);
KMat nilpotent_exp(const KMat& x);

/// Base-field functional on K, as coefficients against the pi-power
/// coordinates.
using KFunctional = std::vector<Scalar>;

/// The action of the degree-i Lie generator cut out by f:
/// sum_n (id (x) f) proj_{n+i} log(eta) incl_n, a base-field matrix
/// raising degree by exactly i.
KMat generator_action(const CEtaObject& v, int i, const KFunctional& f);

/// Assembles rho(epsilon) = sum_{i>0} sum_j beta_i(v_j dual) v_j from the
/// generator actions on a basis of K over the base (pi powers by default)
/// and exponentiates; equals v.eta.
KMat reconstruct_eta(const CEtaObject& v, const std::vector<Scalar>& basis);
KMat reconstruct_eta(const CEtaObject& v);

/// The grading torus: degree-n components scale by t^n, conjugating each
/// eta block (m, n) by t^{m-n}.
CEtaObject grade_action(const Scalar& t, const CEtaObject& v);

/// Graded dimensions of the free Lie algebra with d generators in every
/// positive degree.
struct LieProfile {
  long d = 0;
  int cutoff = 0;
  std::vector<long long> dims;
};

/// Counts Lyndon words by total weight over the graded alphabet with d
/// letters in each weight 1..cutoff.  Capped at cutoff 12.
LieProfile lie_dims(long d, int cutoff);

}  // namespace mtphi
