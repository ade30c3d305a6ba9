#pragma once

#include "mtphi/filmod.hpp"
#include "mtphi/kst.hpp"

namespace mtphi {

/// The comparison point of a mixed Tate module, written on the slope basis
/// (basis_slopes[j] is the slope of column j, strictly descending blocks).
/// Lower-unitriangular: entries above a diagonal block vanish and diagonal
/// blocks are the identity.
struct EtaMatrix {
  std::vector<int> basis_slopes;
  KMat mat;
};

/// Semistable refinement of the comparison point, entries in K_st.
struct EtaStMatrix {
  std::vector<int> basis_slopes;
  KstMat mat;
};

/// The unique automorphism of M_K carrying each slope component M_i onto
/// F^i through the projection along lower slopes; computed one column at a
/// time by solving the projection system.
EtaMatrix eta(const FilPhiNModule& m);

/// Same point by the splitting route: bigraded pieces F^i meet W_{2i}
/// against the slope pieces, d = a_Fbar a_F^{-1}.  Agrees with eta
/// entrywise; kept as an independent cross-check.
EtaMatrix eta_via_deligne(const FilPhiNModule& m);

/// exp(((c - X)/nu(p)) N) composed with eta, on the slope basis; the branch
/// c is taken from the module's field, and substituting X = c recovers eta.
EtaStMatrix eta_st(const FilPhiNModule& m);

/// Branch-free logarithm on K^x with values in K_st: nu(q) X plus the
/// branch-independent part of the branched log.
KstPoly log_st(const Scalar& q);

/// Moves filtration data computed under the field's branch to the branch of
/// `to` (same p, degree and precision): F is replaced by exp((c - c') N) F
/// and all entries are rebased.  The identity whenever N = 0.
FilPhiNModule transport_filtration(const FilPhiNModule& m, const LocalField& to);

/// Extension class of a two-dimensional module with slopes {-n, 0} whose
/// basis marks the sub-object (one basis vector spans the slope -n
/// component, the other maps to the canonical quotient generator).  Zero
/// exactly for split extensions.
Scalar ext_class(const FilPhiNModule& e, int n);

/// The extension with class a: phi = diag(p^{-n}, 1) on (e_n, e_0), N = 0,
/// filtration everything at -n and the line through a e_n + e_0 at 0.
FilPhiNModule ext_build(const Scalar& a, int n);

/// Baer sum of two extensions of K(0) by K(n) in marker bases; the result
/// is again in a marker basis and its class is the sum of the classes.
FilPhiNModule baer_sum(const FilPhiNModule& e, const FilPhiNModule& ep, int n);

/// The Kummer module of q on the basis (e_0, e_1): phi = diag(1, p^{-1}),
/// N e_0 = -nu(q) e_1, F^0 spanned by log_c(q) e_1 + e_0.
FilPhiNModule kummer_module(const Scalar& q);

/// N vanishes to the tracked precision.
bool is_crystalline(const FilPhiNModule& m);

}  // namespace mtphi
