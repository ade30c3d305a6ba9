#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtphi/matrix.hpp"

namespace mtphi {

/// One filtration step: the columns of `basis` span F^step inside M_K.
/// Steps not listed inherit the span of the next listed step above them;
/// everything above the highest listed step is zero, and the lowest listed
/// step spans all of M_K.
struct FiltStep {
  int step;
  KMat basis;
};

/// (M, phi, N, F): phi and N are square matrices over the base field K_0
/// acting on column vectors, F a descending filtration on M_K.
struct FilPhiNModule {
  LocalField field;
  int dim;
  KMat phi;
  KMat monodromy;
  std::vector<FiltStep> filtration;  // ascending in step
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Shape and invariant checks: base-field entries of phi and N, the
/// relation N phi = p phi N, and a nested, exhaustive filtration.
ValidationReport validate(const FilPhiNModule& m);

/// Slope n component M_n = ker(phi - p^n) over K_0, for integer n.
struct SlopeDecomposition {
  std::map<int, KMat> components;  // slope -> basis columns over K_0
};

/// Splits M into phi-eigenspaces for the eigenvalues p^n.  Throws
/// NotMixedTatePhi unless these span all of M.
SlopeDecomposition slope_decomposition(const FilPhiNModule& m);

/// Full eigenbasis ordered by strictly descending slope (column j carries
/// slope slopes[j]); the order every triangular normal form here refers to.
struct SlopeBasis {
  KMat mat;
  std::vector<int> slopes;
};
SlopeBasis slope_basis(const FilPhiNModule& m);

/// True iff every projection F^i M_K -> M_{>=i} (x) K along the lower
/// slope components is an isomorphism.
bool is_mixed_tate(const FilPhiNModule& m);

/// Multiset of integers, kept sorted.
struct Polygon {
  std::vector<int> values;
  bool operator==(const Polygon& o) const { return values == o.values; }
};

/// Slopes with multiplicity dim M_n.  The Tate object K(n) contributes -n.
Polygon newton_polygon(const FilPhiNModule& m);

/// Filtration jumps i with multiplicity dim F^i - dim F^{i+1}; K(n)
/// contributes -n, matching newton_polygon on mixed Tate modules.
Polygon hodge_polygon(const FilPhiNModule& m);

/// Effective span of F^i (columns), resolving unlisted steps.
KMat filtration_span_at(const FilPhiNModule& m, int i);

/// Minimal listed form of a nested family of spans: drops empty steps and
/// steps that do not jump.  The map must contain every jump step.
std::vector<FiltStep> normalize_filtration(std::map<int, KMat> spans);

/// Sub-module on a phi- and N-stable K_0-subspace (columns of s), with the
/// intersected filtration.
FilPhiNModule sub_module(const FilPhiNModule& m, const KMat& s);

/// Quotient by a stable subspace, with the image filtration; proj and
/// section express the quotient on the chosen complement basis.
struct Quotient {
  FilPhiNModule mod;
  KMat proj;
  KMat section;
};
Quotient quotient_module(const FilPhiNModule& m, const KMat& s);

/// Weight layer M_{<=i}: the sum of the slope components up to i.
FilPhiNModule weight_sub(const FilPhiNModule& m, int i);

/// Graded piece at weight i in normal form: a sum of copies of K(-i).
FilPhiNModule gr_weight(const FilPhiNModule& m, int i);

/// Strict exactness of 0 -> W_{2(i-1)} -> W_{2i} -> gr -> 0 on every
/// filtration step, by dimension count of the intersections.
bool check_weight_exactness(const FilPhiNModule& m, int i);

/// Mixed-Tate test by the graded route: integer slope decomposition plus
/// Tate gradeds for the induced filtration on every weight layer.  Agrees
/// with is_mixed_tate but never solves the projection systems.
bool mt_criterion(const FilPhiNModule& m);

/// Basis of Hom(m, mp): matrices over K_0 commuting with phi and N and
/// respecting the filtrations after extension to K.
std::vector<KMat> hom_space(const FilPhiNModule& m, const FilPhiNModule& mp);

/// Kernel and cokernel of f in hom_space(m, mp), with the intersected and
/// the image filtration respectively.
FilPhiNModule kernel(const KMat& f, const FilPhiNModule& m, const FilPhiNModule& mp);
FilPhiNModule cokernel(const KMat& f, const FilPhiNModule& m, const FilPhiNModule& mp);

/// Tensor product: phi (x) phi', N (x) 1 + 1 (x) N',
/// F^i = sum_{a+b=i} F^a (x) F^b.
FilPhiNModule tensor(const FilPhiNModule& a, const FilPhiNModule& b);

/// Dual: transpose-inverse phi, -N^T, F^i = annihilator of F^{1-i}; sends
/// K(n) to K(-n).
FilPhiNModule dual(const FilPhiNModule& m);

/// The Tate object K(n): one-dimensional, phi = p^{-n}, jump at -n.
FilPhiNModule tate_object(const LocalField& k, int n);

FilPhiNModule tate_twist(const FilPhiNModule& m, int n);

FilPhiNModule direct_sum(const FilPhiNModule& a, const FilPhiNModule& b);

}  // namespace mtphi
