#pragma once

#include <optional>
#include <vector>

#include "mtphi/scalar.hpp"

namespace mtphi {

/// Dense matrix over K, row-major.
struct KMat {
  LocalField field;
  int nrows = 0;
  int ncols = 0;
  std::vector<Scalar> data;

  KMat(LocalField k, int rows, int cols);
  static KMat identity(const LocalField& k, int n);
  static KMat column_vector(const LocalField& k, std::vector<Scalar> entries);

  Scalar& at(int i, int j) { return data[i * ncols + j]; }
  const Scalar& at(int i, int j) const { return data[i * ncols + j]; }
};

KMat mat_add(const KMat& a, const KMat& b);
KMat mat_sub(const KMat& a, const KMat& b);
KMat mat_neg(const KMat& a);
KMat mat_mul(const KMat& a, const KMat& b);
KMat scalar_mul(const Scalar& s, const KMat& a);
KMat transpose(const KMat& a);
KMat hstack(const KMat& a, const KMat& b);
KMat vstack(const KMat& a, const KMat& b);
KMat take_cols(const KMat& a, const std::vector<int>& idx);
KMat kron(const KMat& a, const KMat& b);
bool mat_eq(const KMat& a, const KMat& b);
bool mat_is_zero(const KMat& a);

/// Reduced row echelon form.  Pivots pick the minimal-valuation candidate
/// (lowest row on ties) so unit denominators stay as large as possible;
/// entries indistinguishable from zero at slack precision raise
/// InsufficientPrecision rather than silently deciding rank.
struct Echelon {
  KMat mat;
  std::vector<int> pivot_cols;
};
Echelon reduced_echelon(const KMat& a);

int rank(const KMat& a);

/// Columns span the kernel of a; empty (0-column) result for injective a.
KMat null_space(const KMat& a);

/// One solution X of a X = b, or nullopt when inconsistent.
std::optional<KMat> try_solve(const KMat& a, const KMat& b);

/// As try_solve but inconsistency is an error.
KMat solve(const KMat& a, const KMat& b);

KMat inverse(const KMat& a);

/// The original columns sitting at pivot positions: a basis of the column
/// space.
KMat column_space_basis(const KMat& a);

/// Rows span {x : x a = 0}.
KMat left_annihilator(const KMat& a);

bool in_span(const KMat& v, const KMat& span);

/// Basis of (column space of a) meet (column space of b); the inputs should
/// themselves have independent columns.
KMat intersect_spans(const KMat& a, const KMat& b);

}  // namespace mtphi
