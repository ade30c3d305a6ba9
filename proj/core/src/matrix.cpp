#include "mtphi/matrix.hpp"

#include <utility>

#include "mtphi/errors.hpp"

namespace mtphi {

namespace {

void require_same_field(const KMat& a, const KMat& b) {
  if (!a.field.same_as(b.field)) throw WrongShape("matrices over different fields");
}

}  // namespace

KMat::KMat(LocalField k, int rows, int cols)
    : field(std::move(k)),
      nrows(rows),
      ncols(cols),
      data(static_cast<std::size_t>(rows) * cols, Scalar::zero(field)) {
  if (rows < 0 || cols < 0) throw WrongShape("negative matrix dimension");
}

KMat KMat::identity(const LocalField& k, int n) {
  KMat m(k, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(k);
  return m;
}

KMat KMat::column_vector(const LocalField& k, std::vector<Scalar> entries) {
  KMat m(k, static_cast<int>(entries.size()), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.data[i] = std::move(entries[i]);
  return m;
}

KMat mat_add(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.nrows != b.nrows || a.ncols != b.ncols) throw WrongShape("mat_add shape mismatch");
  KMat out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

KMat mat_sub(const KMat& a, const KMat& b) { return mat_add(a, mat_neg(b)); }

KMat mat_neg(const KMat& a) {
  KMat out = a;
  for (Scalar& s : out.data) s = -s;
  return out;
}

KMat mat_mul(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.ncols != b.nrows) throw WrongShape("mat_mul shape mismatch");
  KMat out(a.field, a.nrows, b.ncols);
  for (int i = 0; i < a.nrows; ++i)
    for (int k = 0; k < a.ncols; ++k) {
      const Scalar& aik = a.at(i, k);
      for (int j = 0; j < b.ncols; ++j) out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
    }
  return out;
}

KMat scalar_mul(const Scalar& s, const KMat& a) {
  KMat out = a;
  for (Scalar& x : out.data) x = s * x;
  return out;
}

KMat transpose(const KMat& a) {
  KMat out(a.field, a.ncols, a.nrows);
  for (int i = 0; i < a.nrows; ++i)
    for (int j = 0; j < a.ncols; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

KMat hstack(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.nrows != b.nrows) throw WrongShape("hstack row mismatch");
  KMat out(a.field, a.nrows, a.ncols + b.ncols);
  for (int i = 0; i < a.nrows; ++i) {
    for (int j = 0; j < a.ncols; ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.ncols; ++j) out.at(i, a.ncols + j) = b.at(i, j);
  }
  return out;
}

KMat vstack(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.ncols != b.ncols) throw WrongShape("vstack column mismatch");
  KMat out(a.field, a.nrows + b.nrows, a.ncols);
  for (int j = 0; j < a.ncols; ++j) {
    for (int i = 0; i < a.nrows; ++i) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.nrows; ++i) out.at(a.nrows + i, j) = b.at(i, j);
  }
  return out;
}

KMat take_cols(const KMat& a, const std::vector<int>& idx) {
  KMat out(a.field, a.nrows, static_cast<int>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 0 || idx[j] >= a.ncols) throw WrongShape("take_cols index out of range");
    for (int i = 0; i < a.nrows; ++i) out.at(i, static_cast<int>(j)) = a.at(i, idx[j]);
  }
  return out;
}

KMat kron(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  KMat out(a.field, a.nrows * b.nrows, a.ncols * b.ncols);
  for (int i1 = 0; i1 < a.nrows; ++i1)
    for (int j1 = 0; j1 < a.ncols; ++j1)
      for (int i2 = 0; i2 < b.nrows; ++i2)
        for (int j2 = 0; j2 < b.ncols; ++j2)
          out.at(i1 * b.nrows + i2, j1 * b.ncols + j2) = a.at(i1, j1) * b.at(i2, j2);
  return out;
}

bool mat_eq(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.nrows != b.nrows || a.ncols != b.ncols) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (!a.data[i].eq(b.data[i])) return false;
  return true;
}

bool mat_is_zero(const KMat& a) {
  bool all = true;
  for (const Scalar& s : a.data) all = s.is_zero() && all;
  return all;
}

Echelon reduced_echelon(const KMat& a) {
  Echelon e{a, {}};
  KMat& m = e.mat;
  int r = 0;
  for (int col = 0; col < m.ncols && r < m.nrows; ++col) {
    int best = -1;
    for (int i = r; i < m.nrows; ++i) {
      if (m.at(i, col).is_zero()) continue;
      if (best < 0 || m.at(i, col).val() < m.at(best, col).val()) best = i;
    }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < m.ncols; ++j) std::swap(m.at(r, j), m.at(best, j));
    Scalar inv = m.at(r, col).inv();
    for (int j = 0; j < m.ncols; ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < m.nrows; ++i) {
      if (i == r || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (int j = 0; j < m.ncols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    e.pivot_cols.push_back(col);
    ++r;
  }
  return e;
}

int rank(const KMat& a) { return static_cast<int>(reduced_echelon(a).pivot_cols.size()); }

KMat null_space(const KMat& a) {
  Echelon e = reduced_echelon(a);
  std::vector<int> free_cols;
  {
    std::size_t k = 0;
    for (int j = 0; j < a.ncols; ++j) {
      if (k < e.pivot_cols.size() && e.pivot_cols[k] == j)
        ++k;
      else
        free_cols.push_back(j);
    }
  }
  KMat out(a.field, a.ncols, static_cast<int>(free_cols.size()));
  for (std::size_t c = 0; c < free_cols.size(); ++c) {
    out.at(free_cols[c], static_cast<int>(c)) = Scalar::one(a.field);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      out.at(e.pivot_cols[r], static_cast<int>(c)) =
          -e.mat.at(static_cast<int>(r), free_cols[c]);
  }
  return out;
}

std::optional<KMat> try_solve(const KMat& a, const KMat& b) {
  require_same_field(a, b);
  if (a.nrows != b.nrows) throw WrongShape("try_solve row mismatch");
  Echelon e = reduced_echelon(hstack(a, b));
  for (int c : e.pivot_cols)
    if (c >= a.ncols) return std::nullopt;
  KMat x(a.field, a.ncols, b.ncols);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    for (int j = 0; j < b.ncols; ++j)
      x.at(e.pivot_cols[r], j) = e.mat.at(static_cast<int>(r), a.ncols + j);
  return x;
}

KMat solve(const KMat& a, const KMat& b) {
  auto x = try_solve(a, b);
  if (!x) throw DomainError("linear system has no solution");
  return *x;
}

KMat inverse(const KMat& a) {
  if (a.nrows != a.ncols) throw WrongShape("inverse of a non-square matrix");
  auto x = try_solve(a, KMat::identity(a.field, a.nrows));
  if (!x) throw DomainError("matrix not invertible");
  return *x;
}

KMat column_space_basis(const KMat& a) {
  return take_cols(a, reduced_echelon(a).pivot_cols);
}

KMat left_annihilator(const KMat& a) { return transpose(null_space(transpose(a))); }

bool in_span(const KMat& v, const KMat& span) {
  return try_solve(span, v).has_value();
}

KMat intersect_spans(const KMat& a, const KMat& b) {
  KMat ker = null_space(hstack(a, mat_neg(b)));
  KMat top(a.field, a.ncols, ker.ncols);
  for (int i = 0; i < a.ncols; ++i)
    for (int j = 0; j < ker.ncols; ++j) top.at(i, j) = ker.at(i, j);
  return mat_mul(a, top);
}

}  // namespace mtphi
