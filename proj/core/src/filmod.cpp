#include "mtphi/filmod.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "mtphi/errors.hpp"

namespace mtphi {

namespace {

Scalar p_power(const LocalField& k, int n) {
  return Scalar::from_integer(k, k.p()).pow(n);
}

bool base_entries(const KMat& m) {
  for (const Scalar& s : m.data)
    if (!s.in_base()) return false;
  return true;
}

Scalar coord_scalar(const LocalField& k, const Qp& q) {
  std::vector<Qp> coords(k.e(), qp_zero(k.precision()));
  coords[0] = q;
  return Scalar::from_coords(k, std::move(coords));
}

KMat take_rows(const KMat& a, const std::vector<int>& idx) {
  KMat out(a.field, static_cast<int>(idx.size()), a.ncols);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < a.ncols; ++j) out.at(static_cast<int>(i), j) = a.at(idx[i], j);
  return out;
}

KMat block_diag(const KMat& a, const KMat& b) {
  KMat out(a.field, a.nrows + b.nrows, a.ncols + b.ncols);
  for (int i = 0; i < a.nrows; ++i)
    for (int j = 0; j < a.ncols; ++j) out.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.nrows; ++i)
    for (int j = 0; j < b.ncols; ++j) out.at(a.nrows + i, a.ncols + j) = b.at(i, j);
  return out;
}

void require_same_field(const FilPhiNModule& a, const FilPhiNModule& b) {
  if (!a.field.same_as(b.field)) throw WrongShape("modules over different fields");
}

}  // namespace

ValidationReport validate(const FilPhiNModule& m) {
  ValidationReport rep;
  auto bad = [&](std::string msg) { rep.problems.push_back(std::move(msg)); };
  const int d = m.dim;
  if (d < 0) {
    bad("negative dimension");
    return rep;
  }
  if (m.phi.nrows != d || m.phi.ncols != d) bad("phi is not dim x dim");
  if (m.monodromy.nrows != d || m.monodromy.ncols != d) bad("monodromy is not dim x dim");
  if (!rep.ok()) return rep;
  if (!base_entries(m.phi)) bad("phi has entries outside the base field");
  if (!base_entries(m.monodromy)) bad("monodromy has entries outside the base field");
  Scalar p = Scalar::from_integer(m.field, m.field.p());
  if (!mat_eq(mat_mul(m.monodromy, m.phi), scalar_mul(p, mat_mul(m.phi, m.monodromy))))
    bad("monodromy does not satisfy N phi = p phi N");
  for (std::size_t j = 0; j < m.filtration.size(); ++j) {
    const FiltStep& fs = m.filtration[j];
    std::string at = " at step " + std::to_string(fs.step);
    if (j > 0 && m.filtration[j - 1].step >= fs.step) bad("filtration steps not ascending");
    if (fs.basis.nrows != d) {
      bad("filtration basis of wrong height" + at);
      continue;
    }
    if (rank(fs.basis) != fs.basis.ncols) bad("filtration basis with dependent columns" + at);
    if (j > 0 && !try_solve(m.filtration[j - 1].basis, fs.basis).has_value())
      bad("filtration not nested" + at);
  }
  if (d > 0) {
    if (m.filtration.empty())
      bad("nonzero module without filtration steps");
    else if (rank(m.filtration.front().basis) != d)
      bad("lowest filtration step does not span the module");
  }
  return rep;
}

SlopeDecomposition slope_decomposition(const FilPhiNModule& m) {
  SlopeDecomposition out;
  if (m.dim == 0) return out;
  KMat phi_inv = [&] {
    try {
      return inverse(m.phi);
    } catch (const DomainError&) {
      throw NotMixedTatePhi("phi is singular");
    }
  }();
  // Any eigenvalue valuation is bounded below by the least entry valuation,
  // for phi and phi^{-1} alike; that pins the slope window.
  auto min_val = [](const KMat& a) {
    Rational v(0);
    bool seen = false;
    for (const Scalar& s : a.data) {
      if (s.is_zero()) continue;
      Rational w = s.val();
      if (!seen || w < v) v = w, seen = true;
    }
    return v;
  };
  long lo = min_val(m.phi).num().convert_to<long>();
  long hi = -min_val(phi_inv).num().convert_to<long>();
  int total = 0;
  for (long n = lo; n <= hi; ++n) {
    KMat shift = m.phi;
    Scalar pn = p_power(m.field, static_cast<int>(n));
    for (int i = 0; i < m.dim; ++i) shift.at(i, i) = shift.at(i, i) - pn;
    KMat ker = null_space(shift);
    if (ker.ncols > 0) {
      total += ker.ncols;
      out.components.emplace(static_cast<int>(n), std::move(ker));
    }
  }
  if (total != m.dim)
    throw NotMixedTatePhi("phi eigenvalues are not integer powers of p spanning M");
  return out;
}

SlopeBasis slope_basis(const FilPhiNModule& m) {
  SlopeDecomposition sd = slope_decomposition(m);
  SlopeBasis out{KMat(m.field, m.dim, 0), {}};
  for (auto it = sd.components.rbegin(); it != sd.components.rend(); ++it) {
    out.mat = hstack(out.mat, it->second);
    for (int j = 0; j < it->second.ncols; ++j) out.slopes.push_back(it->first);
  }
  return out;
}

KMat filtration_span_at(const FilPhiNModule& m, int i) {
  for (const FiltStep& fs : m.filtration)
    if (fs.step >= i) return fs.basis;
  return KMat(m.field, m.dim, 0);
}

bool is_mixed_tate(const FilPhiNModule& m) {
  if (m.dim == 0) return true;
  SlopeBasis sb = slope_basis(m);
  KMat sinv = inverse(sb.mat);
  int lo = sb.slopes.back();
  int hi = sb.slopes.front();
  if (!m.filtration.empty()) {
    lo = std::min(lo, m.filtration.front().step);
    hi = std::max(hi, m.filtration.back().step);
  }
  for (int i = lo; i <= hi; ++i) {
    std::vector<int> rows;
    for (std::size_t r = 0; r < sb.slopes.size(); ++r)
      if (sb.slopes[r] >= i) rows.push_back(static_cast<int>(r));
    KMat b = filtration_span_at(m, i);
    if (static_cast<int>(rows.size()) != b.ncols) return false;
    KMat proj = mat_mul(take_rows(sinv, rows), b);
    if (rank(proj) != b.ncols) return false;
  }
  return true;
}

Polygon newton_polygon(const FilPhiNModule& m) {
  Polygon p;
  for (const auto& [n, basis] : slope_decomposition(m).components)
    p.values.insert(p.values.end(), basis.ncols, n);
  return p;
}

Polygon hodge_polygon(const FilPhiNModule& m) {
  Polygon p;
  for (std::size_t j = 0; j < m.filtration.size(); ++j) {
    int next = (j + 1 < m.filtration.size()) ? m.filtration[j + 1].basis.ncols : 0;
    int mult = m.filtration[j].basis.ncols - next;
    if (mult > 0) p.values.insert(p.values.end(), mult, m.filtration[j].step);
  }
  std::sort(p.values.begin(), p.values.end());
  return p;
}

std::vector<FiltStep> normalize_filtration(std::map<int, KMat> spans) {
  std::vector<FiltStep> out;
  std::vector<std::pair<int, KMat>> items;
  items.reserve(spans.size());
  for (auto& [s, b] : spans) items.emplace_back(s, std::move(b));
  for (std::size_t j = 0; j < items.size(); ++j) {
    KMat& b = items[j].second;
    if (b.ncols == 0) continue;
    // Nesting makes equal column counts equal spans; keep the top of a run.
    if (j + 1 < items.size() && items[j + 1].second.ncols == b.ncols) continue;
    out.push_back({items[j].first, std::move(b)});
  }
  return out;
}

FilPhiNModule sub_module(const FilPhiNModule& m, const KMat& s) {
  FilPhiNModule out{m.field, s.ncols, solve(s, mat_mul(m.phi, s)),
                    solve(s, mat_mul(m.monodromy, s)), {}};
  std::map<int, KMat> spans;
  for (const FiltStep& fs : m.filtration)
    spans.emplace(fs.step, solve(s, intersect_spans(s, fs.basis)));
  out.filtration = normalize_filtration(std::move(spans));
  return out;
}

Quotient quotient_module(const FilPhiNModule& m, const KMat& s) {
  const int d = m.dim;
  const int k = s.ncols;
  Echelon ech = reduced_echelon(hstack(s, KMat::identity(m.field, d)));
  KMat comp(m.field, d, d - k);
  {
    int c = 0;
    for (int piv : ech.pivot_cols)
      if (piv >= k) comp.at(piv - k, c++) = Scalar::one(m.field);
  }
  KMat inv = inverse(hstack(s, comp));
  KMat proj(m.field, d - k, d);
  for (int i = 0; i < d - k; ++i)
    for (int j = 0; j < d; ++j) proj.at(i, j) = inv.at(k + i, j);
  FilPhiNModule q{m.field, d - k, mat_mul(proj, mat_mul(m.phi, comp)),
                  mat_mul(proj, mat_mul(m.monodromy, comp)), {}};
  std::map<int, KMat> spans;
  for (const FiltStep& fs : m.filtration)
    spans.emplace(fs.step, column_space_basis(mat_mul(proj, fs.basis)));
  q.filtration = normalize_filtration(std::move(spans));
  return {std::move(q), std::move(proj), std::move(comp)};
}

FilPhiNModule weight_sub(const FilPhiNModule& m, int i) {
  SlopeDecomposition sd = slope_decomposition(m);
  KMat w(m.field, m.dim, 0);
  for (const auto& [n, basis] : sd.components)
    if (n <= i) w = hstack(w, basis);
  return sub_module(m, w);
}

FilPhiNModule gr_weight(const FilPhiNModule& m, int i) {
  SlopeDecomposition sd = slope_decomposition(m);
  auto it = sd.components.find(i);
  int k = (it == sd.components.end()) ? 0 : it->second.ncols;
  FilPhiNModule g{m.field, k, scalar_mul(p_power(m.field, i), KMat::identity(m.field, k)),
                  KMat(m.field, k, k), {}};
  if (k > 0) g.filtration.push_back({i, KMat::identity(m.field, k)});
  return g;
}

bool check_weight_exactness(const FilPhiNModule& m, int i) {
  SlopeDecomposition sd = slope_decomposition(m);
  KMat wi(m.field, m.dim, 0);
  KMat wprev(m.field, m.dim, 0);
  int gr = 0;
  for (const auto& [n, basis] : sd.components) {
    if (n <= i) wi = hstack(wi, basis);
    if (n <= i - 1) wprev = hstack(wprev, basis);
    if (n == i) gr = basis.ncols;
  }
  int lo = i;
  int hi = i;
  if (!m.filtration.empty()) {
    lo = std::min(lo, m.filtration.front().step);
    hi = std::max(hi, m.filtration.back().step);
  }
  for (int j = lo; j <= hi + 1; ++j) {
    KMat f = filtration_span_at(m, j);
    int a = intersect_spans(f, wi).ncols;
    int b = intersect_spans(f, wprev).ncols;
    if (a - b != (j <= i ? gr : 0)) return false;
  }
  return true;
}

bool mt_criterion(const FilPhiNModule& m) {
  SlopeDecomposition sd;
  try {
    sd = slope_decomposition(m);
  } catch (const NotMixedTatePhi&) {
    return false;
  }
  for (const auto& [n, basis] : sd.components)
    if (!check_weight_exactness(m, n)) return false;
  return true;
}

std::vector<KMat> hom_space(const FilPhiNModule& m, const FilPhiNModule& mp) {
  require_same_field(m, mp);
  const LocalField& k = m.field;
  const int d = m.dim;
  const int dp = mp.dim;
  const int nunk = dp * d;
  std::vector<std::vector<Scalar>> krows;
  auto add_commute = [&](const KMat& a, const KMat& ap) {
    for (int r = 0; r < dp; ++r)
      for (int c = 0; c < d; ++c) {
        std::vector<Scalar> row(nunk, Scalar::zero(k));
        for (int t = 0; t < d; ++t) row[r * d + t] = row[r * d + t] + a.at(t, c);
        for (int t = 0; t < dp; ++t) row[t * d + c] = row[t * d + c] - ap.at(r, t);
        krows.push_back(std::move(row));
      }
  };
  add_commute(m.phi, mp.phi);
  add_commute(m.monodromy, mp.monodromy);
  for (const FiltStep& fs : m.filtration) {
    KMat ann = left_annihilator(filtration_span_at(mp, fs.step));
    const KMat& b = fs.basis;
    for (int i = 0; i < ann.nrows; ++i)
      for (int j = 0; j < b.ncols; ++j) {
        std::vector<Scalar> row(nunk, Scalar::zero(k));
        for (int r = 0; r < dp; ++r)
          for (int c = 0; c < d; ++c) row[r * d + c] = ann.at(i, r) * b.at(c, j);
        krows.push_back(std::move(row));
      }
  }
  // The unknowns live over the base field: each K-row splits into e rows of
  // coordinates.
  const int e = k.e();
  KMat sys(k, static_cast<int>(krows.size()) * e, nunk);
  for (std::size_t q = 0; q < krows.size(); ++q)
    for (int u = 0; u < nunk; ++u) {
      const std::vector<Qp>& coords = krows[q][u].coords();
      for (int t = 0; t < e; ++t)
        sys.at(static_cast<int>(q) * e + t, u) = coord_scalar(k, coords[t]);
    }
  KMat ns = null_space(sys);
  std::vector<KMat> out;
  for (int c = 0; c < ns.ncols; ++c) {
    KMat f(k, dp, d);
    for (int r = 0; r < dp; ++r)
      for (int cc = 0; cc < d; ++cc) f.at(r, cc) = ns.at(r * d + cc, c);
    out.push_back(std::move(f));
  }
  return out;
}

FilPhiNModule kernel(const KMat& f, const FilPhiNModule& m, const FilPhiNModule& mp) {
  if (f.nrows != mp.dim || f.ncols != m.dim) throw WrongShape("morphism shape mismatch");
  return sub_module(m, null_space(f));
}

FilPhiNModule cokernel(const KMat& f, const FilPhiNModule& m, const FilPhiNModule& mp) {
  if (f.nrows != mp.dim || f.ncols != m.dim) throw WrongShape("morphism shape mismatch");
  return quotient_module(mp, column_space_basis(f)).mod;
}

FilPhiNModule tensor(const FilPhiNModule& a, const FilPhiNModule& b) {
  require_same_field(a, b);
  const LocalField& k = a.field;
  KMat phi = kron(a.phi, b.phi);
  KMat n = mat_add(kron(a.monodromy, KMat::identity(k, b.dim)),
                   kron(KMat::identity(k, a.dim), b.monodromy));
  std::set<int> cands;
  for (const FiltStep& fa : a.filtration)
    for (const FiltStep& fb : b.filtration) cands.insert(fa.step + fb.step);
  std::map<int, KMat> spans;
  for (int i : cands) {
    KMat cols(k, a.dim * b.dim, 0);
    for (const FiltStep& fa : a.filtration)
      for (const FiltStep& fb : b.filtration)
        if (fa.step + fb.step >= i) cols = hstack(cols, kron(fa.basis, fb.basis));
    spans.emplace(i, column_space_basis(cols));
  }
  return {k, a.dim * b.dim, std::move(phi), std::move(n),
          normalize_filtration(std::move(spans))};
}

FilPhiNModule dual(const FilPhiNModule& m) {
  KMat phid = transpose(inverse(m.phi));
  KMat nd = mat_neg(transpose(m.monodromy));
  std::map<int, KMat> spans;
  for (const FiltStep& fs : m.filtration)
    spans.emplace(-fs.step, transpose(left_annihilator(filtration_span_at(m, 1 + fs.step))));
  return {m.field, m.dim, std::move(phid), std::move(nd),
          normalize_filtration(std::move(spans))};
}

FilPhiNModule tate_object(const LocalField& k, int n) {
  KMat phi(k, 1, 1);
  phi.at(0, 0) = p_power(k, -n);
  FilPhiNModule t{k, 1, std::move(phi), KMat(k, 1, 1), {}};
  t.filtration.push_back({-n, KMat::identity(k, 1)});
  return t;
}

FilPhiNModule tate_twist(const FilPhiNModule& m, int n) {
  return tensor(m, tate_object(m.field, n));
}

FilPhiNModule direct_sum(const FilPhiNModule& a, const FilPhiNModule& b) {
  require_same_field(a, b);
  std::set<int> cands;
  for (const FiltStep& fs : a.filtration) cands.insert(fs.step);
  for (const FiltStep& fs : b.filtration) cands.insert(fs.step);
  std::map<int, KMat> spans;
  for (int s : cands) {
    KMat sa = filtration_span_at(a, s);
    KMat sb = filtration_span_at(b, s);
    spans.emplace(s, block_diag(sa, sb));
  }
  return {a.field, a.dim + b.dim, block_diag(a.phi, b.phi),
          block_diag(a.monodromy, b.monodromy), normalize_filtration(std::move(spans))};
}

}  // namespace mtphi
