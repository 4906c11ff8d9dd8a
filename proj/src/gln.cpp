#include "cuspgamma/gln.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cuspgamma {

namespace {

// Polynomials with F_q coefficients (level-1 FqElem), ascending degrees.
using FPoly = std::vector<FqElem>;

void ftrim(const FieldTower& tw, FPoly& a) {
  while (!a.empty() && a.back() == tw.zero()) a.pop_back();
}

FPoly fmul(const FieldTower& tw, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly c(a.size() + b.size() - 1, tw.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = tw.add(c[i + j], tw.mul(a[i], b[j]));
  }
  ftrim(tw, c);
  return c;
}

FPoly fadd(const FieldTower& tw, const FPoly& a, const FPoly& b) {
  FPoly c(std::max(a.size(), b.size()), tw.zero());
  for (std::size_t i = 0; i < c.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : tw.zero();
    FqElem y = i < b.size() ? b[i] : tw.zero();
    c[i] = tw.add(x, y);
  }
  ftrim(tw, c);
  return c;
}

// a = qu * b + re with b monic
void fdivmod(const FieldTower& tw, FPoly a, const FPoly& b, FPoly& qu, FPoly& re) {
  ftrim(tw, a);
  const std::size_t db = b.size() - 1;
  qu.assign(a.size() > db ? a.size() - db : 0, tw.zero());
  while (a.size() > db) {
    FqElem c = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (!c.is_zero()) {
      qu[shift] = c;
      for (std::size_t i = 0; i < db; ++i) a[shift + i] = tw.sub(a[shift + i], tw.mul(c, b[i]));
    }
    a.pop_back();
    ftrim(tw, a);
  }
  re = std::move(a);
}

FqElem feval(const FieldTower& tw, const FPoly& a, FqElem x) {
  FqElem acc = tw.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = tw.add(tw.mul(acc, x), a[i]);
  return acc;
}

// det(xI - A) by cofactor expansion over column subsets.
FPoly char_poly(const MatFq& A) {
  const FieldTower& tw = *A.tower();
  const u32 n = A.size();
  std::vector<FPoly> table(std::size_t(1) << n);
  table[0] = {tw.one()};
  for (u32 mask = 1; mask < (1u << n); ++mask) {
    u32 k = static_cast<u32>(__builtin_popcount(mask));
    u32 row = k - 1;
    FPoly det;
    u32 pos = 0;
    for (u32 j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      FPoly entry;  // (xI - A)[row][j]
      if (row == j)
        entry = {tw.neg(A.at(row, j)), tw.one()};
      else
        entry = {tw.neg(A.at(row, j))};
      ftrim(tw, entry);
      FPoly term = fmul(tw, entry, table[mask & ~(1u << j)]);
      if (((k - 1 + pos) & 1u) != 0)
        for (auto& c : term) c = tw.neg(c);
      det = fadd(tw, det, term);
      ++pos;
    }
    table[mask] = std::move(det);
  }
  return table[(1u << n) - 1];
}

// Monic irreducible polynomials over F_q of degree exactly dd, by trial
// division against lower-degree irreducibles.
std::vector<FPoly> irreducibles_up_to(const FieldTower& tw, u32 maxdeg) {
  std::vector<FPoly> irr;
  const u64 q = tw.q();
  for (u32 dd = 1; dd <= maxdeg; ++dd) {
    u64 count = ipow_u64(q, dd);
    for (u64 v = 0; v < count; ++v) {
      FPoly m(dd + 1, tw.zero());
      u64 t = v;
      for (u32 i = 0; i < dd; ++i) {
        m[i] = tw.subfield_element(1, t % q);
        t /= q;
      }
      m[dd] = tw.one();
      bool reducible = false;
      for (const auto& h : irr) {
        if (h.size() - 1 > dd / 2) break;
        FPoly qu, re;
        fdivmod(tw, m, h, qu, re);
        if (re.empty()) {
          reducible = true;
          break;
        }
      }
      if (!reducible) irr.push_back(std::move(m));
    }
  }
  return irr;
}

MatFq mat_poly_eval(const FPoly& h, const MatFq& A) {
  const FieldTower& tw = *A.tower();
  const u32 n = A.size();
  MatFq acc(&tw, n);
  for (std::size_t i = h.size(); i-- > 0;) {
    acc = acc * A;
    for (u32 r = 0; r < n; ++r) acc.set(r, r, tw.add(acc.at(r, r), h[i]));
  }
  return acc;
}

}  // namespace

MatFq MatFq::identity(const FieldTower* tw, u32 n) {
  MatFq m(tw, n);
  for (u32 i = 0; i < n; ++i) m.set(i, i, tw->one());
  return m;
}

MatFq MatFq::operator*(const MatFq& rhs) const {
  MatFq out(tw_, n_);
  for (u32 i = 0; i < n_; ++i) {
    for (u32 k = 0; k < n_; ++k) {
      FqElem aik = at(i, k);
      if (aik.is_zero()) continue;
      for (u32 j = 0; j < n_; ++j) {
        FqElem b = rhs.at(k, j);
        if (b.is_zero()) continue;
        out.set(i, j, tw_->add(out.at(i, j), tw_->mul(aik, b)));
      }
    }
  }
  return out;
}

bool MatFq::operator==(const MatFq& rhs) const { return n_ == rhs.n_ && a_ == rhs.a_; }

u32 MatFq::rank() const {
  MatFq m = *this;
  u32 rank = 0;
  for (u32 col = 0; col < n_ && rank < n_; ++col) {
    u32 pivot = n_;
    for (u32 r = rank; r < n_; ++r) {
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n_) continue;
    for (u32 j = 0; j < n_; ++j) {
      FqElem t = m.at(rank, j);
      m.set(rank, j, m.at(pivot, j));
      m.set(pivot, j, t);
    }
    FqElem inv = tw_->inv(m.at(rank, col));
    for (u32 r = rank + 1; r < n_; ++r) {
      FqElem factor = tw_->mul(m.at(r, col), inv);
      if (factor.is_zero()) continue;
      for (u32 j = col; j < n_; ++j) m.set(r, j, tw_->sub(m.at(r, j), tw_->mul(factor, m.at(rank, j))));
    }
    ++rank;
  }
  return rank;
}

MatFq MatFq::inverse() const {
  MatFq m = *this;
  MatFq inv = identity(tw_, n_);
  for (u32 col = 0; col < n_; ++col) {
    u32 pivot = n_;
    for (u32 r = col; r < n_; ++r) {
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n_) fail(Errc::SingularMatrix, "matrix inverse");
    for (u32 j = 0; j < n_; ++j) {
      std::swap(m.a_[std::size_t(col) * n_ + j], m.a_[std::size_t(pivot) * n_ + j]);
      std::swap(inv.a_[std::size_t(col) * n_ + j], inv.a_[std::size_t(pivot) * n_ + j]);
    }
    FqElem pinv = tw_->inv(m.at(col, col));
    for (u32 j = 0; j < n_; ++j) {
      m.set(col, j, tw_->mul(m.at(col, j), pinv));
      inv.set(col, j, tw_->mul(inv.at(col, j), pinv));
    }
    for (u32 r = 0; r < n_; ++r) {
      if (r == col) continue;
      FqElem factor = m.at(r, col);
      if (factor.is_zero()) continue;
      for (u32 j = 0; j < n_; ++j) {
        m.set(r, j, tw_->sub(m.at(r, j), tw_->mul(factor, m.at(col, j))));
        inv.set(r, j, tw_->sub(inv.at(r, j), tw_->mul(factor, inv.at(col, j))));
      }
    }
  }
  return inv;
}

bool MatFq::is_upper_unitriangular() const {
  for (u32 i = 0; i < n_; ++i) {
    if (at(i, i) != tw_->one()) return false;
    for (u32 j = 0; j < i; ++j)
      if (!at(i, j).is_zero()) return false;
  }
  return true;
}

std::vector<u32> MatFq::packed() const {
  std::vector<u32> out(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) out[i] = tw_->packed(a_[i]);
  return out;
}

MatFq MatFq::from_packed(const FieldTower* tw, u32 n, const std::vector<u32>& entries) {
  if (entries.size() != std::size_t(n) * n) fail(Errc::BadInput, "matrix entry count mismatch");
  MatFq m(tw, n);
  for (std::size_t i = 0; i < entries.size(); ++i) m.a_[i] = tw->from_packed(entries[i]);
  return m;
}

std::vector<MatFq> enumerate_unipotent(const FieldTower* tw, u32 n, u64 limit) {
  const u64 q = tw->q();
  const u32 slots = n * (n - 1) / 2;
  u64 total = 1;
  for (u32 i = 0; i < slots; ++i) {
    if (total > limit / q) fail(Errc::EnumerationTooLarge, "unipotent enumeration");
    total *= q;
  }
  std::vector<MatFq> out;
  out.reserve(total);
  for (u64 v = 0; v < total; ++v) {
    MatFq m = MatFq::identity(tw, n);
    u64 t = v;
    for (u32 i = 0; i < n; ++i) {
      for (u32 j = i + 1; j < n; ++j) {
        m.set(i, j, tw->subfield_element(1, t % q));
        t /= q;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MatFq> enumerate_gl(const FieldTower* tw, u32 n, u64 limit) {
  const u64 q = tw->q();
  u64 total = 1;
  for (u32 i = 0; i < n * n; ++i) {
    if (total > limit / q) fail(Errc::EnumerationTooLarge, "GL enumeration");
    total *= q;
  }
  std::vector<MatFq> out;
  for (u64 v = 0; v < total; ++v) {
    MatFq m(tw, n);
    u64 t = v;
    for (u32 i = 0; i < n; ++i) {
      for (u32 j = 0; j < n; ++j) {
        m.set(i, j, tw->subfield_element(1, t % q));
        t /= q;
      }
    }
    if (m.invertible()) out.push_back(std::move(m));
  }
  return out;
}

cx psi_n(const MatFq& u, const AddChar& phi) {
  if (!u.is_upper_unitriangular()) fail(Errc::NotUnipotent, "psi_n argument");
  const FieldTower& tw = *u.tower();
  FqElem s = tw.zero();
  for (u32 i = 0; i + 1 < u.size(); ++i) s = tw.add(s, u.at(i, i + 1));
  return eval_add(phi, s);
}

MatFq coset_canonical(const MatFq& g) {
  const FieldTower& tw = *g.tower();
  const u32 m = g.size();
  MatFq a = g;
  std::vector<u32> pivot(m, m);
  for (u32 i = m; i-- > 0;) {
    // clear this row at the pivots of the rows below, bottom row first
    for (u32 r = m; r-- > i + 1;) {
      FqElem v = a.at(i, pivot[r]);
      if (v.is_zero()) continue;
      FqElem factor = tw.div(v, a.at(r, pivot[r]));
      for (u32 j = 0; j < m; ++j) a.set(i, j, tw.sub(a.at(i, j), tw.mul(factor, a.at(r, j))));
    }
    u32 p = m;
    for (u32 j = 0; j < m; ++j) {
      if (!a.at(i, j).is_zero()) {
        p = j;
        break;
      }
    }
    if (p == m) fail(Errc::SingularMatrix, "coset normal form of singular matrix");
    pivot[i] = p;
  }
  return a;
}

double gl_order(u64 q, u32 n) {
  double res = 1.0;
  double qn = std::pow(static_cast<double>(q), static_cast<double>(n));
  for (u32 j = 0; j < n; ++j) res *= qn - std::pow(static_cast<double>(q), static_cast<double>(j));
  return res;
}

std::vector<MatFq> coset_reps(const FieldTower* tw, u32 m, u64 limit) {
  double cosets = gl_order(tw->q(), m) / std::pow(static_cast<double>(tw->q()), double(m) * (m - 1) / 2.0);
  if (cosets > static_cast<double>(limit)) fail(Errc::EnumerationTooLarge, "coset enumeration");
  auto all = enumerate_gl(tw, m, limit);
  std::map<std::vector<u32>, MatFq> reps;
  for (const auto& g : all) {
    MatFq c = coset_canonical(g);
    reps.emplace(c.packed(), c);
  }
  std::vector<MatFq> out;
  out.reserve(reps.size());
  for (auto& kv : reps) out.push_back(std::move(kv.second));
  return out;
}

ClassData class_data(const MatFq& A) {
  const FieldTower& tw = *A.tower();
  const u32 n = A.size();
  if (!A.invertible()) fail(Errc::SingularMatrix, "class data of singular matrix");
  FPoly cp = char_poly(A);

  // distinct irreducible factors, smallest first
  auto irr = irreducibles_up_to(tw, n);
  FPoly rest = cp;
  const FPoly* factor = nullptr;
  u32 nfactors = 0;
  for (const auto& h : irr) {
    if (rest.size() <= 1) break;
    FPoly qu, re;
    fdivmod(tw, rest, h, qu, re);
    if (!re.empty()) continue;
    ++nfactors;
    if (nfactors >= 2) break;
    factor = &h;
    while (re.empty() && rest.size() > 1) {
      rest = qu;
      if (rest.size() <= 1) break;
      fdivmod(tw, rest, h, qu, re);
    }
  }
  ClassData out;
  if (nfactors >= 2) {
    out.split = true;
    return out;
  }
  const FPoly& h = *factor;
  out.d = static_cast<u32>(h.size() - 1);

  // least-index root of h in F_{q^d}
  u64 units = tw.subfield_units(out.d);
  bool found = false;
  for (u64 j = 0; j < units; ++j) {
    FqElem x = tw.from_index(j * tw.subfield_step(out.d));
    if (feval(tw, h, x).is_zero()) {
      out.alpha = x;
      found = true;
      break;
    }
  }
  if (!found) fail(Errc::BadInput, "irreducible factor has no root at its degree (internal)");

  // lambda from nullity jumps of h(A)^k
  MatFq hA = mat_poly_eval(h, A);
  std::vector<u32> conj;  // conjugate partition parts
  MatFq pw = MatFq::identity(&tw, n);
  u32 prev_null = 0;
  while (prev_null < n) {
    pw = pw * hA;
    u32 null = n - pw.rank();
    if (null == prev_null) break;
    conj.push_back((null - prev_null) / out.d);
    prev_null = null;
  }
  // lambda is the conjugate partition: part i counts the nullity jumps >= i
  u32 maxpart = conj.empty() ? 0 : conj[0];
  for (u32 i = 1; i <= maxpart; ++i) {
    u32 cnt = 0;
    for (u32 c : conj)
      if (c >= i) ++cnt;
    out.lambda.push_back(cnt);
  }
  return out;
}

MatFq random_gl(const FieldTower* tw, u32 n, SplitMix64& rng) {
  const u64 q = tw->q();
  for (;;) {
    MatFq m(tw, n);
    for (u32 i = 0; i < n; ++i)
      for (u32 j = 0; j < n; ++j) m.set(i, j, tw->subfield_element(1, rng.below(q)));
    if (m.invertible()) return m;
  }
}

MatFq random_unipotent(const FieldTower* tw, u32 n, SplitMix64& rng) {
  const u64 q = tw->q();
  MatFq m = MatFq::identity(tw, n);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j < n; ++j) m.set(i, j, tw->subfield_element(1, rng.below(q)));
  return m;
}

}  // namespace cuspgamma
