#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

#include "perlat/algebra.hpp"
#include "perlat/linalg.hpp"

namespace perlat {

// Sparse element of some e_t A e_s: sorted (basis index, coeff) pairs.
template <class K>
struct Elem {
  std::vector<std::pair<int, K>> terms;

  bool zero() const { return terms.empty(); }
  static Elem single(int idx, K c) {
    Elem e;
    if (!is_zero(c)) e.terms.push_back({idx, std::move(c)});
    return e;
  }
  K coeff(int idx) const {
    for (auto& [i, c] : terms)
      if (i == idx) return c;
    return K(0);
  }
  void add_term(int idx, const K& c) {
    auto it = std::lower_bound(terms.begin(), terms.end(), idx,
                               [](const auto& p, int v) { return p.first < v; });
    if (it != terms.end() && it->first == idx) {
      it->second += c;
      if (is_zero(it->second)) terms.erase(it);
    } else if (!is_zero(c)) {
      terms.insert(it, {idx, c});
    }
  }
  Elem& operator+=(const Elem& o) {
    for (auto& [i, c] : o.terms) add_term(i, c);
    return *this;
  }
  Elem scaled(const K& f) const {
    Elem r;
    if (is_zero(f)) return r;
    r.terms = terms;
    for (auto& [i, c] : r.terms) c = c * f;
    return r;
  }
  Elem negated() const { return scaled(K(-1)); }
  bool operator==(const Elem& o) const { return terms == o.terms; }
};

template <class K>
Elem<K> mul(const Algebra& A, const Elem<K>& x, const Elem<K>& y) {  // x ∘ y
  Elem<K> r;
  for (auto& [bx, cx] : x.terms)
    for (auto& [by, cy] : y.terms) {
      int32_t p = A.prod(bx, by);
      if (p >= 0) r.add_term(p, cx * cy);
    }
  return r;
}

// Matrix of algebra elements: a map between direct sums of projectives,
// entry (r,c) in e_{target row vertex} A e_{source col vertex}.
template <class K>
struct BlockMat {
  int nr{0}, nc{0};
  std::vector<Elem<K>> e;

  BlockMat() = default;
  BlockMat(int rows, int cols) : nr(rows), nc(cols), e(size_t(rows) * cols) {}
  Elem<K>& at(int r, int c) { return e[size_t(r) * nc + c]; }
  const Elem<K>& at(int r, int c) const { return e[size_t(r) * nc + c]; }
  bool zero() const {
    for (auto& x : e)
      if (!x.zero()) return false;
    return true;
  }
};

template <class K>
BlockMat<K> compose(const Algebra& A, const BlockMat<K>& x, const BlockMat<K>& y) {  // x ∘ y
  assert(x.nc == y.nr);
  BlockMat<K> r(x.nr, y.nc);
  for (int i = 0; i < x.nr; ++i)
    for (int k = 0; k < x.nc; ++k) {
      if (x.at(i, k).zero()) continue;
      for (int j = 0; j < y.nc; ++j) {
        if (y.at(k, j).zero()) continue;
        r.at(i, j) += mul(A, x.at(i, k), y.at(k, j));
      }
    }
  return r;
}

// Bounded complex of projectives over a fixed algebra; cohomological
// differentials X^d -> X^{d+1}. Trimmed so the outermost degrees are
// nonempty; the zero complex has no degrees at all.
template <class K>
class ProjComplex {
 public:
  ProjComplex() = default;
  ProjComplex(AlgebraPtr alg, int lo, std::vector<std::vector<int>> summands,
              std::vector<BlockMat<K>> diffs, bool validate_now = true)
      : A_(std::move(alg)), lo_(lo), summ_(std::move(summands)), diff_(std::move(diffs)) {
    if (!summ_.empty() && diff_.size() != summ_.size() - 1)
      throw std::invalid_argument("complex: differential count mismatch");
    trim();
    if (validate_now) validate();
  }

  const AlgebraPtr& algebra() const { return A_; }
  bool zero() const { return summ_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + int(summ_.size()) - 1; }
  int total_summands() const {
    int n = 0;
    for (auto& s : summ_) n += int(s.size());
    return n;
  }

  const std::vector<int>& summands_at(int d) const {
    static const std::vector<int> none;
    if (zero() || d < lo_ || d > hi()) return none;
    return summ_[d - lo_];
  }
  BlockMat<K> diff_at(int d) const {  // X^d -> X^{d+1}
    int nr = int(summands_at(d + 1).size()), nc = int(summands_at(d).size());
    if (zero() || d < lo_ || d + 1 > hi()) return BlockMat<K>(nr, nc);
    return diff_[d - lo_] /* may be the last index? */;
  }

  void validate() const {
    if (zero()) return;
    for (size_t t = 0; t + 1 < summ_.size(); ++t) {
      const auto& D = diff_[t];
      if (D.nr != int(summ_[t + 1].size()) || D.nc != int(summ_[t].size()))
        throw std::logic_error("complex: differential shape mismatch");
      for (int r = 0; r < D.nr; ++r)
        for (int c = 0; c < D.nc; ++c)
          for (auto& [b, coeff] : D.at(r, c).terms)
            if (A_->src(b) != summ_[t][c] || A_->tgt(b) != summ_[t + 1][r])
              throw std::logic_error("complex: entry endpoints mismatch");
    }
    for (size_t t = 0; t + 2 < summ_.size(); ++t)
      if (!compose(*A_, diff_[t + 1], diff_[t]).zero())
        throw std::logic_error("complex: d∘d != 0");
  }

 private:
  void trim() {
    while (!summ_.empty() && summ_.back().empty()) {
      summ_.pop_back();
      if (!diff_.empty()) diff_.pop_back();
    }
    while (!summ_.empty() && summ_.front().empty()) {
      summ_.erase(summ_.begin());
      if (!diff_.empty()) diff_.erase(diff_.begin());
      ++lo_;
    }
    if (summ_.empty()) {
      lo_ = 0;
      diff_.clear();
    }
  }

  AlgebraPtr A_;
  int lo_{0};
  std::vector<std::vector<int>> summ_;
  std::vector<BlockMat<K>> diff_;
};

template <class K>
ProjComplex<K> zero_complex(AlgebraPtr A) {
  return ProjComplex<K>(std::move(A), 0, {}, {});
}

template <class K>
ProjComplex<K> stalk_projective(AlgebraPtr A, int vertex, int degree = 0) {
  return ProjComplex<K>(std::move(A), degree, {{vertex}}, {});
}

template <class K>
ProjComplex<K> shift(const ProjComplex<K>& X, int n) {
  if (X.zero() || n == 0) return X;
  std::vector<std::vector<int>> summ;
  std::vector<BlockMat<K>> diff;
  for (int d = X.lo(); d <= X.hi(); ++d) summ.push_back(X.summands_at(d));
  for (int d = X.lo(); d < X.hi(); ++d) {
    BlockMat<K> D = X.diff_at(d);
    if (n % 2 != 0)
      for (auto& e : D.e) e = e.negated();
    diff.push_back(std::move(D));
  }
  return ProjComplex<K>(X.algebra(), X.lo() - n, std::move(summ), std::move(diff), false);
}

template <class K>
ProjComplex<K> direct_sum(const std::vector<ProjComplex<K>>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: no parts");
  AlgebraPtr A = parts[0].algebra();
  int lo = 0, hi = -1;
  bool any = false;
  for (auto& p : parts) {
    if (p.algebra().get() != A.get()) throw std::invalid_argument("direct_sum: algebra mismatch");
    if (p.zero()) continue;
    if (!any) {
      lo = p.lo();
      hi = p.hi();
      any = true;
    } else {
      lo = std::min(lo, p.lo());
      hi = std::max(hi, p.hi());
    }
  }
  if (!any) return zero_complex<K>(A);
  std::vector<std::vector<int>> summ(hi - lo + 1);
  std::vector<BlockMat<K>> diff;
  std::vector<std::vector<int>> offs(hi - lo + 1);  // per degree, per part: offset
  for (int d = lo; d <= hi; ++d) {
    for (auto& p : parts) {
      offs[d - lo].push_back(int(summ[d - lo].size()));
      for (int v : p.summands_at(d)) summ[d - lo].push_back(v);
    }
  }
  for (int d = lo; d < hi; ++d) {
    BlockMat<K> D(int(summ[d - lo + 1].size()), int(summ[d - lo].size()));
    for (size_t pi = 0; pi < parts.size(); ++pi) {
      BlockMat<K> pd = parts[pi].diff_at(d);
      for (int r = 0; r < pd.nr; ++r)
        for (int c = 0; c < pd.nc; ++c)
          D.at(offs[d - lo + 1][pi] + r, offs[d - lo][pi] + c) = pd.at(r, c);
    }
    diff.push_back(std::move(D));
  }
  return ProjComplex<K>(A, lo, std::move(summ), std::move(diff), false);
}

// Degree-zero chain map between complexes over the same algebra.
template <class K>
struct ChainMap {
  ProjComplex<K> X, Y;
  std::vector<BlockMat<K>> blocks;  // block for degree d = blk_lo + t
  int blk_lo{0};

  BlockMat<K> block_at(int d) const {
    int nr = int(Y.summands_at(d).size()), nc = int(X.summands_at(d).size());
    int t = d - blk_lo;
    if (t < 0 || t >= int(blocks.size())) return BlockMat<K>(nr, nc);
    return blocks[t];
  }

  void validate() const {
    const Algebra& A = *X.algebra();
    for (int d = std::min(X.lo(), Y.lo()) - 1; d <= std::max(X.hi(), Y.hi()); ++d) {
      BlockMat<K> lhs = compose(A, Y.diff_at(d), block_at(d));
      BlockMat<K> rhs = compose(A, block_at(d + 1), X.diff_at(d));
      if (lhs.nr != rhs.nr || lhs.nc != rhs.nc) throw std::logic_error("chain map: shape bug");
      for (size_t t = 0; t < lhs.e.size(); ++t) {
        Elem<K> dcheck = lhs.e[t];
        dcheck += rhs.e[t].negated();
        if (!dcheck.zero()) throw std::logic_error("chain map does not commute with differentials");
      }
    }
  }
};

template <class K>
ChainMap<K> identity_map(const ProjComplex<K>& X) {
  ChainMap<K> f{X, X, {}, X.lo()};
  for (int d = X.lo(); d <= X.hi(); ++d) {
    int n = int(X.summands_at(d).size());
    BlockMat<K> b(n, n);
    for (int i = 0; i < n; ++i) b.at(i, i) = Elem<K>::single(X.summands_at(d)[i], K(1));
    f.blocks.push_back(std::move(b));
  }
  return f;
}

template <class K>
ChainMap<K> compose_maps(const ChainMap<K>& g, const ChainMap<K>& f) {  // g ∘ f
  ChainMap<K> r{f.X, g.Y, {}, 0};
  int lo = std::min(f.X.lo(), g.Y.lo());
  int hi = std::max(f.X.zero() ? lo : f.X.hi(), g.Y.zero() ? lo : g.Y.hi());
  r.blk_lo = lo;
  for (int d = lo; d <= hi; ++d)
    r.blocks.push_back(compose(*f.X.algebra(), g.block_at(d), f.block_at(d)));
  return r;
}

// cone(f: X -> Y): degree d carries Y^d ⊕ X^{d+1}, differential
// [[d_Y, f],[0, -d_X]].
template <class K>
ProjComplex<K> cone(const ChainMap<K>& f) {
  const auto& X = f.X;
  const auto& Y = f.Y;
  AlgebraPtr A = X.algebra();
  if (X.zero() && Y.zero()) return zero_complex<K>(A);
  int lo = std::min(Y.zero() ? X.lo() - 1 : Y.lo(), X.zero() ? Y.lo() : X.lo() - 1);
  int hi = std::max(Y.zero() ? X.hi() - 1 : Y.hi(), X.zero() ? Y.lo() : X.hi() - 1);
  std::vector<std::vector<int>> summ;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> s = Y.summands_at(d);
    for (int v : X.summands_at(d + 1)) s.push_back(v);
    summ.push_back(std::move(s));
  }
  std::vector<BlockMat<K>> diff;
  for (int d = lo; d < hi; ++d) {
    int ny0 = int(Y.summands_at(d).size()), nx0 = int(X.summands_at(d + 1).size());
    int ny1 = int(Y.summands_at(d + 1).size()), nx1 = int(X.summands_at(d + 2).size());
    BlockMat<K> D(ny1 + nx1, ny0 + nx0);
    BlockMat<K> dy = Y.diff_at(d), dx = X.diff_at(d + 1), fb = f.block_at(d + 1);
    for (int r = 0; r < ny1; ++r)
      for (int c = 0; c < ny0; ++c) D.at(r, c) = dy.at(r, c);
    for (int r = 0; r < ny1; ++r)
      for (int c = 0; c < nx0; ++c) D.at(r, ny0 + c) = fb.at(r, c);
    for (int r = 0; r < nx1; ++r)
      for (int c = 0; c < nx0; ++c) D.at(ny1 + r, ny0 + c) = dx.at(r, c).negated();
    diff.push_back(std::move(D));
  }
  return ProjComplex<K>(A, lo, std::move(summ), std::move(diff), false);
}

// Canonical maps around the cone triangle X -> Y -> cone(f) -> X[1].
template <class K>
ChainMap<K> cone_inclusion(const ChainMap<K>& f, const ProjComplex<K>& C) {
  ChainMap<K> inc{f.Y, C, {}, 0};
  if (f.Y.zero()) return inc;
  inc.blk_lo = f.Y.lo();
  for (int d = f.Y.lo(); d <= f.Y.hi(); ++d) {
    int ny = int(f.Y.summands_at(d).size());
    BlockMat<K> b(int(C.summands_at(d).size()), ny);
    for (int i = 0; i < ny; ++i) b.at(i, i) = Elem<K>::single(f.Y.summands_at(d)[i], K(1));
    inc.blocks.push_back(std::move(b));
  }
  return inc;
}

// cocone(g: X -> Y) = cone(g)[-1], with its canonical projection to X.
template <class K>
struct CoconeResult {
  ProjComplex<K> C;
  ChainMap<K> to_X;  // C -> X
};

template <class K>
CoconeResult<K> cocone(const ChainMap<K>& g) {
  const auto& X = g.X;
  const auto& Y = g.Y;
  AlgebraPtr A = X.algebra();
  int lo = std::min(X.zero() ? Y.lo() + 1 : X.lo(), Y.zero() ? X.lo() : Y.lo() + 1);
  int hi = std::max(X.zero() ? Y.hi() + 1 : X.hi(), Y.zero() ? X.lo() : Y.hi() + 1);
  if (X.zero() && Y.zero()) return {zero_complex<K>(A), ChainMap<K>{X, X, {}, 0}};
  std::vector<std::vector<int>> summ;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> s = Y.summands_at(d - 1);
    for (int v : X.summands_at(d)) s.push_back(v);
    summ.push_back(std::move(s));
  }
  // d(y, x) = (-d_Y y - g x, d_X x)
  std::vector<BlockMat<K>> diff;
  for (int d = lo; d < hi; ++d) {
    int ny0 = int(Y.summands_at(d - 1).size()), nx0 = int(X.summands_at(d).size());
    int ny1 = int(Y.summands_at(d).size()), nx1 = int(X.summands_at(d + 1).size());
    BlockMat<K> D(ny1 + nx1, ny0 + nx0);
    BlockMat<K> dy = Y.diff_at(d - 1), dx = X.diff_at(d), gb = g.block_at(d);
    for (int r = 0; r < ny1; ++r)
      for (int c = 0; c < ny0; ++c) D.at(r, c) = dy.at(r, c).negated();
    for (int r = 0; r < ny1; ++r)
      for (int c = 0; c < nx0; ++c) D.at(r, ny0 + c) = gb.at(r, c).negated();
    for (int r = 0; r < nx1; ++r)
      for (int c = 0; c < nx0; ++c) D.at(ny1 + r, ny0 + c) = dx.at(r, c);
    diff.push_back(std::move(D));
  }
  ProjComplex<K> C(A, lo, std::move(summ), std::move(diff), false);
  ChainMap<K> pr{C, X, {}, C.zero() ? 0 : C.lo()};
  for (int d = C.lo(); d <= C.hi() && !C.zero(); ++d) {
    int ny = int(Y.summands_at(d - 1).size()), nx = int(X.summands_at(d).size());
    BlockMat<K> b(nx, ny + nx);
    for (int i = 0; i < nx; ++i) b.at(i, ny + i) = Elem<K>::single(X.summands_at(d)[i], K(1));
    pr.blocks.push_back(std::move(b));
  }
  return {std::move(C), std::move(pr)};
}

}  // namespace perlat
