#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perlat/invariants.hpp"
#include "perlat/project.hpp"

namespace perlat {

// A family of objects of per(A) indexed by a finite subset of Z^2.
template <class K>
struct SFamily {
  AlgebraPtr A;
  LatticeSet support;
  std::map<GridPoint, ProjComplex<K>> members;

  const ProjComplex<K>& member(GridPoint p) const {
    auto it = members.find(p);
    if (it == members.end()) throw std::out_of_range("family member " + to_string(p));
    return it->second;
  }

  // Row i ordered by ascending column: an exceptional sequence when the
  // family is weak (lexicographic Hom-vanishing).
  ExcSeq<K> row_seq(int64_t i) const {
    std::vector<ProjComplex<K>> objs;
    for (int64_t j : support.row(i)) objs.push_back(member({i, j}));
    return ExcSeq<K>::trusted(std::move(objs));
  }
  ExcSeq<K> col_seq(int64_t j) const {
    std::vector<ProjComplex<K>> objs;
    for (int64_t i : support.col(j)) objs.push_back(member({i, j}));
    return ExcSeq<K>::trusted(std::move(objs));
  }
  ExcSeq<K> full_seq() const {
    std::vector<ProjComplex<K>> objs;
    for (auto p : support.points()) objs.push_back(member(p));
    return ExcSeq<K>::trusted(std::move(objs));
  }
};

struct Witness {
  GridPoint from, to;
  int shift{0};
  std::string note;
};

struct AxiomItem {
  std::string axiom;
  bool pass{true};
  std::vector<Witness> witnesses;
};

struct AxiomReport {
  std::vector<AxiomItem> items;
  std::vector<std::string> notes;

  bool pass() const {
    for (auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  AxiomItem& item(const std::string& name) {
    for (auto& i : items)
      if (i.axiom == name) return i;
    items.push_back({name, true, {}});
    return items.back();
  }
  void fail(const std::string& name, Witness w) {
    AxiomItem& it = item(name);
    it.pass = false;
    it.witnesses.push_back(std::move(w));
  }
};

// (L1) exceptionality of every member, (L2.1)/(L2.2) locality of Hom.
template <class K>
AxiomReport check_weak(const SFamily<K>& fam) {
  AxiomReport rep;
  rep.item("L1");
  rep.item("L2.1");
  rep.item("L2.2");
  for (auto p : fam.support.points()) {
    HomDims h = hom_dims(fam.member(p), fam.member(p));
    if (!(h.size() == 1 && h.count(0) && h.at(0) == 1)) {
      int bad = 0;
      for (auto& [n, d] : h)
        if (n != 0 || d != 1) { bad = n; break; }
      rep.fail("L1", {p, p, bad, "End not K"});
    }
  }
  for (auto p : fam.support.points())
    for (auto q : fam.support.points()) {
      if (fam.support.square(p).contains(q)) continue;
      HomDims h = hom_dims(fam.member(p), fam.member(q));
      if (h.empty()) continue;
      int n = h.begin()->first;
      if (q.i < p.i - 1 || q.i > p.i)
        rep.fail("L2.1", {p, q, n, "Hom survives outside row window"});
      else
        rep.fail("L2.2", {p, q, n, "Hom survives outside column window"});
    }
  return rep;
}

namespace detail {
template <class K>
class SerreCache {
 public:
  explicit SerreCache(const SFamily<K>& fam) : fam_(fam) {}
  const ProjComplex<K>& of(GridPoint p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(p, serre(fam_.member(p))).first->second;
  }

 private:
  const SFamily<K>& fam_;
  std::map<GridPoint, ProjComplex<K>> cache_;
};
}  // namespace detail

// (S1)-(S3): Serre compatibility along rows, columns and the diagonal.
template <class K>
AxiomReport check_family(const SFamily<K>& fam) {
  AxiomReport rep = check_weak(fam);
  if (!rep.pass()) {
    rep.notes.push_back("weak axioms failed; (S1)-(S3) skipped");
    return rep;
  }
  rep.item("S1");
  rep.item("S2");
  rep.item("S3");
  detail::SerreCache<K> sc(fam);
  ExcSeq<K> full = fam.full_seq();
  for (auto p : fam.support.points()) {
    GridPoint left{p.i, p.j - 1}, up{p.i - 1, p.j}, diag{p.i - 1, p.j - 1};
    if (fam.support.contains(left)) {
      ProjComplex<K> got = project_right(fam.row_seq(p.i), sc.of(p));
      if (!is_iso(got, fam.member(left))) rep.fail("S1", {p, left, 0, "row Serre mismatch"});
    }
    if (fam.support.contains(up)) {
      ProjComplex<K> got = project_right(fam.col_seq(p.j), sc.of(p));
      if (!is_iso(got, fam.member(up))) rep.fail("S2", {p, up, 0, "column Serre mismatch"});
    }
    if (fam.support.contains(diag)) {
      ProjComplex<K> got = project_right(full, sc.of(p));
      if (!is_iso(got, fam.member(diag))) rep.fail("S3", {p, diag, 0, "global Serre mismatch"});
    }
  }
  return rep;
}

// (S1')/(S2'): the projection-functor forms of (S1)/(S2).
template <class K>
AxiomReport check_prime_conditions(const SFamily<K>& fam) {
  AxiomReport rep = check_weak(fam);
  if (!rep.pass()) {
    rep.notes.push_back("weak axioms failed; (S1')/(S2') skipped");
    return rep;
  }
  rep.item("S1'");
  rep.item("S2'");
  for (auto p : fam.support.points()) {
    GridPoint left{p.i, p.j - 1}, up{p.i - 1, p.j};
    if (fam.support.contains(left)) {
      ProjComplex<K> got = project_left(fam.col_seq(p.j - 1), fam.member(p));
      if (!is_iso(got, fam.member(left))) rep.fail("S1'", {p, left, 0, "column projection mismatch"});
    }
    if (fam.support.contains(up)) {
      ProjComplex<K> got = project_left(fam.row_seq(p.i - 1), fam.member(p));
      if (!is_iso(got, fam.member(up))) rep.fail("S2'", {p, up, 0, "row projection mismatch"});
    }
  }
  return rep;
}

// (Y1)-(Y4) for families indexed by a normalized Young diagram.
template <class K>
AxiomReport check_Y(const SFamily<K>& fam) {
  const LatticeSet& S = fam.support;
  if (S.empty()) throw std::invalid_argument("check_Y: empty support");
  // normalized Young diagram: rows 1..p, row i = [1, λ_i], λ weakly decreasing
  {
    auto rows = S.row_indices();
    int64_t prev_len = -1;
    if (rows.front() != 1) throw std::invalid_argument("check_Y: support not a normalized Young diagram");
    for (size_t t = 0; t < rows.size(); ++t) {
      if (rows[t] != int64_t(t) + 1)
        throw std::invalid_argument("check_Y: support not a normalized Young diagram");
      auto r = S.row(rows[t]);
      if (r.front() != 1 || r.back() != int64_t(r.size()))
        throw std::invalid_argument("check_Y: support not a normalized Young diagram");
      if (prev_len >= 0 && int64_t(r.size()) > prev_len)
        throw std::invalid_argument("check_Y: support not a normalized Young diagram");
      prev_len = int64_t(r.size());
    }
  }
  AxiomReport rep;
  rep.item("Y1");
  rep.item("Y2");
  rep.item("Y3");
  rep.item("Y4");
  auto rows = S.row_indices();
  for (auto p : S.points())
    for (auto q : S.points()) {
      if (p.i < q.i && !hom_dims(fam.member(p), fam.member(q)).empty())
        rep.fail("Y1", {p, q, 0, "row semiorthogonality fails"});
      if (p.i == 1 && q.i == 1 && p.j < q.j && !hom_dims(fam.member(p), fam.member(q)).empty())
        rep.fail("Y2", {p, q, 0, "first-row orthogonality fails"});
    }
  detail::SerreCache<K> sc(fam);
  for (int64_t j : S.row(1)) {
    if (j == 1) continue;
    ProjComplex<K> got = project_right(fam.row_seq(1), sc.of({1, j}));
    if (!is_iso(got, fam.member({1, j - 1}))) rep.fail("Y3", {{1, j}, {1, j - 1}, 0, "first-row Serre"});
  }
  for (size_t t = 1; t < rows.size(); ++t) {
    int64_t i = rows[t];
    for (int64_t j : S.row(i)) {
      ProjComplex<K> lhs = sc.of({i, j});
      ProjComplex<K> rhs = project_right(fam.row_seq(i - 1), sc.of({i - 1, j}));
      if (!is_iso(lhs, rhs)) rep.fail("Y4", {{i, j}, {i - 1, j}, 0, "S(X_ij) vs row-(i-1) Serre"});
    }
  }
  return rep;
}

// The projectives of L(S), the paper's canonical S-family.
template <class K>
struct TrivialFamily {
  SFamily<K> fam;
  LatticeAlgebra la;
};

template <class K>
TrivialFamily<K> trivial_family(const LatticeSet& S) {
  TrivialFamily<K> out;
  out.la = lattice_algebra(S);
  out.fam.A = out.la.alg;
  out.fam.support = S;
  for (auto p : S.points())
    out.fam.members.emplace(p, stalk_projective<K>(out.la.alg, out.la.vertex(p)));
  return out;
}

// Shifted simples over L!(p⃗;q⃗): X_{i,j} = S(i,j)[-i-j].
template <class K>
SFamily<K> duality_family(const CompositionPair& c) {
  LatticeAlgebra la = lattice_shriek(c);
  SFamily<K> fam;
  fam.A = la.alg;
  fam.support = young_pq(c);
  for (auto p : fam.support.points()) {
    ProjComplex<K> res = HomCache<K>::instance().simple_res(la.alg, la.vertex(p));
    fam.members.emplace(p, shift(res, -int(p.i + p.j)));
  }
  return fam;
}

namespace detail {
// ν^a(P(i)) ≅ P(i + a q) over N(pq, q+1); verified once per construction.
template <class K>
void verify_nu_shifts_projectives(const AlgebraPtr& A, int64_t p, int64_t q) {
  for (int64_t i = 1; i + q <= p * q; ++i) {
    ProjComplex<K> lhs = HomCache<K>::instance().serre_of_stalk(A, int(i - 1));
    if (!is_iso(lhs, stalk_projective<K>(A, int(i + q - 1))))
      throw std::logic_error("lad_family: ν(P(i)) ≠ P(i+q), construction invalid");
  }
}

template <class K>
ExcSeq<K> projective_block_desc(const AlgebraPtr& A, int64_t lo_vertex, int64_t hi_vertex) {
  std::vector<ProjComplex<K>> objs;
  for (int64_t v = hi_vertex; v >= lo_vertex; --v) objs.push_back(stalk_projective<K>(A, int(v - 1)));
  return ExcSeq<K>::trusted(std::move(objs));
}
}  // namespace detail

// Proposition-"Lad"-style family over N(pq, q+1):
// X_{i,j} = F_{⟨ν^{p-i}(P)⟩}···F_{⟨ν(P)⟩}(S(j))[-j], P = P(1)⊕...⊕P(q).
template <class K>
SFamily<K> lad_family(int64_t p, int64_t q) {
  if (p * q <= q + 1) throw std::invalid_argument("lad_family: need pq > q+1");
  AlgebraPtr A = nakayama(p * q, q + 1);
  detail::verify_nu_shifts_projectives<K>(A, p, q);
  SFamily<K> fam;
  fam.A = A;
  fam.support = young_pq(CompositionPair({p}, {q}));
  for (int64_t j = 1; j <= q; ++j) {
    ProjComplex<K> X = shift(HomCache<K>::instance().simple_res(A, int(j - 1)), -int(j));
    fam.members.emplace(GridPoint{p, j}, X);
    for (int64_t i = p - 1; i >= 1; --i) {
      // apply F onto ⟨ν^{p-i}(P)⟩ = ⟨P((p-i)q+1), ..., P((p-i)q+q)⟩
      int64_t a = p - i;
      X = project_left(detail::projective_block_desc<K>(A, a * q + 1, a * q + q), X);
      fam.members.emplace(GridPoint{i, j}, X);
    }
  }
  return fam;
}

// Variant (b): projections onto ν-orbits of the top simples,
// X'_{i,j} = F_{⟨ν^{p-i}(S)⟩}···F_{⟨ν(S)⟩}(S((p-1)q+j))[-j].
template <class K>
SFamily<K> lad_family_prime(int64_t p, int64_t q) {
  if (p * q <= q + 1) throw std::invalid_argument("lad_family_prime: need pq > q+1");
  AlgebraPtr A = nakayama(p * q, q + 1);
  SFamily<K> fam;
  fam.A = A;
  fam.support = young_pq(CompositionPair({p}, {q}));
  // ⟨ν^a(S)⟩-sequences, a = 1..p-1 (ascending vertex order within each)
  std::vector<ExcSeq<K>> nu_seq(p);
  {
    std::vector<ProjComplex<K>> cur;
    for (int64_t k = 1; k <= q; ++k)
      cur.push_back(HomCache<K>::instance().simple_res(A, int((p - 1) * q + k - 1)));
    for (int64_t a = 1; a <= p - 1; ++a) {
      for (auto& X : cur) X = serre(X);
      nu_seq[a] = ExcSeq<K>::trusted(cur);
    }
  }
  for (int64_t j = 1; j <= q; ++j) {
    ProjComplex<K> X =
        shift(HomCache<K>::instance().simple_res(A, int((p - 1) * q + j - 1)), -int(j));
    fam.members.emplace(GridPoint{p, j}, X);
    for (int64_t i = p - 1; i >= 1; --i) {
      X = project_left(nu_seq[p - i], X);
      fam.members.emplace(GridPoint{i, j}, X);
    }
  }
  return fam;
}

// Theorem-"Nak" family: restrict the variant-(b) family to Y(p,q,r) and
// transport along RHom(P,-) to N(pq-r, q+1) (a relabeling on minimal
// complexes supported on the first pq-r vertices).
template <class K>
SFamily<K> nak_family(int64_t p, int64_t q, int64_t r) {
  if (p * q <= q + 1 || r < 0 || r > q - 1)
    throw std::invalid_argument("nak_family: need pq > q+1 and 0 <= r <= q-1");
  SFamily<K> big = lad_family_prime<K>(p, q);
  AlgebraPtr A = big.A;
  AlgebraPtr B = nakayama(p * q - r, q + 1);
  int cap = int(p * q - r);
  // A-basis -> B-basis for elements supported on vertices < cap
  std::map<std::pair<int, int>, int> bidx;
  for (int b = 0; b < B->dim(); ++b) bidx[{B->src(b), B->tgt(b)}] = b;
  std::vector<int> amap(A->dim(), -1);
  for (int b = 0; b < A->dim(); ++b)
    if (A->src(b) < cap && A->tgt(b) < cap) amap[b] = bidx.at({A->src(b), A->tgt(b)});

  SFamily<K> fam;
  fam.A = B;
  fam.support = young_pqr(p, q, r);
  for (auto pt : fam.support.points()) {
    ProjComplex<K> X = minimize(big.member(pt));
    std::vector<std::vector<int>> summ;
    std::vector<BlockMat<K>> diff;
    for (int d = X.lo(); d <= X.hi(); ++d) {
      std::vector<int> s;
      for (int v : X.summands_at(d)) {
        if (v >= cap)
          throw std::logic_error("nak_family: transported member uses a deleted vertex");
        s.push_back(v);
      }
      summ.push_back(std::move(s));
    }
    for (int d = X.lo(); d < X.hi(); ++d) {
      BlockMat<K> Dd = X.diff_at(d);
      for (auto& e : Dd.e) {
        Elem<K> ne;
        for (auto& [b, c] : e.terms) ne.add_term(amap[b], c);
        e = std::move(ne);
      }
      diff.push_back(std::move(Dd));
    }
    fam.members.emplace(pt, ProjComplex<K>(B, X.lo(), std::move(summ), std::move(diff)));
  }
  return fam;
}

// dim Hom^0 pattern of the family, in lexicographic support order.
template <class K>
IntMatrix end_algebra_pattern(const SFamily<K>& fam) {
  const auto& pts = fam.support.points();
  IntMatrix m(int(pts.size()));
  for (size_t t = 0; t < pts.size(); ++t) m.labels[t] = to_string(pts[t]);
  for (size_t y = 0; y < pts.size(); ++y)
    for (size_t x = 0; x < pts.size(); ++x) {
      HomDims h = hom_dims(fam.member(pts[y]), fam.member(pts[x]));
      auto it = h.find(0);
      m.at(int(x), int(y)) = it == h.end() ? 0 : it->second;
    }
  return m;
}

// End(X_S) ≅ L(support): pattern equals the square rule, all Hom spaces at
// shift 0 of dimension <= 1, no shifted Homs (pretilting), and both square
// composites are nonzero wherever the diagonal exists (the rescaling lemma
// then normalizes all structure constants to 1).
template <class K>
bool end_is_lattice(const SFamily<K>& fam, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto& pts = fam.support.points();
  for (auto p : pts)
    for (auto q : pts) {
      HomDims h = hom_dims(fam.member(p), fam.member(q));
      bool adjacent = fam.support.square(p).contains(q);
      for (auto& [n, d] : h)
        if (n != 0) return fail("shifted Hom " + to_string(p) + "->" + to_string(q) + "[" + std::to_string(n) + "]");
      int d0 = h.count(0) ? h.at(0) : 0;
      if (d0 != (adjacent ? 1 : 0))
        return fail("Hom^0 dim " + std::to_string(d0) + " at " + to_string(p) + "->" + to_string(q));
    }
  // square commutation: composites realize the diagonal morphism
  for (auto p : pts) {
    GridPoint left{p.i, p.j - 1}, up{p.i - 1, p.j}, diag{p.i - 1, p.j - 1};
    if (!fam.support.contains(diag)) continue;
    for (GridPoint mid : {left, up}) {
      if (!fam.support.contains(mid)) continue;
      auto f = hom_class_maps(fam.member(p), fam.member(mid), 0);
      auto g = hom_class_maps(fam.member(mid), fam.member(diag), 0);
      if (f.size() != 1 || g.size() != 1) return fail("generator extraction failed");
      ChainMap<K> comp = compose_maps(g[0], f[0]);
      HomComplex<K> H(fam.member(p), fam.member(diag));
      std::vector<BlockMat<K>> blocks;
      for (int d = fam.member(p).lo(); d <= fam.member(p).hi(); ++d)
        blocks.push_back(comp.block_at(d));
      if (H.is_boundary(0, H.pack(0, blocks)))
        return fail("square composite through " + to_string(mid) + " vanishes at " + to_string(p));
    }
  }
  return true;
}

template <class K>
SFamily<K> subfamily(const SFamily<K>& fam, const LatticeSet& T) {
  SFamily<K> out;
  out.A = fam.A;
  out.support = T;
  for (auto p : T.points()) out.members.emplace(p, fam.member(p));
  return out;
}

template <class K>
SFamily<K> translate_family(const SFamily<K>& fam, GridPoint v) {
  SFamily<K> out;
  out.A = fam.A;
  out.support = translate(fam.support, v);
  for (auto& [p, m] : fam.members) out.members.emplace(p + v, m);
  return out;
}

template <class K>
SFamily<K> transpose_family(const SFamily<K>& fam) {
  SFamily<K> out;
  out.A = fam.A;
  out.support = transpose(fam.support);
  for (auto& [p, m] : fam.members) out.members.emplace(GridPoint{p.j, p.i}, m);
  return out;
}

// Fullness: every ambient projective lies in the thick closure of the family.
template <class K>
bool family_is_full(const SFamily<K>& fam) {
  ExcSeq<K> seq = fam.full_seq();
  for (int v = 0; v < fam.A->nv(); ++v)
    if (!in_thick_closure(seq, stalk_projective<K>(fam.A, v))) return false;
  return true;
}

}  // namespace perlat
