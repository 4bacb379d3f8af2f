#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace perlat {

struct GridPoint {
  int64_t i{0};  // row
  int64_t j{0};  // column
  auto operator<=>(const GridPoint&) const = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.i + b.i, a.j + b.j}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.i - b.i, a.j - b.j}; }

inline std::string to_string(GridPoint p) {
  return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

// Finite subset of Z^2, kept sorted lexicographically by (i,j).
class LatticeSet {
 public:
  LatticeSet() = default;
  explicit LatticeSet(std::vector<GridPoint> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  const std::vector<GridPoint>& points() const { return pts_; }
  size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool contains(GridPoint p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
  }
  bool operator==(const LatticeSet& o) const { return pts_ == o.pts_; }

  // S_k: columns present in row k.
  std::vector<int64_t> row(int64_t k) const {
    std::vector<int64_t> r;
    for (auto p : pts_)
      if (p.i == k) r.push_back(p.j);
    return r;
  }
  // S^k: rows present in column k.
  std::vector<int64_t> col(int64_t k) const {
    std::vector<int64_t> r;
    for (auto p : pts_)
      if (p.j == k) r.push_back(p.i);
    std::sort(r.begin(), r.end());
    return r;
  }
  // S_{i,j} = S ∩ [i-1,i]x[j-1,j].
  LatticeSet square(GridPoint p) const {
    std::vector<GridPoint> r;
    for (auto d : {GridPoint{-1, -1}, GridPoint{-1, 0}, GridPoint{0, -1}, GridPoint{0, 0}})
      if (contains(p + d)) r.push_back(p + d);
    return LatticeSet(std::move(r));
  }

  int64_t min_row() const { return require_nonempty(), pts_.front().i; }
  int64_t max_row() const {
    require_nonempty();
    int64_t m = pts_[0].i;
    for (auto p : pts_) m = std::max(m, p.i);
    return m;
  }
  int64_t min_col() const {
    require_nonempty();
    int64_t m = pts_[0].j;
    for (auto p : pts_) m = std::min(m, p.j);
    return m;
  }
  int64_t max_col() const {
    require_nonempty();
    int64_t m = pts_[0].j;
    for (auto p : pts_) m = std::max(m, p.j);
    return m;
  }

  std::vector<int64_t> row_indices() const {
    std::vector<int64_t> r;
    for (auto p : pts_)
      if (r.empty() || r.back() != p.i) r.push_back(p.i);
    return r;
  }
  std::vector<int64_t> col_indices() const {
    std::set<int64_t> s;
    for (auto p : pts_) s.insert(p.j);
    return {s.begin(), s.end()};
  }

 private:
  void require_nonempty() const {
    if (pts_.empty()) throw std::domain_error("empty lattice set");
  }
  std::vector<GridPoint> pts_;
};

enum class Side { LE, GE };

inline LatticeSet map_points(const LatticeSet& s, auto&& f) {
  std::vector<GridPoint> r;
  r.reserve(s.size());
  for (auto p : s.points()) r.push_back(f(p));
  return LatticeSet(std::move(r));
}

// sigma_{<=k} / sigma_{>=k}: shift column by -1 on the row half-plane.
inline LatticeSet sigma(const LatticeSet& s, int64_t k, Side side) {
  return map_points(s, [&](GridPoint p) {
    bool hit = side == Side::LE ? p.i <= k : p.i >= k;
    return hit ? GridPoint{p.i, p.j - 1} : p;
  });
}
inline LatticeSet sigma_inv(const LatticeSet& s, int64_t k, Side side) {
  return map_points(s, [&](GridPoint p) {
    bool hit = side == Side::LE ? p.i <= k : p.i >= k;
    return hit ? GridPoint{p.i, p.j + 1} : p;
  });
}
// rho_{<=k} / rho_{>=k}: shift row by -1 on the column half-plane.
inline LatticeSet rho(const LatticeSet& s, int64_t k, Side side) {
  return map_points(s, [&](GridPoint p) {
    bool hit = side == Side::LE ? p.j <= k : p.j >= k;
    return hit ? GridPoint{p.i - 1, p.j} : p;
  });
}
inline LatticeSet rho_inv(const LatticeSet& s, int64_t k, Side side) {
  return map_points(s, [&](GridPoint p) {
    bool hit = side == Side::LE ? p.j <= k : p.j >= k;
    return hit ? GridPoint{p.i + 1, p.j} : p;
  });
}

inline LatticeSet transpose(const LatticeSet& s) {
  return map_points(s, [](GridPoint p) { return GridPoint{p.j, p.i}; });
}
inline LatticeSet translate(const LatticeSet& s, GridPoint v) {
  return map_points(s, [&](GridPoint p) { return p + v; });
}
inline LatticeSet negate(const LatticeSet& s) {
  return map_points(s, [](GridPoint p) { return GridPoint{-p.i, -p.j}; });
}
// Translate so min row = min col = 1.
inline LatticeSet normalize(const LatticeSet& s) {
  if (s.empty()) throw std::domain_error("normalize: empty lattice set");
  return translate(s, {1 - s.min_row(), 1 - s.min_col()});
}
// S ≡ S': equal up to translation.
inline bool equivalent(const LatticeSet& a, const LatticeSet& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return normalize(a) == normalize(b);
}

// Two positive compositions of equal length, the datum (p⃗;q⃗).
struct CompositionPair {
  std::vector<int64_t> p, q;

  CompositionPair(std::vector<int64_t> pp, std::vector<int64_t> qq)
      : p(std::move(pp)), q(std::move(qq)) {
    if (p.empty() || p.size() != q.size())
      throw std::invalid_argument("composition pair: lengths must match and be >= 1");
    for (auto x : p)
      if (x < 1) throw std::invalid_argument("composition pair: entries must be positive");
    for (auto x : q)
      if (x < 1) throw std::invalid_argument("composition pair: entries must be positive");
  }

  size_t length() const { return p.size(); }
  int64_t p_bar(size_t s) const { return partial(p, s); }
  int64_t q_bar(size_t s) const { return partial(q, s); }
  int64_t np() const { return p_bar(p.size()); }
  int64_t nq() const { return q_bar(q.size()); }

 private:
  static int64_t partial(const std::vector<int64_t>& v, size_t s) {
    int64_t t = 0;
    for (size_t i = 0; i < s; ++i) t += v[i];
    return t;
  }
};

// Y(p⃗;q⃗) = ∪_k [1+p̄_k, p̄_{k+1}] x [1, q̄_{r−k}].
inline LatticeSet young_pq(const CompositionPair& c) {
  std::vector<GridPoint> pts;
  size_t r = c.length();
  for (size_t k = 0; k < r; ++k)
    for (int64_t i = 1 + c.p_bar(k); i <= c.p_bar(k + 1); ++i)
      for (int64_t j = 1; j <= c.q_bar(r - k); ++j) pts.push_back({i, j});
  return LatticeSet(std::move(pts));
}

// Y(p,q,r): rows 1..p-1 of width q, row p of width q-r; r=0 is the full
// rectangle, r=q drops the last row entirely.
inline LatticeSet young_pqr(int64_t p, int64_t q, int64_t r) {
  if (p < 1 || q < 1 || r < 0 || r > q) throw std::invalid_argument("young_pqr: need p,q >= 1, 0 <= r <= q");
  std::vector<GridPoint> pts;
  for (int64_t i = 1; i < p; ++i)
    for (int64_t j = 1; j <= q; ++j) pts.push_back({i, j});
  for (int64_t j = 1; j <= q - r; ++j) pts.push_back({p, j});
  return LatticeSet(std::move(pts));
}

struct MGateReport {
  bool ok{false};
  bool used_empty_rows{false};  // the empty-row convention was exercised
  std::string detail;
};

namespace detail {
inline bool is_interval(const std::vector<int64_t>& xs) {
  if (xs.empty()) return true;
  return xs.back() - xs.front() + 1 == int64_t(xs.size());
}
inline bool shifted_by_one(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  // a == b + 1 elementwise
  if (a.size() != b.size() || a.empty()) return false;
  for (size_t t = 0; t < a.size(); ++t)
    if (a[t] != b[t] + 1) return false;
  return true;
}
inline bool subset_of(const std::vector<int64_t>& a, const std::vector<int64_t>& b, int64_t shift) {
  for (auto x : a)
    if (!std::binary_search(b.begin(), b.end(), x - shift)) return false;
  return true;
}

inline MGateReport m_gate(const LatticeSet& s, int64_t k, bool minus) {
  MGateReport rep;
  if (k < 0) {
    rep.detail = "k must be nonnegative";
    return rep;
  }
  std::vector<std::vector<int64_t>> rows;
  for (int64_t i = 0; i <= k + 1; ++i) {
    auto r = s.row(i);
    if (r.empty()) rep.used_empty_rows = true;
    if (!is_interval(r)) {
      rep.detail = "row " + std::to_string(i) + " is not an interval";
      return rep;
    }
    rows.push_back(std::move(r));
  }
  for (int64_t i = 1; i <= k; ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i - 1];
    bool ok = (a == b && (!a.empty() || b.empty())) || shifted_by_one(a, b);
    if (a.empty() && b.empty()) ok = true;
    if (a.empty() != b.empty()) ok = false;
    if (!ok) {
      rep.detail = "rows " + std::to_string(i - 1) + "," + std::to_string(i) + " differ by more than a unit shift";
      return rep;
    }
  }
  if (!subset_of(rows[k + 1], rows[k], minus ? 1 : 0)) {
    rep.detail = minus ? "row k+1 not contained in row k shifted by 1" : "row k+1 not contained in row k";
    return rep;
  }
  rep.ok = true;
  return rep;
}
}  // namespace detail

inline MGateReport is_m_plus_report(const LatticeSet& s, int64_t k) { return detail::m_gate(s, k, false); }
inline MGateReport is_m_minus_report(const LatticeSet& s, int64_t k) { return detail::m_gate(s, k, true); }
inline bool is_m_plus(const LatticeSet& s, int64_t k) { return is_m_plus_report(s, k).ok; }
inline bool is_m_minus(const LatticeSet& s, int64_t k) { return is_m_minus_report(s, k).ok; }
inline bool is_m_plus_t(const LatticeSet& s, int64_t k) { return is_m_plus(transpose(s), k); }
inline bool is_m_minus_t(const LatticeSet& s, int64_t k) { return is_m_minus(transpose(s), k); }

// Rows of S below index -1 (the Mutation I side condition S_{<=-1} = ∅).
inline bool rows_nonnegative(const LatticeSet& s) { return s.empty() || s.min_row() >= 0; }
inline bool cols_nonnegative(const LatticeSet& s) { return s.empty() || s.min_col() >= 0; }

}  // namespace perlat
