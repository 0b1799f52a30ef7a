#include "biapn/f2linalg.hpp"

namespace biapn {

unsigned rank_f2(F2Matrix a) {
  unsigned r = 0;
  for (unsigned c = 0; c < a.cols && r < a.rows; ++c) {
    unsigned pivot = r;
    while (pivot < a.rows && !a.get(pivot, c)) ++pivot;
    if (pivot == a.rows) continue;
    if (pivot != r)
      for (unsigned k = 0; k < a.wpr; ++k) std::swap(a.row(r)[k], a.row(pivot)[k]);
    for (unsigned i = r + 1; i < a.rows; ++i)
      if (a.get(i, c))
        for (unsigned k = 0; k < a.wpr; ++k) a.row(i)[k] ^= a.row(r)[k];
    ++r;
  }
  return r;
}

unsigned kernel_dim_f2(const F2Matrix& a) { return a.cols - rank_f2(a); }

unsigned rank64(std::vector<std::uint64_t>& rows) {
  unsigned r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t v = rows[i];
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t p = rows[j];
      if (v & (p & ~(p - 1))) v ^= p;  // reduce by pivot row's lowest set bit
    }
    if (v) rows[r++] = v;
  }
  rows.resize(r);
  return r;
}

bool F2System64::solve(std::uint64_t& particular,
                       std::vector<std::uint64_t>& kernel_basis) const {
  // Reduced row echelon over (lhs | rhs) with one pivot column per variable.
  std::vector<std::uint64_t> l(lhs);
  std::vector<std::uint8_t> r(rhs);
  std::vector<int> pivot_row(nvars, -1);
  std::size_t next = 0;
  for (unsigned v = 0; v < nvars && next < l.size(); ++v) {
    std::uint64_t bit = 1ull << v;
    std::size_t p = next;
    while (p < l.size() && !(l[p] & bit)) ++p;
    if (p == l.size()) continue;
    std::swap(l[p], l[next]);
    std::swap(r[p], r[next]);
    for (std::size_t i = 0; i < l.size(); ++i)
      if (i != next && (l[i] & bit)) {
        l[i] ^= l[next];
        r[i] ^= r[next];
      }
    pivot_row[v] = int(next);
    ++next;
  }
  for (std::size_t i = next; i < l.size(); ++i)
    if (!l[i] && r[i]) return false;

  particular = 0;
  for (unsigned v = 0; v < nvars; ++v)
    if (pivot_row[v] >= 0 && r[pivot_row[v]]) particular |= 1ull << v;

  kernel_basis.clear();
  for (unsigned f = 0; f < nvars; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::uint64_t vec = 1ull << f;
    for (unsigned v = 0; v < nvars; ++v)
      if (pivot_row[v] >= 0 && (l[pivot_row[v]] >> f & 1)) vec |= 1ull << v;
    kernel_basis.push_back(vec);
  }
  return true;
}

}  // namespace biapn
