#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "hms/rational.hpp"

namespace hms {

// Smith normal form over Z for a dense integer matrix; returns the diagonal
// entries d1 | d2 | ... (nonnegative), padded with zeros up to min(rows, cols)
inline std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<Int> diag;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // find a nonzero pivot in the remaining block
    size_t pr = r0, pc = c0;
    bool found = false;
    for (size_t i = r0; i < rows && !found; ++i)
      for (size_t j = c0; j < cols && !found; ++j)
        if (m[i][j] != 0) { pr = i; pc = j; found = true; }
    if (!found) break;
    std::swap(m[r0], m[pr]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
    // clear the pivot row and column by gcd reduction
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = r0 + 1; i < rows; ++i) {
        while (m[i][c0] != 0) {
          Int q = m[i][c0] / m[r0][c0];
          for (size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
          if (m[i][c0] != 0) {
            std::swap(m[i], m[r0]);
            dirty = true;
          }
        }
      }
      for (size_t j = c0 + 1; j < cols; ++j) {
        while (m[r0][j] != 0) {
          Int q = m[r0][j] / m[r0][c0];
          for (size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
          if (m[r0][j] != 0) {
            for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][c0]);
            dirty = true;
          }
        }
      }
    }
    diag.push_back(std::llabs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  while (diag.size() < std::min(rows, cols)) diag.push_back(0);
  // enforce divisibility d1 | d2 | ...
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[i] == 0 && diag[j] != 0) std::swap(diag[i], diag[j]);
      if (diag[i] != 0 && diag[j] != 0) {
        Int g = gcd_ll(diag[i], diag[j]);
        Int l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
    }
  return diag;
}

// cokernel of the matrix acting on column vectors: free rank + torsion factors
struct AbelianGroup {
  Int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility order

  Int torsion_product() const {
    Int p = 1;
    for (Int t : torsion) p *= t;
    return p;
  }
};

inline AbelianGroup cokernel(const std::vector<std::vector<Int>>& m) {
  AbelianGroup g;
  if (m.empty()) return g;
  auto d = smith_diagonal(m);
  size_t rows = m.size();
  size_t rank = 0;
  for (Int v : d)
    if (v != 0) ++rank;
  g.free_rank = static_cast<Int>(rows - rank);
  for (Int v : d)
    if (v > 1) g.torsion.push_back(v);
  return g;
}

}  // namespace hms
