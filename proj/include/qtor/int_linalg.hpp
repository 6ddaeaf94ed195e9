#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtor {

using Int = long long;
using IntMat = std::vector<std::vector<Int>>;

inline IntMat identity_matrix(int n) {
  IntMat id(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

inline int row_count(const IntMat& a) { return static_cast<int>(a.size()); }
inline int col_count(const IntMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  int r = row_count(a), k = col_count(a), c = col_count(b);
  if (k != row_count(b)) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat out(r, std::vector<Int>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (int l = 0; l < c; ++l) out[i][l] += a[i][j] * b[j][l];
  return out;
}

inline IntMat mat_transpose(const IntMat& a) {
  IntMat out(col_count(a), std::vector<Int>(row_count(a), 0));
  for (int i = 0; i < row_count(a); ++i)
    for (int j = 0; j < col_count(a); ++j) out[j][i] = a[i][j];
  return out;
}

inline std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& v) {
  if (static_cast<int>(v.size()) != col_count(a)) throw std::invalid_argument("mat_apply: shape mismatch");
  std::vector<Int> out(row_count(a), 0);
  for (int i = 0; i < row_count(a); ++i)
    for (int j = 0; j < col_count(a); ++j) out[i] += a[i][j] * v[j];
  return out;
}

// g = gcd(a,b) >= 0 with g = x*a + y*b.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return std::llabs(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline Int gcd_ll(Int a, Int b) {
  Int x, y;
  return ext_gcd(a, b, x, y);
}

// U*A*V = S with U,V unimodular and S diagonal, nonnegative, s_i | s_{i+1}.
// Built by alternating row/column Euclid steps (smallest |pivot| first).
struct SmithForm {
  IntMat u, s, v;
  int usign = 1, vsign = 1;  // det U, det V
};

inline SmithForm smith_normal_form(IntMat a) {
  int r = row_count(a), c = col_count(a);
  SmithForm f;
  f.s = std::move(a);
  f.u = identity_matrix(r);
  f.v = identity_matrix(c);
  IntMat& s = f.s;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    std::swap(s[i], s[j]);
    std::swap(f.u[i], f.u[j]);
    f.usign = -f.usign;
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(s[k][i], s[k][j]);
    for (int k = 0; k < c; ++k) std::swap(f.v[k][i], f.v[k][j]);
    f.vsign = -f.vsign;
  };
  auto add_row = [&](int dst, int src, Int q) {  // row_dst += q*row_src
    for (int k = 0; k < c; ++k) s[dst][k] += q * s[src][k];
    for (int k = 0; k < r; ++k) f.u[dst][k] += q * f.u[src][k];
  };
  auto add_col = [&](int dst, int src, Int q) {  // col_dst += q*col_src
    for (int k = 0; k < r; ++k) s[k][dst] += q * s[k][src];
    for (int k = 0; k < c; ++k) f.v[k][dst] += q * f.v[k][src];
  };
  auto negate_row = [&](int i) {
    for (int k = 0; k < c; ++k) s[i][k] = -s[i][k];
    for (int k = 0; k < r; ++k) f.u[i][k] = -f.u[i][k];
    f.usign = -f.usign;
  };

  int t = 0;
  int lim = std::min(r, c);
  while (t < lim) {
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (s[i][j] != 0 && (pi < 0 || std::llabs(s[i][j]) < std::llabs(s[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < r; ++i) {
        if (s[i][t] == 0) continue;
        Int q = s[i][t] / s[t][t];
        add_row(i, t, -q);
        if (s[i][t] != 0) {  // remainder becomes the smaller pivot
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (s[t][j] == 0) continue;
        Int q = s[t][j] / s[t][t];
        add_col(j, t, -q);
        if (s[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
    }
    if (s[t][t] < 0) negate_row(t);

    // Pivot must divide the remaining block; fold a violating row in and redo.
    bool redo = false;
    for (int i = t + 1; i < r && !redo; ++i)
      for (int j = t + 1; j < c && !redo; ++j)
        if (s[i][j] % s[t][t] != 0) {
          add_row(t, i, 1);
          redo = true;
        }
    if (!redo) ++t;
  }
  return f;
}

// Basis of {x : A x = 0}: columns of V whose Smith diagonal entry is zero.
inline std::vector<std::vector<Int>> kernel_basis(const IntMat& a) {
  SmithForm f = smith_normal_form(a);
  int r = row_count(a), c = col_count(a);
  std::vector<std::vector<Int>> basis;
  for (int j = 0; j < c; ++j) {
    if (j < r && j < c && f.s[j][j] != 0) continue;
    std::vector<Int> col(c);
    for (int k = 0; k < c; ++k) col[k] = f.v[k][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

inline Int mat_det(const IntMat& a) {
  if (row_count(a) != col_count(a)) throw std::invalid_argument("mat_det: not square");
  SmithForm f = smith_normal_form(a);
  Int d = 1;
  for (int i = 0; i < row_count(a); ++i) d *= f.s[i][i];
  return d * f.usign * f.vsign;
}

inline bool is_unimodular(const IntMat& a) {
  if (row_count(a) != col_count(a)) return false;
  Int d = mat_det(a);
  return d == 1 || d == -1;
}

// Inverse of a matrix with det = ±1; from U A V = S = diag(1..1): A^{-1} = V S U = V U.
inline IntMat inverse_unimodular(const IntMat& a) {
  SmithForm f = smith_normal_form(a);
  int n = row_count(a);
  if (col_count(a) != n) throw std::invalid_argument("inverse_unimodular: not square");
  for (int i = 0; i < n; ++i)
    if (f.s[i][i] != 1) throw std::invalid_argument("inverse_unimodular: determinant not ±1");
  return mat_mul(f.v, f.u);
}

// Canonical column Hermite form of the lattice spanned by `gens`:
// pivots descend left to right, positive, entries right of a pivot zero,
// entries left of it reduced into [0, pivot). Zero columns dropped.
inline std::vector<std::vector<Int>> hermite_basis(const std::vector<std::vector<Int>>& gens) {
  if (gens.empty()) return {};
  int n = static_cast<int>(gens[0].size());
  int c = static_cast<int>(gens.size());
  IntMat h(n, std::vector<Int>(c, 0));  // generators as columns
  for (int j = 0; j < c; ++j) {
    if (static_cast<int>(gens[j].size()) != n) throw std::invalid_argument("hermite_basis: ragged input");
    for (int i = 0; i < n; ++i) h[i][j] = gens[j][i];
  }
  int pc = 0;  // next pivot column
  for (int row = 0; row < n && pc < c; ++row) {
    // Fold columns pc..c-1 so only column pc has a nonzero in this row.
    for (int j = pc + 1; j < c; ++j) {
      while (h[row][j] != 0) {
        if (h[row][pc] == 0) {
          for (int k = 0; k < n; ++k) std::swap(h[k][pc], h[k][j]);
          continue;
        }
        Int q = h[row][j] / h[row][pc];
        for (int k = 0; k < n; ++k) h[k][j] -= q * h[k][pc];
        if (h[row][j] != 0)
          for (int k = 0; k < n; ++k) std::swap(h[k][pc], h[k][j]);
      }
    }
    if (h[row][pc] == 0) continue;  // no pivot in this row
    if (h[row][pc] < 0)
      for (int k = 0; k < n; ++k) h[k][pc] = -h[k][pc];
    for (int j = 0; j < pc; ++j) {  // reduce earlier columns by this pivot
      Int q = h[row][j] / h[row][pc];
      if (h[row][j] - q * h[row][pc] < 0) q -= 1;
      if (q != 0)
        for (int k = 0; k < n; ++k) h[k][j] -= q * h[k][pc];
    }
    ++pc;
  }
  std::vector<std::vector<Int>> out;
  for (int j = 0; j < pc; ++j) {
    std::vector<Int> col(n);
    for (int i = 0; i < n; ++i) col[i] = h[i][j];
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace qtor
