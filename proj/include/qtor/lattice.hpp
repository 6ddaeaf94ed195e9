#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtor/int_linalg.hpp"

namespace qtor {

// Exponent vector of a torus monomial; index 0 is the distinguished variable.
using Degree = std::vector<Int>;

inline Degree degree_add(const Degree& a, const Degree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("degree_add: length mismatch");
  Degree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Degree degree_sub(const Degree& a, const Degree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("degree_sub: length mismatch");
  Degree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Degree degree_neg(const Degree& a) {
  Degree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

inline Degree degree_scale(Int k, const Degree& a) {
  Degree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return out;
}

inline Degree unit_degree(int dim, int i) {
  Degree out(dim, 0);
  out.at(i) = 1;
  return out;
}

inline bool is_zero_degree(const Degree& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

// The matrix of commutation exponents: variable i commutes past variable j up
// to the root of unity with exponent K[i][j], where all roots share order m.
// Entries are kept reduced into [0, m).
struct SkewExponentMatrix {
  long m = 1;
  IntMat k;

  SkewExponentMatrix() = default;

  SkewExponentMatrix(long order, IntMat kk) : m(order), k(std::move(kk)) {
    if (m < 1) throw std::invalid_argument("SkewExponentMatrix: order must be positive");
    size_t n = k.size();
    for (auto& row : k) {
      if (row.size() != n) throw std::invalid_argument("SkewExponentMatrix: matrix must be square");
      for (auto& x : row) x = ((x % m) + m) % m;
    }
    for (size_t i = 0; i < n; ++i) {
      if (k[i][i] != 0)
        throw std::invalid_argument("SkewExponentMatrix: diagonal exponent must vanish mod m");
      for (size_t j = 0; j < n; ++j)
        if ((k[i][j] + k[j][i]) % m != 0)
          throw std::invalid_argument("SkewExponentMatrix: exponents must be antisymmetric mod m");
    }
  }

  int dim() const { return static_cast<int>(k.size()); }
  Int exponent(int i, int j) const { return k.at(i).at(j); }

  friend bool operator==(const SkewExponentMatrix& a, const SkewExponentMatrix& b) {
    return a.m == b.m && a.k == b.k;
  }
};

// Full-rank sublattice of Z^dim given by a canonical column-echelon basis.
struct RadicalLattice {
  IntMat basis;      // rows are basis vectors, Hermite-canonical
  Int index = 1;     // [Z^dim : lattice]
  int dimension = 0;

  bool contains(Degree v) const {
    if (static_cast<int>(v.size()) != dimension)
      throw std::invalid_argument("RadicalLattice: dimension mismatch");
    // Echelon structure: basis vector r has its first nonzero coordinate at
    // p_r with p_0 < p_1 < ..., and later vectors vanish at earlier pivots,
    // so the combination coefficients are forced one at a time.
    for (const auto& b : basis) {
      int p = pivot_column(b);
      if (v[p] % b[p] != 0) return false;
      Int c = v[p] / b[p];
      if (c != 0)
        for (int j = 0; j < dimension; ++j) v[j] -= c * b[j];
    }
    return is_zero_degree(v);
  }

 private:
  static int pivot_column(const std::vector<Int>& row) {
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) return static_cast<int>(j);
    throw std::logic_error("RadicalLattice: zero basis vector");
  }
};

// Basis of {a : K a = 0 mod m}, from the Smith form of K: with U K V = S the
// condition becomes s_i (V^-1 a)_i = 0 mod m, so the columns of V scaled by
// m / gcd(s_i, m) give a basis. Hermite-canonicalized for determinism.
inline RadicalLattice radical_basis(const SkewExponentMatrix& q) {
  int n = q.dim();
  SmithForm sf = smith_normal_form(q.k);
  IntMat gens;
  Int index = 1;
  for (int i = 0; i < n; ++i) {
    Int mult = q.m / gcd_ll(sf.s[i][i] % q.m, q.m);
    index *= mult;
    std::vector<Int> v(n);
    for (int r = 0; r < n; ++r) v[r] = mult * sf.v[r][i];
    gens.push_back(std::move(v));
  }
  RadicalLattice out;
  out.basis = hermite_basis(gens);
  out.index = index;
  out.dimension = n;
  if (static_cast<int>(out.basis.size()) != n)
    throw std::logic_error("radical_basis: lattice is not full rank");
  return out;
}

inline bool is_in_radical(const Degree& a, const RadicalLattice& lat) { return lat.contains(a); }

// A unimodular change of exponent basis together with its inverse-transpose,
// which transforms the dual coefficients of degree derivations.
struct LatticeAutomorphism {
  IntMat a;
  IntMat b;  // (a^T)^{-1}

  explicit LatticeAutomorphism(IntMat mat) : a(std::move(mat)) {
    if (!is_unimodular(a)) throw std::invalid_argument("LatticeAutomorphism: determinant must be +-1");
    b = mat_transpose(inverse_unimodular(a));
  }

  static LatticeAutomorphism identity(int dim) { return LatticeAutomorphism(identity_matrix(dim)); }

  Degree apply(const Degree& v) const { return mat_apply(a, v); }
  Degree apply_dual(const Degree& v) const { return mat_apply(b, v); }
  int dim() const { return static_cast<int>(a.size()); }
};

// New exponent matrix after the change of variables t_i -> prod_k t_k^{a_ki}:
// K' = A^T K A mod m.
inline SkewExponentMatrix apply_automorphism(const LatticeAutomorphism& aut, const SkewExponentMatrix& q) {
  if (aut.dim() != q.dim()) throw std::invalid_argument("apply_automorphism: dimension mismatch");
  return SkewExponentMatrix(q.m, mat_mul(mat_mul(mat_transpose(aut.a), q.k), aut.a));
}

// Parsed block data of a matrix in simple form: consecutive variable pairs
// (2i, 2i+1) (0-based) carry K[2i+1][2i] = c_i of multiplicative order
// k_i = m / gcd(c_i, m) with k_{i+1} | k_i; all other entries vanish mod m.
struct SimpleFormBlocks {
  int z = 0;
  std::vector<long> orders;   // k_1 >= k_2 >= ..., each dividing the previous
  std::vector<Int> entries;   // c_i with q_i = zeta_m^{c_i}
};

inline std::optional<SimpleFormBlocks> parse_simple_form(const SkewExponentMatrix& q) {
  int n = q.dim();
  SimpleFormBlocks out;
  int p = 0;
  while (p + 1 < n && q.exponent(p + 1, p) != 0) {
    Int c = q.exponent(p + 1, p);
    long order = q.m / gcd_ll(c, q.m);
    if (!out.orders.empty() && out.orders.back() % order != 0) return std::nullopt;
    out.orders.push_back(order);
    out.entries.push_back(c);
    ++out.z;
    p += 2;
  }
  // Everything outside the block pattern must vanish.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool in_block = false;
      for (int blk = 0; blk < out.z; ++blk) {
        int lo = 2 * blk, hi = 2 * blk + 1;
        if ((i == lo && j == hi) || (i == hi && j == lo)) in_block = true;
      }
      if (!in_block && q.exponent(i, j) != 0) return std::nullopt;
    }
  return out;
}

inline bool is_simple_form(const SkewExponentMatrix& q) { return parse_simple_form(q).has_value(); }

namespace detail {

// Congruence transformation K <- E^T K E with E = I + x e_{src,dst}
// (column dst += x * column src, same on rows), accumulated into A.
inline void congruence_add(IntMat& k, IntMat& a, int src, int dst, Int x) {
  int n = static_cast<int>(k.size());
  for (int r = 0; r < n; ++r) k[r][dst] += x * k[r][src];
  for (int c = 0; c < n; ++c) k[dst][c] += x * k[src][c];
  for (int r = 0; r < n; ++r) a[r][dst] += x * a[r][src];
}

inline void congruence_swap(IntMat& k, IntMat& a, int i, int j) {
  if (i == j) return;
  int n = static_cast<int>(k.size());
  for (int r = 0; r < n; ++r) std::swap(k[r][i], k[r][j]);
  for (int c = 0; c < n; ++c) std::swap(k[i][c], k[j][c]);
  for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
}

inline Int mod_m(Int x, long m) { return ((x % m) + m) % m; }

// Smallest x in [0, m) with gcd(c + x*d, m) = gcd(c, d, m); exists by the
// stabilization lemma for Z/m, and m is small enough to scan.
inline Int stabilizer_multiple(Int c, Int d, long m) {
  Int target = gcd_ll(gcd_ll(c, d), m);
  for (Int x = 0; x < m; ++x)
    if (gcd_ll(mod_m(c + x * d, m), m) == target) return x;
  throw std::logic_error("stabilizer_multiple: no stabilizer found");
}

}  // namespace detail

// Congruence reduction of the commutation-exponent matrix to block normal
// form over Z/m: picks the entry of largest multiplicative order as the next
// block (so the order chain k_{i+1} | k_i holds), merges any entry whose
// order does not divide the pivot's into the pivot, and clears the rest of
// the pivot rows/columns. Returns (q', A) with apply_automorphism(A, q) = q'.
inline std::pair<SkewExponentMatrix, LatticeAutomorphism> simple_form(const SkewExponentMatrix& q) {
  int n = q.dim();
  long m = q.m;
  if (auto parsed = parse_simple_form(q))
    return {q, LatticeAutomorphism::identity(n)};

  IntMat k = q.k;
  IntMat acc = identity_matrix(n);
  auto val = [&](int i, int j) { return detail::mod_m(k[i][j], m); };

  int p = 0;
  while (p + 1 < n) {
    // Pivot: nonzero entry below the diagonal with minimal gcd with m
    // (i.e. maximal order); ties to the lowest indices.
    int bi = -1, bj = -1;
    Int bg = m + 1;
    for (int j = p; j < n; ++j)
      for (int i = j + 1; i < n; ++i) {
        Int v = val(i, j);
        if (v == 0) continue;
        Int g = gcd_ll(v, m);
        if (g < bg) { bg = g; bi = i; bj = j; }
      }
    if (bi < 0) break;  // everything remaining commutes

    detail::congruence_swap(k, acc, bj, p);
    if (bi == p) bi = bj;
    detail::congruence_swap(k, acc, bi, p + 1);

    for (int guard = 0; ; ++guard) {
      if (guard > 64 * n * n) throw std::logic_error("simple_form: reduction did not terminate");
      Int c = val(p + 1, p);
      Int g = gcd_ll(c, m);

      // Merge any blocking entry in the pivot column/row into the pivot.
      int merged = 0;
      for (int r = p + 2; r < n && !merged; ++r)
        if (val(r, p) % g != 0) {
          detail::congruence_add(k, acc, r, p + 1, detail::stabilizer_multiple(c, val(r, p), m));
          merged = 1;
        }
      for (int s = p + 2; s < n && !merged; ++s)
        if (val(p + 1, s) % g != 0) {
          detail::congruence_add(k, acc, s, p, detail::stabilizer_multiple(c, val(p + 1, s), m));
          merged = 1;
        }
      if (merged) continue;

      // Clear the pivot column, then the pivot row.
      for (int r = p + 2; r < n; ++r) {
        Int v = val(r, p);
        if (v == 0) continue;
        for (Int x = 0; x < m; ++x)
          if (detail::mod_m(v + x * c, m) == 0) {
            detail::congruence_add(k, acc, p + 1, r, x);
            break;
          }
      }
      for (int s = p + 2; s < n; ++s) {
        Int v = val(s, p + 1);
        if (v == 0) continue;
        for (Int x = 0; x < m; ++x)
          if (detail::mod_m(v - x * c, m) == 0) {
            detail::congruence_add(k, acc, p, s, x);
            break;
          }
      }
      bool cleared = true;
      for (int r = p + 2; r < n && cleared; ++r)
        if (val(r, p) != 0 || val(r, p + 1) != 0) cleared = false;
      if (!cleared) continue;

      // An inner entry of order not dividing the pivot's must be pulled in.
      int pulled = 0;
      for (int s = p + 2; s < n && !pulled; ++s)
        for (int r = s + 1; r < n && !pulled; ++r)
          if (val(r, s) % g != 0) {
            detail::congruence_add(k, acc, r, p, 1);
            pulled = 1;
          }
      if (!pulled) break;
    }

    if (detail::mod_m(k[p + 1][p], m) > m - detail::mod_m(k[p + 1][p], m))
      detail::congruence_swap(k, acc, p, p + 1);
    p += 2;
  }

  LatticeAutomorphism aut(acc);
  SkewExponentMatrix out = apply_automorphism(aut, q);
  if (!is_simple_form(out)) throw std::logic_error("simple_form: result is not in block form");
  return {out, aut};
}

// Canonical basis of the radical of a simple-form matrix: k_i e_{2i-2},
// k_i e_{2i-1} for the paired variables and plain e_l for the central ones.
inline std::vector<Degree> xi_basis(const SkewExponentMatrix& q) {
  auto blocks = parse_simple_form(q);
  if (!blocks) throw std::invalid_argument("xi_basis: matrix is not in simple form");
  int n = q.dim();
  std::vector<Degree> out;
  for (int l = 0; l < n; ++l) {
    int blk = l / 2;
    Int scale = (blk < blocks->z) ? blocks->orders[blk] : 1;
    out.push_back(degree_scale(scale, unit_degree(n, l)));
  }
  return out;
}

}  // namespace qtor
