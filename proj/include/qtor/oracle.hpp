#pragma once
// Independent brute-force verifiers: a literal tensor-quotient model of the
// first cyclic homology, exhaustive identity checks on the commutation
// scalars, and a generic homomorphism tester. These never call the production
// reduction paths they are used to validate.

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtor/quantum_torus.hpp"

namespace qtor {

namespace detail {

// Incremental Gaussian elimination over sparse rows keyed by column index.
class SparseEliminator {
 public:
  // Reduces a row against the recorded pivots; the residue has no pivot column leading it.
  std::map<int, Cyclotomic> reduce(std::map<int, Cyclotomic> row) const {
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) break;
      Cyclotomic c = lead->second;
      for (const auto& [col, pc] : it->second) {
        auto jt = row.find(col);
        if (jt == row.end()) {
          row.emplace(col, -(c * pc));
        } else {
          jt->second = jt->second - c * pc;
          if (jt->second.is_zero()) row.erase(jt);
        }
      }
    }
    return row;
  }

  // Returns true when the row was independent of the span so far.
  bool add_row(std::map<int, Cyclotomic> row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    Cyclotomic inv = row.begin()->second.inverse();
    for (auto& [col, c] : row) c = c * inv;
    int lead = row.begin()->first;
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  std::map<int, std::map<int, Cyclotomic>> pivots_;
};

inline bool in_box(const Degree& a, Int radius) {
  for (Int x : a)
    if (x > radius || x < -radius) return false;
  return true;
}

}  // namespace detail

// All degrees of the given dimension with entries in [-radius, radius].
inline std::vector<Degree> degree_box(int dim, Int radius) {
  std::vector<Degree> out;
  Degree a(dim, -radius);
  while (true) {
    out.push_back(a);
    int i = 0;
    while (i < dim && a[i] == radius) a[i++] = -radius;
    if (i == dim) break;
    ++a[i];
  }
  return out;
}

// Literal model of one degree component of the cyclic-homology space: formal
// tensors t^u (x) t^{m-u} with both factors inside a padded box, modulo rows
// instancing the two quotient generators, intersected with the kernel of the
// induced commutator map.
class HC1BruteForce {
 public:
  HC1BruteForce(const TorusContext& ctx, Int report_radius, Degree m)
      : ctx_(ctx), m_(std::move(m)) {
    const Int pad = report_radius + 2;
    const int d = ctx.dim();
    // Label set: first-factor degrees u with u and m-u inside the padded box.
    for (const Degree& u : degree_box(d, pad))
      if (detail::in_box(degree_sub(m_, u), pad)) {
        label_index_.emplace(u, static_cast<int>(labels_.size()));
        labels_.push_back(u);
      }

    // Swap generators x(x)y + y(x)x on monomials: e_u + e_{m-u}.
    for (const Degree& u : labels_) {
      std::map<int, Cyclotomic> row;
      add_entry(row, u, Cyclotomic::one(ctx.order()));
      add_entry(row, degree_sub(m_, u), Cyclotomic::one(ctx.order()));
      j_rows_.add_row(std::move(row));
    }

    // Cyclic generators xy(x)z + yz(x)x + zx(x)y with x = t^a over short degrees a,
    // y = t^{u-a}, z = t^{m-u}; kept when all three product labels exist.
    std::vector<Degree> small{Degree(d, 0)};
    for (int i = 0; i < d; ++i) {
      small.push_back(unit_degree(d, i));
      small.push_back(degree_neg(unit_degree(d, i)));
    }
    for (const Degree& u : labels_) {
      for (const Degree& a : small) {
        Degree b = degree_sub(u, a);
        Degree c = degree_sub(m_, u);
        Degree label2 = degree_sub(m_, a);          // degree of yz
        Degree label3 = degree_add(c, a);           // degree of zx
        if (!label_index_.count(label2) || !label_index_.count(label3)) continue;
        std::map<int, Cyclotomic> row;
        add_entry(row, u, sigma(ctx_, a, b));
        add_entry(row, label2, sigma(ctx_, b, c));
        add_entry(row, label3, sigma(ctx_, c, a));
        j_rows_.add_row(std::move(row));
      }
    }

    rank_with_commutator_ = j_rows_.rank();
    // The commutator row t^u (x) t^{m-u} -> (sigma(u, m-u) - sigma(m-u, u)) t^m.
    std::map<int, Cyclotomic> commutator_row;
    for (const Degree& u : labels_)
      add_entry(commutator_row, u, sigma(ctx_, u, degree_sub(m_, u)) - sigma(ctx_, degree_sub(m_, u), u));
    if (!j_rows_.reduce(commutator_row).empty()) ++rank_with_commutator_;
  }

  int dimension() const { return static_cast<int>(labels_.size()) - rank_with_commutator_; }
  long long label_count() const { return static_cast<long long>(labels_.size()); }
  int quotient_rank() const { return j_rows_.rank(); }

  // Membership of a formal combination sum coeff_u * (t^u (x) t^{m-u}) in the quotient span.
  bool in_j_span(const std::map<Degree, Cyclotomic>& v) const {
    std::map<int, Cyclotomic> row;
    for (const auto& [u, c] : v) {
      if (!label_index_.count(u)) throw std::invalid_argument("label outside the modelled box");
      add_entry(row, u, detail::to_context_order(ctx_, c));
    }
    return j_rows_.reduce(std::move(row)).empty();
  }

 private:
  void add_entry(std::map<int, Cyclotomic>& row, const Degree& u, const Cyclotomic& c) const {
    auto it = label_index_.find(u);
    if (it == label_index_.end()) throw std::logic_error("row touches a missing label");
    auto jt = row.find(it->second);
    if (jt == row.end()) {
      if (!c.is_zero()) row.emplace(it->second, c);
    } else {
      jt->second = jt->second + c;
      if (jt->second.is_zero()) row.erase(jt);
    }
  }

  TorusContext ctx_;
  Degree m_;
  std::vector<Degree> labels_;
  std::map<Degree, int> label_index_;
  detail::SparseEliminator j_rows_;
  int rank_with_commutator_ = 0;
};

// Graded dimensions of the brute-force model over the report window [-R, R]^dim.
inline std::map<Degree, int> hc1_bruteforce_dims(const TorusContext& ctx, Int radius) {
  std::map<Degree, int> dims;
  for (const Degree& m : degree_box(ctx.dim(), radius))
    dims.emplace(m, HC1BruteForce(ctx, radius, m).dimension());
  return dims;
}

struct IdentityReport {
  std::string identity;
  Int box = 0;
  long long tuples_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {
inline void record_violation(IdentityReport& rep, const std::vector<Degree>& tuple) {
  if (rep.violations.size() >= 100) return;  // keep reports bounded
  std::ostringstream os;
  for (size_t i = 0; i < tuple.size(); ++i) os << (i ? " " : "") << to_string(tuple[i]);
  rep.violations.push_back(os.str());
}
}  // namespace detail

// Exhaustively evaluates one of the named commutation-scalar identities on a
// degree box. Tags: sigma-right-additive, f-skew, f-left-additive,
// f-right-additive, f-multiple, commutation, associativity.
inline IdentityReport exhaustive_identity_check(const TorusContext& ctx, const std::string& tag,
                                                Int radius) {
  IdentityReport rep{tag, radius, 0, {}};
  const long m = ctx.order();
  std::vector<Degree> box = degree_box(ctx.dim(), radius);

  auto for_pairs = [&](const std::function<bool(const Degree&, const Degree&)>& check) {
    for (const Degree& a : box)
      for (const Degree& b : box) {
        ++rep.tuples_checked;
        if (!check(a, b)) detail::record_violation(rep, {a, b});
      }
  };
  auto for_triples = [&](const std::function<bool(const Degree&, const Degree&, const Degree&)>& check) {
    for (const Degree& a : box)
      for (const Degree& b : box)
        for (const Degree& c : box) {
          ++rep.tuples_checked;
          if (!check(a, b, c)) detail::record_violation(rep, {a, b, c});
        }
  };

  if (tag == "sigma-right-additive") {
    for_triples([&](const Degree& a, const Degree& b, const Degree& c) {
      return sigma_exponent(ctx, a, degree_add(b, c)) ==
             (sigma_exponent(ctx, a, b) + sigma_exponent(ctx, a, c)) % m;
    });
  } else if (tag == "f-skew") {
    for_pairs([&](const Degree& a, const Degree& b) {
      return (f_exponent(ctx, a, b) + f_exponent(ctx, b, a)) % m == 0;
    });
  } else if (tag == "f-left-additive") {
    for_triples([&](const Degree& a, const Degree& b, const Degree& c) {
      return f_exponent(ctx, degree_add(a, b), c) ==
             (f_exponent(ctx, a, c) + f_exponent(ctx, b, c)) % m;
    });
  } else if (tag == "f-right-additive") {
    for_triples([&](const Degree& a, const Degree& b, const Degree& c) {
      return f_exponent(ctx, a, degree_add(b, c)) ==
             (f_exponent(ctx, a, b) + f_exponent(ctx, a, c)) % m;
    });
  } else if (tag == "f-multiple") {
    for (const Degree& a : box)
      for (Int k = -radius; k <= radius; ++k) {
        ++rep.tuples_checked;
        if (f_exponent(ctx, degree_scale(k, a), a) != 0) detail::record_violation(rep, {a});
      }
  } else if (tag == "commutation") {
    for_pairs([&](const Degree& a, const Degree& b) {
      TorusElement lhs = multiply(ctx, torus_monomial(ctx, a), torus_monomial(ctx, b));
      TorusElement rhs = scalar_multiply(
          ctx, f_form(ctx, a, b), multiply(ctx, torus_monomial(ctx, b), torus_monomial(ctx, a)));
      return lhs == rhs;
    });
  } else if (tag == "associativity") {
    for_triples([&](const Degree& a, const Degree& b, const Degree& c) {
      TorusElement ta = torus_monomial(ctx, a), tb = torus_monomial(ctx, b),
                   tc = torus_monomial(ctx, c);
      return multiply(ctx, multiply(ctx, ta, tb), tc) == multiply(ctx, ta, multiply(ctx, tb, tc));
    });
  } else {
    throw std::invalid_argument("unknown identity tag: " + tag);
  }
  return rep;
}

inline const std::vector<std::string>& identity_tags() {
  static const std::vector<std::string> tags{
      "sigma-right-additive", "f-skew",      "f-left-additive", "f-right-additive",
      "f-multiple",           "commutation", "associativity"};
  return tags;
}

struct HomReport {
  std::string name;
  long long pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks map(op(x, y)) == op'(map(x), map(y)) over all pairs from the sample.
template <typename Dom, typename Img>
HomReport hom_check(const std::string& name, const std::vector<Dom>& sample,
                    const std::function<Img(const Dom&)>& map,
                    const std::function<Dom(const Dom&, const Dom&)>& dom_op,
                    const std::function<Img(const Img&, const Img&)>& img_op,
                    const std::function<bool(const Img&, const Img&)>& img_eq,
                    const std::function<std::string(size_t, size_t)>& describe = nullptr) {
  HomReport rep{name, 0, {}};
  for (size_t i = 0; i < sample.size(); ++i)
    for (size_t j = 0; j < sample.size(); ++j) {
      ++rep.pairs_checked;
      if (!img_eq(map(dom_op(sample[i], sample[j])), img_op(map(sample[i]), map(sample[j])))) {
        if (rep.violations.size() < 100)
          rep.violations.push_back(describe ? describe(i, j)
                                            : "pair (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ")");
      }
    }
  return rep;
}

}  // namespace qtor
