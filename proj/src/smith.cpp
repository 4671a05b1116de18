#include "khom/smith.hpp"

#include <algorithm>

namespace khom {

namespace {

struct Reducer {
  IntMatrix a, u, u_inv, v, v_inv;

  explicit Reducer(const IntMatrix& m)
      : a(m),
        u(IntMatrix::identity(m.rows())),
        u_inv(IntMatrix::identity(m.rows())),
        v(IntMatrix::identity(m.cols())),
        v_inv(IntMatrix::identity(m.cols())) {}

  // row[dst] += f * row[src]
  void row_add(std::size_t dst, std::size_t src, const mpz_class& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
    u_inv.add_col_multiple(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void col_add(std::size_t dst, std::size_t src, const mpz_class& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    v_inv.add_row_multiple(src, dst, -f);
  }
  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void row_negate(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }

  // Smallest nonzero |entry| in the active block, row-major tie-break.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    mpz_class best;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (sgn(a(i, j)) == 0) continue;
        mpz_class mag = abs(a(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // Clears row t and column t below/right of the pivot by division with
  // remainder. Returns false if a nonzero remainder survived.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    mpz_class q;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (sgn(a(i, t)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
      row_add(i, t, -q);
      if (sgn(a(i, t)) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (sgn(a(t, j)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
      col_add(j, t, -q);
      if (sgn(a(t, j)) != 0) clean = false;
    }
    return clean;
  }

  // First active entry not divisible by the pivot, as a row index.
  std::optional<std::size_t> indivisible_row(std::size_t t) const {
    for (std::size_t i = t + 1; i < a.rows(); ++i)
      for (std::size_t j = t + 1; j < a.cols(); ++j)
        if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) return i;
    return std::nullopt;
  }
};

}  // namespace

IntVector SmithDecomposition::diagonal() const {
  IntVector d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

SmithDecomposition smith(const IntMatrix& m) {
  Reducer r(m);
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!r.find_pivot(t, pi, pj)) break;
    for (;;) {
      r.row_swap(t, pi);
      r.col_swap(t, pj);
      if (!r.clear_cross(t)) {
        r.find_pivot(t, pi, pj);
        continue;
      }
      if (auto bad = r.indivisible_row(t)) {
        r.row_add(t, *bad, 1);
        r.find_pivot(t, pi, pj);
        continue;
      }
      break;
    }
    if (sgn(r.a(t, t)) < 0) r.row_negate(t);
  }
  return SmithDecomposition{std::move(r.u), std::move(r.u_inv), std::move(r.v),
                            std::move(r.v_inv), std::move(r.a), t};
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  auto snf = smith(a);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

std::size_t rank(const IntMatrix& a) { return smith(a).rank; }

}  // namespace khom
