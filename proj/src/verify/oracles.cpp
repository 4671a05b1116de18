#include <cstdlib>
#include <map>
#include <utility>

#include "khom/verify.hpp"

namespace khom::verify {

namespace {

void count_from(const DirectedGraph& g, std::size_t at, int remaining, std::size_t dst,
                mpz_class& total) {
  if (remaining == 0) {
    if (at == dst) ++total;
    return;
  }
  for (const auto& e : g.edges())
    if (e.source == at) count_from(g, e.range, remaining - 1, dst, total);
}

template <class Key>
std::size_t column_rank(const std::vector<std::map<Key, long>>& columns) {
  std::map<Key, std::size_t> row_of;
  for (const auto& c : columns)
    for (const auto& kv : c) row_of.emplace(kv.first, 0);
  std::size_t r = 0;
  for (auto& kv : row_of) kv.second = r++;
  IntMatrix m(row_of.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [key, v] : columns[j]) m(row_of.at(key), j) = v;
  return rational_rank(m);
}

bool nonneg_sign(const SignOperator& f, const BasisPoint& b) { return b.coords.at(f.coord) >= 0; }

}  // namespace

mpz_class brute_force_paths(const DirectedGraph& g, int m, std::size_t src, std::size_t dst) {
  mpz_class total = 0;
  count_from(g, src, m, dst, total);
  return total;
}

std::size_t rational_rank(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  std::size_t r = 0;
  for (std::size_t j = 0; j < a.cols() && r < a.rows(); ++j) {
    std::size_t piv = r;
    while (piv < a.rows() && m[piv][j] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (m[i][j] == 0) continue;
      const mpq_class f = m[i][j] / m[r][j];
      for (std::size_t k = j; k < a.cols(); ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

std::int64_t window_commutator_rank(const SignOperator& f, const BasisOperator& t,
                                    const BasisSpace& space, Coord radius) {
  const Window w = box_window(space, radius);
  std::vector<std::map<BasisPoint, long>> columns;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto b = w.at(k);
    std::map<BasisPoint, long> col;
    if (auto y = t.apply(b)) {
      auto [fy, s] = f.apply(*y);
      col[fy] += s;
    }
    auto [fb, s] = f.apply(b);
    if (auto z = t.apply(fb)) col[*z] -= s;
    std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
    if (!col.empty()) columns.push_back(std::move(col));
  }
  return static_cast<std::int64_t>(column_rank(columns));
}

std::int64_t window_graded_commutator_rank(const BasisOperator& even, const BasisOperator& odd,
                                           const BasisSpace& space, Coord radius) {
  using Key = std::pair<int, BasisPoint>;
  const Window w = box_window(space, radius);
  const BasisOperator* rho[2] = {&even, &odd};
  std::vector<std::map<Key, long>> columns;
  for (int copy = 0; copy < 2; ++copy)
    for (std::size_t k = 0; k < w.size(); ++k) {
      const auto b = w.at(k);
      std::map<Key, long> col;
      // F rho (copy, b) - rho F (copy, b), F exchanging the copies.
      if (auto y = rho[copy]->apply(b)) col[{1 - copy, *y}] += 1;
      if (auto z = rho[1 - copy]->apply(b)) col[{1 - copy, *z}] -= 1;
      std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
      if (!col.empty()) columns.push_back(std::move(col));
    }
  return static_cast<std::int64_t>(column_rank(columns));
}

std::optional<std::int64_t> window_compressed_index(const SignOperator& f, const BasisOperator& t,
                                                    const BasisSpace& space, Coord r) {
  std::optional<std::int64_t> value;
  for (Coord k = 2; k <= 4; ++k) {
    const Window w = box_window(space, k * std::max<Coord>(r, 1));
    std::int64_t kernel = 0, cokernel = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto b = w.at(i);
      const auto y = t.apply(b);
      if (!y) continue;
      const bool from = nonneg_sign(f, b), to = nonneg_sign(f, *y);
      if (from && !to) ++kernel;
      if (!from && to) ++cokernel;
    }
    const auto index = kernel - cokernel;
    if (value && *value != index) return std::nullopt;
    value = index;
  }
  return value;
}

std::optional<std::int64_t> window_relative_index(const BasisOperator& q0, const BasisOperator& q1,
                                                  const BasisSpace& space, Coord r) {
  std::optional<std::int64_t> value;
  for (Coord k = 2; k <= 4; ++k) {
    const Window w = box_window(space, k * std::max<Coord>(r, 1));
    std::int64_t index = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto b = w.at(i);
      index += (q0.in_domain(b) ? 1 : 0) - (q1.in_domain(b) ? 1 : 0);
    }
    if (value && *value != index) return std::nullopt;
    value = index;
  }
  return value;
}

}  // namespace khom::verify
