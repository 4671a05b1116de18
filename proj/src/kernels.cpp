#include "khom/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace khom::kernels {

namespace {

// One product step: next = prev * A, one row per iteration.
void multiply_rows(const IntMatrix& prev, const IntMatrix& a, IntMatrix& next, bool parallel) {
  const auto n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < a.rows(); ++k) {
      const auto& pik = prev(static_cast<std::size_t>(i), k);
      if (sgn(pik) == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j)
        next(static_cast<std::size_t>(i), j) += pik * a(k, j);
    }
  }
}

IntMatrix path_counts(const DirectedGraph& g, int m, bool parallel) {
  if (m < 0) throw GraphError("path_count_matrix: negative path length");
  const IntMatrix a = adjacency(g);
  IntMatrix acc = IntMatrix::identity(g.vertex_count());
  for (int step = 0; step < m; ++step) {
    IntMatrix next(a.rows(), a.cols());
    multiply_rows(acc, a, next, parallel);
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

std::vector<BasisPoint> shell_defects(const BasisOperator& t, const SignOperator& f,
                                      const BasisSpace& space, const DefectCertificate& cert) {
  std::vector<BasisPoint> found;
  for (const auto& w : sign_shell(space, cert.radius, cert.guard_width)) {
    const auto n = static_cast<long>(w.size());
    std::vector<char> hit(w.size(), 0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
      hit[static_cast<std::size_t>(i)] = is_sign_defect(t, f, w.at(static_cast<std::size_t>(i)));
    for (std::size_t i = 0; i < w.size(); ++i)
      if (hit[i]) found.push_back(w.at(i));
  }
  return found;
}

std::int64_t window_defect_count(const BasisOperator& t, const SignOperator& f, const Window& w) {
  const auto n = static_cast<long>(w.size());
  std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (long i = 0; i < n; ++i)
    if (is_sign_defect(t, f, w.at(static_cast<std::size_t>(i)))) ++count;
  return count;
}

IntMatrix path_count_matrix(const DirectedGraph& g, int m) { return path_counts(g, m, true); }

namespace serial {

std::vector<BasisPoint> shell_defects(const BasisOperator& t, const SignOperator& f,
                                      const BasisSpace& space, const DefectCertificate& cert) {
  std::vector<BasisPoint> found;
  for (const auto& w : sign_shell(space, cert.radius, cert.guard_width))
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto b = w.at(i);
      if (is_sign_defect(t, f, b)) found.push_back(std::move(b));
    }
  return found;
}

std::int64_t window_defect_count(const BasisOperator& t, const SignOperator& f, const Window& w) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (is_sign_defect(t, f, w.at(i))) ++count;
  return count;
}

IntMatrix path_count_matrix(const DirectedGraph& g, int m) { return path_counts(g, m, false); }

}  // namespace serial

}  // namespace khom::kernels
