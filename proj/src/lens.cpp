#include "khom/lens.hpp"

#include <algorithm>
#include <stdexcept>

namespace khom {

namespace {

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
}

void check_p(int p) {
  if (p < 1) throw std::invalid_argument("p must be at least 1");
}

std::size_t dim(int n) { return static_cast<std::size_t>(n); }

// Basis cell of rho(v_i) (1-based i) on N^{n-1} x Z.
Cell hl_vertex_cell(int n, int i) {
  Cell c{0, {}, std::nullopt};
  for (int j = 1; j < n; ++j) {
    if (i == n || j < i)
      c.coords.push_back(CoordSet::exactly(0));
    else if (j == i)
      c.coords.push_back(CoordSet::at_least(1));
    else
      c.coords.push_back(CoordSet::at_least(0));
  }
  c.coords.push_back(CoordSet::all());
  return c;
}

}  // namespace

DualOperator t_operator(int n) {
  check_n(n);
  IntMatrix t(dim(n), dim(n));
  for (std::size_t i = 0; i + 1 < dim(n); ++i) t(i, i + 1) = 1;
  return {n, std::move(t)};
}

DualOperator D_operator(int n) {
  const auto t = t_operator(n).matrix;
  IntMatrix d = IntMatrix::identity(dim(n));
  IntMatrix tk = IntMatrix::identity(dim(n));
  for (int k = 1; k < n; ++k) {
    tk = tk * t;
    d = d + tk;
  }
  return {n, std::move(d)};
}

IntMatrix lens_coboundary(int n, int p) {
  check_p(p);
  return power(D_operator(n).matrix, static_cast<unsigned>(p)) - IntMatrix::identity(dim(n));
}

IntMatrix one_minus_t_sum(int n, int p) {
  check_p(p);
  const IntMatrix base = IntMatrix::identity(dim(n)) - t_operator(n).matrix;
  IntMatrix acc(dim(n), dim(n));
  IntMatrix term = IntMatrix::identity(dim(n));
  for (int i = 0; i < p; ++i) {
    acc = acc + term;
    term = term * base;
  }
  return acc;
}

IntMatrix lens_restricted_block(int n, int p) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i + 1 < dim(n); ++i) {
    rows.push_back(i);
    cols.push_back(i + 1);
  }
  return lens_coboundary(n, p).submatrix(rows, cols);
}

std::vector<std::string> dual_basis_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("eta" + std::to_string(i));
  return names;
}

LensKHomology lens_k_homology(int n, int p) {
  const auto a = lens_coboundary(n, p);
  return {kernel(a, dual_basis_names(n)), cokernel(a, dual_basis_names(n))};
}

HLModule hl_module(int n) {
  check_n(n);
  HLModule hl{n, sphere_graph(n), {}};
  auto& m = hl.module;
  m.space.tags = {"H"};
  m.space.nonnegative.assign(dim(n), true);
  m.space.nonnegative.back() = false;
  m.space.sign_coord = dim(n) - 1;
  m.F = SignOperator{dim(n) - 1, {}};

  const DefectCertificate cert{1, 8};
  for (int i = 1; i <= n; ++i)
    m.rho.vertices.push_back(BasisOperator::projection({hl_vertex_cell(n, i)}, cert));
  for (const auto& e : hl.graph.edges()) {
    // e_lj = epsilon_l rho(v_j)
    std::vector<Affine> maps(dim(n));
    maps[e.source].offset = 1;
    CellMap piece{hl_vertex_cell(n, static_cast<int>(e.range) + 1), 0, std::move(maps)};
    m.rho.edges.push_back(BasisOperator::injection({std::move(piece)}, cert));
  }

  // The vertex projections must partition the basis; a wrong reading of the
  // vertex formula shows up here.
  const Window w = box_window(m.space, 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto b = w.at(k);
    const auto owners = std::count_if(m.rho.vertices.begin(), m.rho.vertices.end(),
                                      [&](const BasisOperator& q) { return q.in_domain(b); });
    if (owners != 1)
      throw std::logic_error("vertex projections do not partition the basis at " + b.to_string());
  }
  const auto ck = check_cuntz_krieger(m.rho, hl.graph, m.space, 2);
  if (!ck.passed()) throw std::logic_error("relations fail: " + ck.failures.front());
  return hl;
}

GradedModule hl_even_character(int n, int p) {
  check_n(n);
  check_p(p);
  const auto g = lens_graph(n, p);
  const Cell point{0, {}, std::nullopt};
  GradedModule m;
  m.space = BasisSpace{{"pt"}, {}, 0};
  m.symmetry = GradedModule::Symmetry::Zero;
  m.certificate = DefectCertificate{0, 0};
  m.even.vertices.assign(g.vertex_count(), BasisOperator{});
  m.odd.vertices.assign(g.vertex_count(), BasisOperator{});
  m.even.vertices[0] = BasisOperator::projection({point});
  m.even.edges.assign(g.edge_count(), BasisOperator{});
  m.odd.edges.assign(g.edge_count(), BasisOperator{});
  const auto base = sphere_graph(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto path = g.edge_path(e);
    const bool loop11 = std::all_of(path.begin(), path.end(), [&](std::size_t b) {
      return base.edge(b).source == 0 && base.edge(b).range == 0;
    });
    if (loop11) m.even.edges[e] = BasisOperator::injection({CellMap{point, 0, {}}});
  }
  return m;
}

OddModule eigenspace_module(const HLModule& hl, int p, std::optional<int> m) {
  check_p(p);
  if (m && (*m < 0 || *m >= p)) throw std::invalid_argument("eigenspace index out of range");
  const auto g = path_power(hl.graph, p);
  const DefectCertificate cert{static_cast<Coord>(p) + 1, 8};
  const std::optional<SumCongruence> cut =
      m ? std::optional<SumCongruence>(SumCongruence{p, *m}) : std::nullopt;

  OddModule out;
  out.space = hl.module.space;
  out.F = hl.module.F;
  for (const auto& q : hl.module.rho.vertices) {
    auto r = cut ? q.restricted(*cut) : q;
    r.set_certificate(cert);
    out.rho.vertices.push_back(std::move(r));
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto path = g.edge_path(e);
    // rho(e_1 ... e_p) = rho(e_1) ... rho(e_p): the last edge acts first.
    BasisOperator t = hl.module.rho.edges.at(path.back());
    for (std::size_t k = path.size() - 1; k-- > 0;) t = hl.module.rho.edges.at(path[k]).after(t);
    if (cut) t = t.restricted(*cut);
    t.set_certificate(cert);
    out.rho.edges.push_back(std::move(t));
  }
  return out;
}

LensReport lens_k1_generators(int n, int p) {
  check_n(n);
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  LensReport report;
  report.n = n;
  report.p = p;
  report.groups = lens_k_homology(n, p);
  const auto& k1 = report.groups.K1;

  const auto hl = hl_module(n);
  const auto gp = path_power(hl.graph, p);
  std::vector<IntVector> classes;
  for (int m = 0; m < p; ++m) {
    LensGenerator gen;
    gen.m = m;
    const auto idx = index_k1(eigenspace_module(hl, p, m), gp);
    gen.index_vector = idx.vertices.values;
    for (std::size_t i = 0; i < dim(n); ++i)
      gen.path_formula.push_back(-count_paths(hl.graph, m, i, dim(n) - 1).get_si());
    if (gen.index_vector != gen.path_formula)
      throw std::logic_error("operator-model index of F_" + std::to_string(m) +
                             " disagrees with the path-count formula");
    IntVector x;
    for (auto v : gen.index_vector) x.emplace_back(static_cast<long>(v));
    gen.class_coordinates = k1.reduce(x);
    gen.order = k1.order(x);
    if (!classes.empty()) {
      IntVector diff = x;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= classes.front()[i];
      gen.order_minus_f0 = k1.order(diff);
    } else {
      gen.order_minus_f0 = mpz_class(1);
    }
    classes.push_back(std::move(x));
    report.generators.push_back(std::move(gen));
  }
  report.generation_verified = k1.generated_by(classes);

  const auto& k0 = report.groups.K0;
  const auto character = index_k0(hl_even_character(n, p), gp);
  IntVector eta1(dim(n));
  eta1[0] = 1;
  std::vector<std::int64_t> expected(dim(n), 0);
  expected[0] = 1;
  report.even_generator_verified = k0.free_rank() == 1 && k0.torsion().empty() &&
                                   k0.generated_by({eta1}) && character.values == expected;

  report.one_minus_t_determinant = determinant(one_minus_t_sum(n, p));
  report.restricted_block_determinant = determinant(lens_restricted_block(n, p));
  return report;
}

}  // namespace khom
