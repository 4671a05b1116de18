#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khom/abelian_group.hpp"
#include "khom/fredholm.hpp"
#include "khom/graph.hpp"
#include "khom/int_matrix.hpp"

namespace khom {

/// Operator on Z V^dual for G_n, in the basis eta_1, ..., eta_n.
struct DualOperator {
  int n = 0;
  IntMatrix matrix;
};

/// (t eta)(v_i) = eta(v_{i+1}), (t eta)(v_n) = 0.
DualOperator t_operator(int n);
/// D = 1 + t + ... + t^{n-1}.
DualOperator D_operator(int n);
/// D^p - 1, the coboundary of A^*(G_n^p).
IntMatrix lens_coboundary(int n, int p);

/// sum_{i<p} (1 - t)^i, whose determinant is p^n.
IntMatrix one_minus_t_sum(int n, int p);
/// D^p - 1 restricted to functions supported off v_1, read off v_n.
IntMatrix lens_restricted_block(int n, int p);

/// "eta1", ..., "etan"
std::vector<std::string> dual_basis_names(int n);

struct LensKHomology {
  AbelianGroupPresentation K0;  // ker(D^p - 1)
  AbelianGroupPresentation K1;  // coker(D^p - 1)
};

LensKHomology lens_k_homology(int n, int p);

/// Odd module on l2(N^{n-1} x Z) over C*(G_n) with F the sign of k_n.
struct HLModule {
  int n = 0;
  DirectedGraph graph;  // G_n
  OddModule module;
};

HLModule hl_module(int n);

/// The rank-one character module: psi(v_1) = psi(e_11) = 1 on a single point,
/// everything else zero. For p > 1 it is restricted to C*(G_n^p), where psi
/// is 1 exactly on the path e_11^p; its generators are indexed like
/// lens_graph(n, p).
GradedModule hl_even_character(int n, int p = 1);

/// Representation of C*(G_n^p) on the eigenspace {sum k = m mod p} (or on all
/// of H when m is empty). The returned module is indexed by lens_graph(n, p).
OddModule eigenspace_module(const HLModule& hl, int p, std::optional<int> m);

struct LensGenerator {
  int m = 0;
  std::vector<std::int64_t> index_vector;  // operator model, by vertex
  std::vector<std::int64_t> path_formula;  // -#(length-m paths v_i -> v_n)
  IntVector class_coordinates;
  std::optional<mpz_class> order;          // of F_m
  std::optional<mpz_class> order_minus_f0;  // of F_m - F_0
};

struct LensReport {
  int n = 0;
  int p = 0;
  LensKHomology groups;
  std::vector<LensGenerator> generators;
  bool generation_verified = false;
  bool even_generator_verified = false;  // ker(D^p - 1) = Z eta_1 = Z Index_E
  mpz_class one_minus_t_determinant;
  mpz_class restricted_block_determinant;
};

/// Index of every F_m computed by the operator model and by path counting;
/// throws std::logic_error when the two disagree.
LensReport lens_k1_generators(int n, int p);

}  // namespace khom
