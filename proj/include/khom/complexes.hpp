#pragma once

#include <string>
#include <vector>

#include "khom/graph.hpp"
#include "khom/int_matrix.hpp"

namespace khom {

/// Integer complex concentrated in degrees 1 and 0. The boundary has one
/// column per degree-1 basis element and one row per degree-0 basis element.
struct TwoTermComplex {
  std::vector<std::string> degree1;
  std::vector<std::string> degree0;
  IntMatrix boundary;
};

/// Chain map between two-term complexes; one matrix per degree.
struct ComplexMap {
  IntMatrix degree1;
  IntMatrix degree0;
};

/// Map from the degree-0 group of a complex to its degree-1 group.
struct Homotopy {
  IntMatrix map;
};

/// A_*(G): Z V_ns -> Z V, v |-> (sum_{s(e)=v} r(e)) - v.
TwoTermComplex vertex_complex(const DirectedGraph& g);

/// B_*(G): Z E -> Z[E + V_s]. Degree-0 basis lists edges first, then sinks.
TwoTermComplex edge_complex(const DirectedGraph& g);

ComplexMap sigma(const DirectedGraph& g);  // A -> B
ComplexMap tau(const DirectedGraph& g);    // B -> A
Homotopy homotopy_h(const DirectedGraph& g);  // sigma tau ~ id on B
Homotopy homotopy_k(const DirectedGraph& g);  // tau sigma ~ id on A

/// Transposed boundary with the basis lists exchanged. Names are toggled
/// with a trailing '^' so that dualize(dualize(c)) == c.
TwoTermComplex dualize(const TwoTermComplex& c);

/// d_target * f_1 == f_0 * d_source
bool is_chain_map(const ComplexMap& f, const TwoTermComplex& source, const TwoTermComplex& target);

}  // namespace khom
