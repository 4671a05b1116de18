#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "khom/abelian_group.hpp"
#include "khom/basis.hpp"
#include "khom/basis_operator.hpp"
#include "khom/graph.hpp"

namespace khom {

/// Integer function on the vertices. Values are indexed by vertex index;
/// for the NonSinks domain the sink entries are unused and kept at 0.
struct VertexFunction {
  enum class Domain { AllVertices, NonSinks };
  Domain domain = Domain::AllVertices;
  std::vector<std::int64_t> values;

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;
};

struct EdgeFunction {
  std::vector<std::int64_t> values;  // by edge index
  friend bool operator==(const EdgeFunction&, const EdgeFunction&) = default;
};

/// Values of `f` on V_ns, in vertex order.
IntVector nonsink_values(const DirectedGraph& g, const VertexFunction& f);
/// True iff f(v) = sum_{s(e)=v} f(r(e)) at every non-sink.
bool is_harmonic(const DirectedGraph& g, const VertexFunction& f);

class HarmonicityError : public std::invalid_argument {
 public:
  HarmonicityError(const std::string& vertex, const std::string& what)
      : std::invalid_argument(what), vertex_(vertex) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

class StarConditionError : public std::runtime_error {
 public:
  StarConditionError(std::vector<std::string> offenders, const std::string& what)
      : std::runtime_error(what), offenders_(std::move(offenders)) {}
  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

/// Images of the canonical generators, indexed like the graph.
struct Representation {
  std::vector<BasisOperator> vertices;
  std::vector<BasisOperator> edges;
};

/// Odd Fredholm module (rho, H, F) at basis level.
struct OddModule {
  BasisSpace space;
  Representation rho;
  SignOperator F;
};

/// Graded module (rho_0 + rho_1, H + H, F). With the flip symmetry F is the
/// off-diagonal identification of the two copies; with Zero it is 0 (used
/// when the odd half of the space is trivial).
struct GradedModule {
  enum class Symmetry { Flip, Zero };
  BasisSpace space;
  Representation even;
  Representation odd;
  Symmetry symmetry = Symmetry::Flip;
  DefectCertificate certificate;
};

/// Graded module with index function eta, on l2(Z) (x) l2(V). Requires eta
/// harmonic; throws HarmonicityError naming the first violating vertex.
GradedModule build_k0_module(const DirectedGraph& g, const VertexFunction& eta);

/// Odd module satisfying the star condition with index function eta on V_ns.
OddModule build_k1_module(const DirectedGraph& g, const VertexFunction& eta);

/// v |-> Index(rho_1(v) rho_0(v) : rho_0(v)H -> rho_1(v)H). Throws
/// std::runtime_error if the result is not harmonic.
VertexFunction index_k0(const GradedModule& m, const DirectedGraph& g);

struct K1Index {
  EdgeFunction edges;
  VertexFunction vertices;          // pushdown along sigma^dual, domain NonSinks
  IntVector class_coordinates;      // reduced in coker of the dual boundary
};

/// Edge indices of P rho(e) P, their vertex sums, and the K^1 class. Throws
/// StarConditionError if the module fails the star condition.
K1Index index_k1(const OddModule& m, const DirectedGraph& g);

struct StarReport {
  struct Entry {
    enum class Kind { Vertex, RangeProjection, Edge };
    std::string generator;
    Kind kind;
    CommutatorReport commutator;
  };
  std::vector<Entry> entries;
  std::vector<std::string> offenders;
  bool passed = true;
};

/// Commutator ranks of F with every rho(v), rho(e e*) and rho(e). Passes iff
/// the vertex and range-projection ranks are all zero.
StarReport check_star_condition(const OddModule& m, const DirectedGraph& g);

struct RelationReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Cuntz-Krieger relations checked pointwise on the radius box: vertex
/// projections orthogonal, dom rho(e) = rho(r(e)), and for non-sinks the
/// ranges of the outgoing edges partition rho(v). Edge ranges are disjoint.
RelationReport check_cuntz_krieger(const Representation& rho, const DirectedGraph& g,
                                   const BasisSpace& space, Coord radius);

/// Commutator rank of the graded symmetry with rho(x): twice the rank of
/// rho_1(x) - rho_0(x) for the flip, zero otherwise.
std::int64_t graded_commutator_rank(const GradedModule& m, const BasisOperator& even,
                                    const BasisOperator& odd);

OddModule direct_sum(const OddModule& a, const OddModule& b);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/// The K^1 module of `eta` with F additionally swapping the first point of
/// rho(e e*) (for the first edge) with a point outside that range. Fails the
/// star condition; used as a negative self-test.
OddModule corrupted_k1_module(const DirectedGraph& g, const VertexFunction& eta);

}  // namespace khom
