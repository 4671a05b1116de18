#pragma once

#include <stdexcept>
#include <string>

#include "khom/graph.hpp"

namespace khom {

/// Malformed graph document (syntax or shape). Distinct from GraphError,
/// which reports a well-formed document describing an invalid graph.
class GraphParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"vertices": ["v1", ...], "edges": [{"id": "e1", "src": "v1", "dst": "v2"}, ...]}
GraphSpec parse_graph_json(const std::string& text);
GraphSpec read_graph_file(const std::string& path);

std::string graph_to_json(const GraphSpec& spec, int indent = 2);

}  // namespace khom
