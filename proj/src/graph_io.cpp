#include "khom/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace khom {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw GraphParseError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_string()) throw GraphParseError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

GraphSpec parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw GraphParseError("graph document must be a JSON object");

  GraphSpec spec;
  const auto& vertices = member(doc, "vertices", "graph");
  if (!vertices.is_array()) throw GraphParseError("graph: \"vertices\" must be an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].is_string())
      throw GraphParseError("vertices[" + std::to_string(i) + "] must be a string");
    spec.vertices.push_back(vertices[i].get<std::string>());
  }

  const auto& edges = member(doc, "edges", "graph");
  if (!edges.is_array()) throw GraphParseError("graph: \"edges\" must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!edges[i].is_object()) throw GraphParseError(where + " must be an object");
    spec.edges.push_back({string_member(edges[i], "id", where), string_member(edges[i], "src", where),
                          string_member(edges[i], "dst", where)});
  }
  return spec;
}

GraphSpec read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

std::string graph_to_json(const GraphSpec& spec, int indent) {
  json doc;
  doc["vertices"] = spec.vertices;
  doc["edges"] = json::array();
  for (const auto& e : spec.edges) doc["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  return doc.dump(indent);
}

}  // namespace khom
