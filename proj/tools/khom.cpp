// khom: K-theory and K-homology of graph C*-algebras from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 invalid graph or module input, 4 missing index-function value.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "khom/complexes.hpp"
#include "khom/fredholm.hpp"
#include "khom/graph.hpp"
#include "khom/graph_io.hpp"
#include "khom/lens.hpp"
#include "khom/report.hpp"
#include "khom/verify.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kInvalid = 3, kMissingEta = 4 };

struct ExitError {
  int code;
  std::string message;
};

struct Input {
  std::string file;
  std::string preset;
  std::string format = "text";
};

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("graph", in.file, "Graph JSON file");
  cmd->add_option("--preset", in.preset, "Built-in graph: sphere:N or lens:N:P");
  cmd->add_option("--format", in.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

std::vector<int> preset_numbers(const std::string& rest) {
  std::vector<int> out;
  std::stringstream ss(rest);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ExitError{kUsage, "bad preset parameter '" + part + "'"};
    }
  }
  return out;
}

khom::DirectedGraph load_graph(const Input& in) {
  if (in.file.empty() == in.preset.empty())
    throw ExitError{kUsage, "give exactly one of a graph file or --preset"};
  if (!in.preset.empty()) {
    const auto colon = in.preset.find(':');
    const std::string kind = in.preset.substr(0, colon);
    const auto nums = colon == std::string::npos ? std::vector<int>{}
                                                 : preset_numbers(in.preset.substr(colon + 1));
    try {
      if (kind == "sphere" && nums.size() == 1) return khom::sphere_graph(nums[0]);
      if (kind == "lens" && nums.size() == 2) return khom::lens_graph(nums[0], nums[1]);
    } catch (const khom::GraphError& e) {
      throw ExitError{kUsage, e.what()};
    }
    throw ExitError{kUsage, "unknown preset '" + in.preset + "' (use sphere:N or lens:N:P)"};
  }
  khom::GraphSpec spec;
  try {
    spec = khom::read_graph_file(in.file);
  } catch (const khom::GraphParseError& e) {
    throw ExitError{kUsage, e.what()};
  }
  const auto violations = khom::validate(spec);
  if (!violations.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += "\n  " + v.element + ": " + v.message;
    throw ExitError{kInvalid, msg};
  }
  return khom::DirectedGraph(spec);
}

khom::VertexFunction parse_eta(const khom::DirectedGraph& g, const std::vector<std::string>& items,
                               bool all_vertices) {
  khom::VertexFunction eta{all_vertices ? khom::VertexFunction::Domain::AllVertices
                                        : khom::VertexFunction::Domain::NonSinks,
                           std::vector<std::int64_t>(g.vertex_count(), 0)};
  std::vector<bool> given(g.vertex_count(), false);
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ExitError{kUsage, "--eta expects v=k, got '" + item + "'"};
    const auto name = item.substr(0, eq);
    const auto v = g.find_vertex(name);
    if (!v) throw ExitError{kInvalid, "--eta names unknown vertex '" + name + "'"};
    try {
      std::size_t used = 0;
      eta.values[*v] = std::stoll(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ExitError{kUsage, "--eta value for '" + name + "' is not an integer"};
    }
    given[*v] = true;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!given[v] && (all_vertices || !g.is_sink(v)))
      throw ExitError{kMissingEta, "missing --eta value for vertex '" + g.vertex_name(v) + "'"};
  return eta;
}

void emit(const Input& in, const json& report, const std::string& text) {
  if (in.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

std::string groups_text(const json&, const std::string& l0, const khom::AbelianGroupPresentation& g0,
                        const std::string& l1, const khom::AbelianGroupPresentation& g1) {
  return khom::group_text(l0, g0) + khom::group_text(l1, g1);
}

int run_kgroups(const Input& in) {
  const auto g = load_graph(in);
  const auto a = khom::vertex_complex(g);
  const auto k0 = khom::cokernel(a.boundary, a.degree0);
  const auto k1 = khom::kernel(a.boundary, a.degree1);
  const auto report = khom::kgroups_report(g);
  emit(in, report, groups_text(report, "K_0", k0, "K_1", k1));
  return kOk;
}

int run_khomology(const Input& in) {
  const auto g = load_graph(in);
  const auto dual = khom::dualize(khom::vertex_complex(g));
  const auto k0 = khom::kernel(dual.boundary, dual.degree1);
  const auto k1 = khom::cokernel(dual.boundary, dual.degree0);
  const auto report = khom::khomology_report(g);
  emit(in, report, groups_text(report, "K^0", k0, "K^1", k1));
  return kOk;
}

std::string function_text(const json& obj) {
  std::string out;
  for (const auto& [k, v] : obj.items()) out += "  " + k + ": " + v.dump() + "\n";
  return out;
}

int run_k0_module(const Input& in, const std::vector<std::string>& eta_items) {
  const auto g = load_graph(in);
  const auto eta = parse_eta(g, eta_items, true);
  json report;
  try {
    report = khom::k0_module_report(g, eta);
  } catch (const khom::HarmonicityError& e) {
    throw ExitError{kInvalid, e.what()};
  }
  std::string text = "index function:\n" + function_text(report["index"]) +
                     "commutator ranks:\n" + function_text(report["commutator_ranks"]) +
                     "relations: " + (report["relations"].get<bool>() ? "pass" : "FAIL") + "\n";
  emit(in, report, text);
  return report["relations"].get<bool>() ? kOk : kFailed;
}

std::string star_text(const json& star) {
  std::string out = std::string("star condition: ") + (star["passed"].get<bool>() ? "pass" : "FAIL") + "\n";
  out += "commutator ranks:\n";
  for (const auto& c : star["commutators"]) {
    out += "  " + c["generator"].get<std::string>() + ": " + c["rank"].dump();
    if (c.contains("off_diagonal_rank") && c["rank"].get<std::int64_t>() != 0)
      out += " (off-diagonal rank " + c["off_diagonal_rank"].dump() + ")";
    if (!c["witness"].empty()) out += "  witness " + c["witness"].dump();
    out += "\n";
  }
  return out;
}

int print_k1(const Input& in, const json& report) {
  std::string text = star_text(report["star_condition"]);
  if (report.contains("vertex_index")) {
    text += "edge index:\n" + function_text(report["edge_index"]);
    text += "vertex index:\n" + function_text(report["vertex_index"]);
    text += "class in K^1 = " + report["K^1"].get<std::string>() + ": " + report["class"].dump() + "\n";
  }
  emit(in, report, text);
  return report["star_condition"]["passed"].get<bool>() ? kOk : kFailed;
}

int run_k1_module(const Input& in, const std::vector<std::string>& eta_items) {
  const auto g = load_graph(in);
  const auto eta = parse_eta(g, eta_items, false);
  return print_k1(in, khom::k1_module_report(g, eta));
}

int run_lens(const Input& in, int n, int p) {
  if (!in.preset.empty()) {
    const auto colon = in.preset.find(':');
    const auto nums = preset_numbers(in.preset.substr(colon == std::string::npos ? in.preset.size() : colon + 1));
    if (in.preset.rfind("lens:", 0) != 0 || nums.size() != 2)
      throw ExitError{kUsage, "lens expects --preset lens:N:P or --n/--p"};
    n = nums[0];
    p = nums[1];
  }
  if (n < 2 || p < 2) throw ExitError{kUsage, "lens needs n >= 2 and p >= 2"};
  const auto r = khom::lens_k1_generators(n, p);
  const auto report = khom::to_json(r);
  std::ostringstream os;
  os << "quantum lens space: n=" << n << " p=" << p << "\n";
  os << khom::group_text("K^0", r.groups.K0) << khom::group_text("K^1", r.groups.K1);
  os << "generators F_m (index vector over v1..v" << n << "):\n";
  for (const auto& g : r.generators) {
    os << "  F_" << g.m << ": (";
    for (std::size_t i = 0; i < g.index_vector.size(); ++i) os << (i ? ", " : "") << g.index_vector[i];
    os << ")  order " << (g.order ? g.order->get_str() : "infinite");
    if (g.m > 0) os << ", F_" << g.m << " - F_0 order " << (g.order_minus_f0 ? g.order_minus_f0->get_str() : "infinite");
    os << "\n";
  }
  os << "F_m generate K^1: " << (r.generation_verified ? "yes" : "NO") << "\n";
  os << "even character generates K^0: " << (r.even_generator_verified ? "yes" : "NO") << "\n";
  os << "det sum (1-t)^i = " << r.one_minus_t_determinant.get_str()
     << ", det restricted block = " << r.restricted_block_determinant.get_str() << "\n";
  emit(in, report, os.str());
  return r.generation_verified && r.even_generator_verified ? kOk : kFailed;
}

int run_verify(std::optional<std::uint64_t> seed_flag, bool quick, bool corrupted, const std::string& format) {
  if (corrupted) {
    const auto g = khom::sphere_graph(2);
    const khom::VertexFunction eta{khom::VertexFunction::Domain::NonSinks, {1, 0}};
    Input in;
    in.format = format;
    return print_k1(in, khom::k1_module_report(g, khom::corrupted_k1_module(g, eta)));
  }
  const auto seed = seed_flag ? *seed_flag : khom::verify::seed_from_env();
  khom::verify::CorpusSizes sizes;
  if (quick) sizes = {100, 50, 30, 20, 5, 5};
  const auto results = khom::verify::run_all(seed, sizes);
  bool ok = true;
  json report{{"seed", seed}, {"suites", json::array()}};
  std::ostringstream os;
  os << "seed " << seed << "\n";
  for (const auto& r : results) {
    ok = ok && r.passed();
    report["suites"].push_back(
        {{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"passed", r.passed()}});
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases - r.failures << "/" << r.cases
       << "\n";
    if (!r.passed()) std::cerr << "minimal reproducer for '" << r.name << "':\n" << r.reproducer << "\n";
  }
  report["passed"] = ok;
  Input in;
  in.format = format;
  emit(in, report, os.str());
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-theory and K-homology of graph C*-algebras"};
  app.require_subcommand(1);

  Input kg, kh, m0, m1, lens;
  add_input(app.add_subcommand("kgroups", "K_0 and K_1 of C*(G)"), kg);
  add_input(app.add_subcommand("khomology", "K^0 and K^1 of C*(G)"), kh);

  std::vector<std::string> eta0, eta1;
  auto* k0cmd = app.add_subcommand("k0-module", "Build the graded module of a harmonic eta");
  add_input(k0cmd, m0);
  k0cmd->add_option("--eta", eta0, "Index function value v=k (every vertex)");
  auto* k1cmd = app.add_subcommand("k1-module", "Build the odd module of eta on the non-sinks");
  add_input(k1cmd, m1);
  k1cmd->add_option("--eta", eta1, "Index function value v=k (every non-sink)");

  int lens_n = 0, lens_p = 0;
  auto* lenscmd = app.add_subcommand("lens", "Quantum lens space report");
  lenscmd->add_option("--preset", lens.preset, "lens:N:P");
  lenscmd->add_option("--n", lens_n, "Sphere dimension parameter");
  lenscmd->add_option("--p", lens_p, "Order of the cyclic group");
  lenscmd->add_option("--format", lens.format)->check(CLI::IsMember({"text", "json"}));

  std::optional<std::uint64_t> seed;
  bool quick = false, corrupted = false;
  std::string verify_format = "text";
  auto* vcmd = app.add_subcommand("verify", "Run the randomized invariant suites");
  vcmd->add_option("--seed", seed, "Corpus seed (default: KHOM_SEED or built-in)");
  vcmd->add_flag("--quick", quick, "Smaller corpora");
  vcmd->add_flag("--corrupted-fixture", corrupted, "Report on the deliberately corrupted module");
  vcmd->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("kgroups")) return run_kgroups(kg);
    if (app.got_subcommand("khomology")) return run_khomology(kh);
    if (app.got_subcommand("k0-module")) return run_k0_module(m0, eta0);
    if (app.got_subcommand("k1-module")) return run_k1_module(m1, eta1);
    if (app.got_subcommand("lens")) return run_lens(lens, lens_n, lens_p);
    if (app.got_subcommand("verify")) return run_verify(seed, quick, corrupted, verify_format);
  } catch (const ExitError& e) {
    std::cerr << "khom: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "khom: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
