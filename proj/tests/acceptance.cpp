// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "khom/complexes.hpp"
#include "khom/lens.hpp"
#include "khom/verify.hpp"

namespace {

using namespace khom;

struct Outcome {
  bool pass = true;
  std::string detail;
};

mpz_class ipow(long base, long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

Outcome fail(const std::string& why) { return {false, why}; }

Outcome from_suite(const verify::SuiteResult& r) {
  std::ostringstream os;
  os << r.name << ": " << r.cases << " cases, " << r.failures << " failures";
  if (!r.passed()) os << "; " << r.reproducer;
  return {r.passed(), os.str()};
}

Outcome from_suites(std::initializer_list<verify::SuiteResult> rs) {
  Outcome out;
  for (const auto& r : rs) {
    const auto o = from_suite(r);
    out.pass = out.pass && o.pass;
    out.detail += (out.detail.empty() ? "" : " | ") + o.detail;
  }
  return out;
}

// K^1 = Z + Z/torsion with F_0 of infinite order, F_1 - F_0 of order `torsion`.
std::optional<std::string> check_lens_table(int n, int p, const mpz_class& torsion) {
  const auto tag = "(n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
  const auto r = lens_k1_generators(n, p);
  const auto& k1 = r.groups.K1;
  if (k1.free_rank() != 1 || k1.torsion() != IntVector{torsion}) return tag + " K^1 = " + k1.structure_string();
  if (r.generators.size() < 2) return tag + " fewer than two generators";
  if (r.generators[0].order) return tag + " F_0 has finite order";
  if (r.generators[1].order_minus_f0 != torsion) return tag + " F_1 - F_0 has the wrong order";
  // F_0 and F_1 - F_0 must generate; their ambient vectors are the index vectors
  IntVector f0(r.generators[0].index_vector.size()), f1(f0.size());
  for (std::size_t i = 0; i < f0.size(); ++i) {
    f0[i] = static_cast<long>(r.generators[0].index_vector[i]);
    f1[i] = static_cast<long>(r.generators[1].index_vector[i]) - static_cast<long>(r.generators[0].index_vector[i]);
  }
  if (!k1.generated_by({f0, f1})) return tag + " F_0 and F_1 - F_0 do not generate";
  return std::nullopt;
}

Outcome ac1() {
  for (int p = 2; p <= 7; ++p)
    if (auto err = check_lens_table(2, p, p)) return fail(*err);
  return {true, "n=2, p=2..7: Z + Z/p, F_0 infinite, F_1 - F_0 of order p"};
}

Outcome ac2() {
  for (int n = 2; n <= 6; ++n)
    if (auto err = check_lens_table(n, 2, ipow(2, n - 1))) return fail(*err);
  return {true, "p=2, n=2..6: Z + Z/2^(n-1), F_1 - F_0 of order 2^(n-1)"};
}

Outcome ac3() {
  for (int n = 2; n <= 4; ++n)
    for (int p = 2; p <= 5; ++p) {
      const auto tag = "(n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
      const auto k0 = lens_k_homology(n, p).K0;
      IntVector eta1(static_cast<std::size_t>(n));
      eta1[0] = 1;
      if (k0.free_rank() != 1 || !k0.torsion().empty() || !k0.generated_by({eta1}))
        return fail(tag + " ker(D^p - 1) is not Z eta1");
      const auto idx = index_k0(hl_even_character(n, p), lens_graph(n, p));
      for (int i = 0; i < n; ++i)
        if (idx.values[static_cast<std::size_t>(i)] != (i == 0 ? 1 : 0))
          return fail(tag + " even character index is not eta1");
    }
  return {true, "n<=4, p<=5: ker(D^p - 1) = Z eta1 = Z Index_E"};
}

Outcome ac4() { return from_suite(verify::lens_index_suite(4, 5)); }

Outcome ac5(std::uint64_t seed) {
  return from_suites({verify::k0_roundtrip_suite(seed, 200), verify::k1_roundtrip_suite(seed, 200)});
}

Outcome ac6(std::uint64_t seed) { return from_suite(verify::commutator_suite(seed, 200)); }

Outcome ac7(std::uint64_t seed) { return from_suite(verify::complexes_suite(seed, 500)); }

Outcome ac8(std::uint64_t seed) { return from_suite(verify::snf_suite(seed, 1000)); }

Outcome ac9() {
  for (int n = 2; n <= 6; ++n)
    for (int p = 2; p <= 7; ++p) {
      const auto tag = "(n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
      if (determinant(one_minus_t_sum(n, p)) != ipow(p, n)) return fail(tag + " det sum (1-t)^i != p^n");
      if (abs(determinant(lens_restricted_block(n, p))) != ipow(p, n - 1))
        return fail(tag + " restricted block det != +-p^(n-1)");
    }
  return {true, "n<=6, p<=7: det = p^n and +-p^(n-1)"};
}

Outcome ac10() { return from_suite(verify::negative_fixture_suite()); }

}  // namespace

int main() {
  const auto seed = verify::seed_from_env();
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  const std::vector<std::function<Outcome()>> criteria{
      ac1, ac2, ac3, ac4, [&] { return ac5(seed); }, [&] { return ac6(seed); },
      [&] { return ac7(seed); }, [&] { return ac8(seed); }, ac9, ac10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("AC%zu %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
