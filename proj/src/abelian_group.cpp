#include "khom/abelian_group.hpp"

#include <sstream>

namespace khom {

namespace {

mpz_class dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Makes the leading nonzero entry of `gen` positive, negating the matching
// coordinate row so reduce(gen) stays a standard basis vector.
void normalise_sign(IntVector& gen, IntVector& row) {
  for (const auto& x : gen) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0) {
      for (auto& g : gen) g = -g;
      for (auto& r : row) r = -r;
    }
    return;
  }
}

}  // namespace

AbelianGroupPresentation cokernel(const IntMatrix& a, std::vector<std::string> ambient_basis) {
  if (ambient_basis.size() != a.rows())
    throw std::invalid_argument("cokernel: ambient basis size does not match row count");
  auto snf = smith(a);
  AbelianGroupPresentation gp;
  gp.kind_ = AbelianGroupPresentation::Kind::Cokernel;
  gp.ambient_ = std::move(ambient_basis);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) == 1) continue;
    gp.torsion_.push_back(snf.D(i, i));
    gp.coordinate_rows_.push_back(snf.U.row(i));
    gp.generators_.push_back(snf.U_inv.column(i));
  }
  for (std::size_t i = snf.rank; i < a.rows(); ++i) {
    IntVector gen = snf.U_inv.column(i);
    IntVector row = snf.U.row(i);
    normalise_sign(gen, row);
    gp.coordinate_rows_.push_back(std::move(row));
    gp.generators_.push_back(std::move(gen));
    ++gp.free_rank_;
  }
  return gp;
}

AbelianGroupPresentation kernel(const IntMatrix& a, std::vector<std::string> ambient_basis) {
  if (ambient_basis.size() != a.cols())
    throw std::invalid_argument("kernel: ambient basis size does not match column count");
  auto snf = smith(a);
  AbelianGroupPresentation gp;
  gp.kind_ = AbelianGroupPresentation::Kind::Kernel;
  gp.ambient_ = std::move(ambient_basis);
  for (std::size_t j = 0; j < snf.rank; ++j) gp.membership_rows_.push_back(snf.V_inv.row(j));
  for (std::size_t j = snf.rank; j < a.cols(); ++j) {
    IntVector gen = snf.V.column(j);
    IntVector row = snf.V_inv.row(j);
    normalise_sign(gen, row);
    gp.coordinate_rows_.push_back(std::move(row));
    gp.generators_.push_back(std::move(gen));
    ++gp.free_rank_;
  }
  return gp;
}

IntVector AbelianGroupPresentation::reduce(const IntVector& x) const {
  if (x.size() != ambient_.size())
    throw std::invalid_argument("reduce: vector length does not match ambient basis");
  for (const auto& row : membership_rows_)
    if (sgn(dot(row, x)) != 0) throw std::invalid_argument("reduce: vector is not in the kernel");
  IntVector y(coordinate_rows_.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    y[k] = dot(coordinate_rows_[k], x);
    if (k < torsion_.size()) mpz_fdiv_r(y[k].get_mpz_t(), y[k].get_mpz_t(), torsion_[k].get_mpz_t());
  }
  return y;
}

bool AbelianGroupPresentation::is_zero(const IntVector& x) const {
  for (const auto& c : reduce(x))
    if (sgn(c) != 0) return false;
  return true;
}

bool AbelianGroupPresentation::equal(const IntVector& x, const IntVector& y) const {
  return reduce(x) == reduce(y);
}

std::optional<mpz_class> AbelianGroupPresentation::order(const IntVector& x) const {
  auto y = reduce(x);
  for (std::size_t k = torsion_.size(); k < y.size(); ++k)
    if (sgn(y[k]) != 0) return std::nullopt;
  mpz_class ord = 1;
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    mpz_class g = gcd(torsion_[k], y[k]);
    mpz_class local = torsion_[k] / g;
    ord = lcm(ord, local);
  }
  return ord;
}

bool AbelianGroupPresentation::generated_by(const std::vector<IntVector>& elements) const {
  const std::size_t n = coordinate_count();
  if (n == 0) return true;
  std::vector<IntVector> cols;
  for (const auto& e : elements) cols.push_back(reduce(e));
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    IntVector rel(n);
    rel[k] = torsion_[k];
    cols.push_back(std::move(rel));
  }
  auto snf = smith(IntMatrix::from_columns(n, cols));
  if (snf.rank != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D(i, i) != 1) return false;
  return true;
}

std::string AbelianGroupPresentation::structure_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::string AbelianGroupPresentation::primary_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& [prime, exp] : primary_decomposition(torsion_)) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), prime.get_mpz_t(), exp);
    parts.push_back("Z/" + q.get_str());
  }
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::string AbelianGroupPresentation::generator_expression(std::size_t i) const {
  return format_vector(generators_.at(i), ambient_);
}

std::optional<mpz_class> element_order(const AbelianGroupPresentation& gp, const IntVector& x) {
  return gp.order(x);
}

std::vector<std::pair<mpz_class, unsigned>> primary_decomposition(const IntVector& torsion) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (mpz_class d : torsion) {
    for (mpz_class p = 2; p * p <= d && p < 1000000; ++p) {
      unsigned e = 0;
      while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
        d /= p;
        ++e;
      }
      if (e) out.emplace_back(p, e);
    }
    // Remaining cofactor is prime, or composite beyond the trial bound.
    if (d > 1) out.emplace_back(d, 1u);
  }
  return out;
}

std::string format_vector(const IntVector& x, const std::vector<std::string>& basis) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    mpz_class mag = abs(x[i]);
    if (first) {
      if (sgn(x[i]) < 0) os << '-';
    } else {
      os << (sgn(x[i]) < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << ' ';
    os << (i < basis.size() ? basis[i] : "x" + std::to_string(i));
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace khom
