#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseala/lattice.hpp"
#include "sseala/rational.hpp"

namespace sseala {

// Finite-dimensional simple Lie algebra given by structure constants on a basis.
struct SimpleLieAlgebra {
  std::string name;
  std::vector<std::string> labels;
  // bracket[i][j] = sparse expansion of [b_i, b_j]
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket;
  std::vector<std::vector<Rational>> form;  // normalized invariant form
  std::vector<int> root;                    // root of b_i as a multiple of alpha
  Rational root_norm;                       // <alpha, alpha>

  int dim() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;

  // basis e, h, f; trace form (e,f) = 1, (h,h) = 2
  static SimpleLieAlgebra sl2();
};

enum class SymbolKind : std::uint8_t { X = 0, K = 1, D = 2, T = 3 };

// Index of the single K or D symbol spanning a one-dimensional graded piece in tau_B.
inline constexpr int kBVector = -1;

// X: index into the simple basis.  K, D: coordinate index, or kBVector in tau_B.
struct BasisSymbol {
  SymbolKind kind;
  int index;
  LatticeVector degree;
  auto operator<=>(const BasisSymbol&) const = default;
  bool operator==(const BasisSymbol&) const = default;
};

enum class AlgebraFamily { Toroidal, FullToroidal, TauS, TauB };

class AlgebraSpec;
class GradedElement;

using BracketRule =
    std::function<GradedElement(const AlgebraSpec&, const BasisSymbol&, const BasisSymbol&)>;

// Finite linear combination of canonical basis symbols.  Elements refer to their
// algebra by pointer; the AlgebraSpec must outlive them.
class GradedElement {
 public:
  GradedElement() = default;
  explicit GradedElement(const AlgebraSpec* alg) : alg_(alg) {}
  GradedElement(const AlgebraSpec* alg, const BasisSymbol& s, Rational c = 1);

  const AlgebraSpec* algebra() const { return alg_; }
  const std::map<BasisSymbol, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const BasisSymbol& s) const;
  void add_term(const BasisSymbol& s, const Rational& c);

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator-(GradedElement a);
  friend GradedElement operator*(const Rational& k, GradedElement a);
  bool operator==(const GradedElement& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  void check_same(const GradedElement& o) const;
  const AlgebraSpec* alg_ = nullptr;
  std::map<BasisSymbol, Rational> terms_;
};

class AlgebraSpec {
 public:
  static std::shared_ptr<const AlgebraSpec> toroidal(std::size_t n);
  static std::shared_ptr<const AlgebraSpec> full_toroidal(std::size_t n);
  static std::shared_ptr<const AlgebraSpec> tau_s(std::size_t n);
  static std::shared_ptr<const AlgebraSpec> tau_b(const SkewFormContext& ctx, std::string name = "tauB");
  // Copy of this algebra whose symbol bracket is replaced; used for negative fixtures.
  std::shared_ptr<const AlgebraSpec> with_bracket_rule(BracketRule rule, std::string name) const;

  AlgebraFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return n_; }
  const SimpleLieAlgebra& simple() const { return g_; }
  const SkewFormContext* skew() const { return ctx_ ? &*ctx_ : nullptr; }
  bool has_form() const { return family_ == AlgebraFamily::TauS || family_ == AlgebraFamily::TauB; }

  GradedElement zero() const { return GradedElement(this); }
  GradedElement element(const BasisSymbol& s, Rational c = 1) const;
  GradedElement x(int a, const LatticeVector& r) const;
  // Canonical forms of K(u, r) and D(u, r).
  GradedElement k_element(const RationalVector& u, const LatticeVector& r) const;
  GradedElement d_element(const RationalVector& u, const LatticeVector& r) const;
  // K_i, d_i, and the tau_B generators Ktilde(r) = K(Br, r) and h_r = D(Br, r).
  GradedElement k_coord(std::size_t i) const;
  GradedElement d_coord(std::size_t i) const;

  // Vector u represented by a K or D symbol.
  RationalVector vector_of(const BasisSymbol& s) const;
  bool is_canonical(const BasisSymbol& s) const;
  // Re-expresses every term through k_element / d_element.
  GradedElement normalize(const GradedElement& x) const;

  std::vector<BasisSymbol> basis_in_degree(const LatticeVector& r) const;
  std::vector<BasisSymbol> basis_in_box(std::int64_t radius) const;

  GradedElement bracket(const BasisSymbol& a, const BasisSymbol& b) const { return rule_(*this, a, b); }
  GradedElement bracket(const GradedElement& x, const GradedElement& y) const;
  // Invariant form on symbols; empty when the algebra carries no form.
  std::optional<Rational> form(const BasisSymbol& a, const BasisSymbol& b) const;
  std::optional<Rational> form(const GradedElement& x, const GradedElement& y) const;

  std::string symbol_str(const BasisSymbol& s) const;

 private:
  AlgebraSpec(AlgebraFamily f, std::size_t n, std::string name);
  AlgebraFamily family_;
  std::size_t n_;
  std::string name_;
  SimpleLieAlgebra g_;
  std::optional<SkewFormContext> ctx_;
  BracketRule rule_;
};

// Bracket of the construction itself: the relations of g (x) A, K and D, restricted to the family.
GradedElement builtin_bracket(const AlgebraSpec& alg, const BasisSymbol& a, const BasisSymbol& b);

GradedElement bracket(const GradedElement& x, const GradedElement& y);
std::optional<Rational> invariant_form(const GradedElement& x, const GradedElement& y);

struct JacobiResult {
  bool holds;
  GradedElement defect;  // [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
};
JacobiResult jacobi_check(const GradedElement& x, const GradedElement& y, const GradedElement& z);

struct NilpotencyResult {
  bool nilpotent;
  unsigned k;  // smallest k with ad(x)^k y = 0, or the bound when not reached
};
NilpotencyResult ad_nilpotency(const GradedElement& x, const GradedElement& y, unsigned bound);

// The named algebras used by the command line: toroidal, full-toroidal, tauS, tauB, heala, keala.
std::shared_ptr<const AlgebraSpec> make_algebra(const std::string& name, const SkewFormContext& ctx,
                                                std::size_t m);

}  // namespace sseala
