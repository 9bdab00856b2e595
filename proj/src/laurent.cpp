#include "sseala/laurent.hpp"

#include <functional>
#include <numeric>

#include "sseala/errors.hpp"

namespace sseala {

unsigned MultiIndex::total() const { return std::accumulate(orders.begin(), orders.end(), 0u); }

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(orders[i]);
  }
  return s + ")";
}

std::vector<MultiIndex> multi_indices(std::size_t n, unsigned lo, unsigned hi) {
  std::vector<MultiIndex> out;
  for (unsigned total = lo; total <= hi; ++total) {
    // compositions of total into n parts, lexicographically decreasing in the first entry
    std::vector<unsigned> a(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == n) {
        a[i] = left;
        out.push_back(MultiIndex{a});
        return;
      }
      for (unsigned v = left + 1; v-- > 0;) {
        a[i] = v;
        rec(i + 1, left - v);
      }
    };
    if (n == 0) {
      if (total == 0) out.push_back(MultiIndex{});
      continue;
    }
    rec(0, total);
  }
  return out;
}

std::int64_t falling_factorial(std::int64_t x, unsigned k) {
  std::int64_t p = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(p, x - static_cast<std::int64_t>(i), &p))
      throw PreconditionError("falling factorial overflows 64 bits");
  }
  return p;
}

std::int64_t monomial_derivative_at_one(const LatticeVector& r, const MultiIndex& alpha) {
  if (alpha.orders.size() != r.size()) throw ArgumentError("multi-index rank mismatch");
  std::int64_t p = 1;
  for (std::size_t j = 0; j < r.size() && p != 0; ++j) {
    if (__builtin_mul_overflow(p, falling_factorial(r[j], alpha.orders[j]), &p))
      throw PreconditionError("derivative overflows 64 bits");
  }
  return p;
}

LaurentPoly LaurentPoly::monomial(const LatticeVector& r, Rational c) {
  LaurentPoly f(r.size());
  f.add_term(r, c);
  return f;
}

LaurentPoly LaurentPoly::constant(std::size_t n, Rational c) { return monomial(LatticeVector(n), std::move(c)); }

Rational LaurentPoly::coefficient(const LatticeVector& r) const {
  auto it = terms_.find(r);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const LatticeVector& r, const Rational& c) {
  if (r.size() != n_) throw ArgumentError("monomial rank mismatch");
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(r, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_rank(const LaurentPoly& o) const {
  if (o.n_ != n_) throw ArgumentError("Laurent polynomials in different numbers of variables");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_rank(o);
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_rank(o);
  for (const auto& [r, c] : o.terms_) add_term(r, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_rank(b);
  LaurentPoly out(a.n_);
  for (const auto& [r, c] : a.terms_)
    for (const auto& [s, d] : b.terms_) out.add_term(r + s, c * d);
  return out;
}

LaurentPoly operator*(const Rational& k, LaurentPoly a) {
  if (sgn(k) == 0) return LaurentPoly(a.n_);
  for (auto& [r, c] : a.terms_) c *= k;
  return a;
}

Rational LaurentPoly::derivative_at_one(const MultiIndex& alpha) const {
  if (alpha.orders.size() != n_) throw ArgumentError("multi-index rank mismatch");
  Rational s = 0;
  for (const auto& [r, c] : terms_) {
    std::int64_t d = monomial_derivative_at_one(r, alpha);
    if (d != 0) s += c * static_cast<long>(d);
  }
  return s;
}

nlohmann::ordered_json LaurentPoly::to_json() const {
  auto out = nlohmann::ordered_json::array();
  for (const auto& [r, c] : terms_) {
    nlohmann::ordered_json t;
    t["exp"] = std::vector<std::int64_t>(r.begin(), r.end());
    t["coef"] = to_string(c);
    out.push_back(t);
  }
  return out;
}

LaurentPoly LaurentPoly::from_json(std::size_t n, const nlohmann::ordered_json& j) {
  LaurentPoly f(n);
  if (!j.is_array()) throw ParseError("Laurent polynomial: expected an array of terms");
  for (const auto& t : j) {
    if (!t.contains("exp") || !t.contains("coef")) throw ParseError("Laurent term needs exp and coef");
    auto e = t["exp"].get<std::vector<std::int64_t>>();
    if (e.size() != n) throw ParseError("Laurent term has the wrong number of exponents");
    f.add_term(LatticeVector(e), parse_rational(t["coef"].get<std::string>()));
  }
  return f;
}

VanishingOrder vanishing_order_at_one(const LaurentPoly& f, unsigned cap) {
  for (unsigned q = 0; q < cap; ++q)
    for (const auto& a : multi_indices(f.rank(), q, q))
      if (sgn(f.derivative_at_one(a)) != 0) return {q, false};
  return {cap, true};
}

}  // namespace sseala
