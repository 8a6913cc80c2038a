#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
// Exponent vectors are fixed-width arrays so map keys never allocate.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcsm/errors.hpp"
#include "tcsm/partition.hpp"
#include "tcsm/rational.hpp"

namespace tcsm {

inline constexpr int kMaxVars = 12;

struct Monomial {
  std::uint8_t nvars = 0;
  std::array<std::uint8_t, kMaxVars> exp{};

  int degree() const {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += exp[v];
    return d;
  }
  auto operator<=>(const Monomial&) const = default;
};

inline Monomial make_monomial(int nvars, std::initializer_list<int> exps) {
  Monomial m;
  m.nvars = static_cast<std::uint8_t>(nvars);
  int v = 0;
  for (int e : exps) m.exp[v++] = static_cast<std::uint8_t>(e);
  return m;
}

class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    Monomial one;
    one.nvars = static_cast<std::uint8_t>(nvars);
    p.add_term(one, c);
    return p;
  }

  static Poly variable(int nvars, int v, int power = 1) {
    Poly p(nvars);
    Monomial m;
    m.nvars = static_cast<std::uint8_t>(nvars);
    m.exp[v] = static_cast<std::uint8_t>(power);
    p.add_term(m, 1);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

  Poly scaled(const Rational& c) const {
    Poly out(nvars_);
    if (sgn(c) == 0) return out;
    for (const auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
    return out;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (int v = 0; v < m.nvars; ++v)
          m.exp[v] = static_cast<std::uint8_t>(m.exp[v] + mb.exp[v]);
        out.add_term(m, ca * cb);
      }
    return out;
  }

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  Poly derivative(int v) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exp[v] == 0) continue;
      Monomial d = m;
      int e = d.exp[v]--;
      out.add_term(d, c * e);
    }
    return out;
  }

  // Multiply by a single variable.
  Poly shifted(int v) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      s.exp[v]++;
      out.terms_.emplace(s, c);
    }
    return out;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  // Degree if homogeneous, -1 for the zero polynomial, nullopt otherwise.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return std::nullopt;
    return d;
  }

  // Exact division by (x_i - x_j): synthetic division in x_i with x_j acting
  // as the root. Returns nullopt when the remainder is nonzero; that outcome
  // is how non-polynomial similarity series are detected downstream.
  std::optional<Poly> divide_by_difference(int i, int j) const {
    int dmax = 0;
    for (const auto& [m, c] : terms_) dmax = std::max(dmax, int(m.exp[i]));
    // coefficient polynomials of x_i^t
    std::vector<Poly> coef(dmax + 1, Poly(nvars_));
    for (const auto& [m, c] : terms_) {
      Monomial stripped = m;
      int t = stripped.exp[i];
      stripped.exp[i] = 0;
      coef[t].add_term(stripped, c);
    }
    std::vector<Poly> q(dmax > 0 ? dmax : 0, Poly(nvars_));
    Poly carry(nvars_);  // q_t, walking t from dmax-1 down
    for (int t = dmax; t >= 1; --t) {
      carry = (t == dmax) ? coef[t] : coef[t] + carry.shifted(j);
      q[t - 1] = carry;
    }
    Poly rem = dmax > 0 ? coef[0] + carry.shifted(j) : coef[0];
    if (!rem.is_zero()) return std::nullopt;
    Poly out(nvars_);
    for (int t = 0; t < dmax; ++t)
      for (const auto& [m, c] : q[t].terms_) {
        Monomial full = m;
        full.exp[i] = static_cast<std::uint8_t>(full.exp[i] + t);
        out.add_term(full, c);
      }
    return out;
  }

  double evaluate(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = to_double(c);
      for (int v = 0; v < m.nvars; ++v)
        for (int e = 0; e < m.exp[v]; ++e) t *= x[v];
      sum += t;
    }
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += format_rational(c);
      for (int v = 0; v < m.nvars; ++v)
        if (m.exp[v] > 0) {
          s += "*x" + std::to_string(v + 1);
          if (m.exp[v] > 1) s += "^" + std::to_string(int(m.exp[v]));
        }
    }
    return s;
  }

 private:
  int nvars_;
  std::map<Monomial, Rational> terms_;
};

// Monomial symmetric polynomial m_alpha in nvars variables: unit coefficient
// on every distinct permutation of the exponent vector.
inline Poly monomial_symmetric(const Partition& alpha, int nvars) {
  if (static_cast<int>(alpha.size()) > nvars) {
    throw LengthExceedsN("partition length " + std::to_string(alpha.size()) +
                         " exceeds variable count " + std::to_string(nvars));
  }
  std::vector<std::uint8_t> exps(nvars, 0);
  for (std::size_t t = 0; t < alpha.size(); ++t)
    exps[t] = static_cast<std::uint8_t>(alpha[t]);
  std::sort(exps.begin(), exps.end());  // ascending start for next_permutation
  Poly out(nvars);
  do {
    Monomial m;
    m.nvars = static_cast<std::uint8_t>(nvars);
    std::copy(exps.begin(), exps.end(), m.exp.begin());
    out.add_term(m, 1);
  } while (std::next_permutation(exps.begin(), exps.end()));
  return out;
}

}  // namespace tcsm
