#pragma once

// Sparse real polynomials in a fixed number of variables, plus exact
// moments of polynomials under zero-mean Gaussian measures.

#include "teleclone/phase_space.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace teleclone {

inline constexpr int kDefaultDegreeLimit = 64;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint8_t> exps) : exps_(std::move(exps)) {}

  static Monomial from(std::initializer_list<int> exps) {
    std::vector<std::uint8_t> e;
    for (int v : exps) {
      detail::require(v >= 0 && v <= 255, "Monomial: exponent out of range");
      e.push_back(static_cast<std::uint8_t>(v));
    }
    return Monomial(std::move(e));
  }

  std::size_t num_vars() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  bool is_constant() const { return degree() == 0; }

  void bump(std::size_t i, int delta) {
    const int v = exps_[i] + delta;
    detail::require(v >= 0 && v <= 255, "Monomial: exponent out of range");
    exps_[i] = static_cast<std::uint8_t>(v);
  }
  Monomial bumped(std::size_t i, int delta) const {
    Monomial m = *this;
    m.bump(i, delta);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    detail::require(o.num_vars() == num_vars(), "Monomial: variable count mismatch");
    Monomial m = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) m.bump(i, o.exps_[i]);
    return m;
  }

  double evaluate(std::span<const double> point) const {
    double v = 1.0;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      for (int k = 0; k < exps_[i]; ++k) v *= point[i];
    return v;
  }

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::uint8_t> exps_;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, double>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, double c) {
    Polynomial p(num_vars);
    p.add_term(Monomial(num_vars), c);
    return p;
  }
  static Polynomial variable(std::size_t num_vars, std::size_t i) {
    Polynomial p(num_vars);
    p.add_term(Monomial(num_vars).bumped(i, 1), 1.0);
    return p;
  }
  /// sum_i coeffs[i] y_i + c
  static Polynomial linear(std::span<const double> coeffs, double c = 0.0) {
    Polynomial p(coeffs.size());
    p.add_term(Monomial(coeffs.size()), c);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      p.add_term(Monomial(coeffs.size()).bumped(i, 1), coeffs[i]);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  double coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
  }

  void add_term(const Monomial& m, double c) {
    detail::require(m.num_vars() == num_vars_, "Polynomial: monomial arity mismatch");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  /// Variables with a non-zero exponent in some term.
  std::vector<std::size_t> active_variables() const {
    std::vector<bool> on(num_vars_, false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (m[i] > 0) on[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (on[i]) out.push_back(i);
    return out;
  }

  double evaluate(std::span<const double> point) const {
    detail::require(point.size() == num_vars_, "Polynomial::evaluate: point arity mismatch");
    double v = 0.0;
    for (const auto& [m, c] : terms_) v += c * m.evaluate(point);
    return v;
  }

  Polynomial& operator+=(const Polynomial& o) {
    detail::require(o.num_vars_ == num_vars_, "Polynomial: arity mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a += (-1.0) * b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    detail::require(a.num_vars_ == b.num_vars_, "Polynomial: arity mismatch");
    Polynomial out(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  Polynomial derivative(std::size_t i) const {
    detail::require(i < num_vars_, "Polynomial::derivative: variable out of range");
    Polynomial out(num_vars_);
    for (const auto& [m, c] : terms_)
      if (m[i] > 0) out.add_term(m.bumped(i, -1), c * m[i]);
    return out;
  }

  /// P * (sum_i coeffs[i] y_i + c), without building the linear factor.
  Polynomial times_linear(std::span<const double> coeffs, double c) const {
    detail::require(coeffs.size() == num_vars_, "Polynomial::times_linear: arity mismatch");
    Polynomial out(num_vars_);
    for (const auto& [m, v] : terms_) {
      out.add_term(m, v * c);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (coeffs[i] != 0.0) out.add_term(m.bumped(i, 1), v * coeffs[i]);
    }
    return out;
  }

  /// sum_ij s(i, j) d_i d_j P for symmetric s.
  Polynomial second_order(const Matrix& s) const {
    detail::require(s.rows() == static_cast<Eigen::Index>(num_vars_) && s.cols() == s.rows(),
                    "Polynomial::second_order: matrix size mismatch");
    Polynomial out(num_vars_);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (m[i] == 0) continue;
        const Monomial mi = m.bumped(i, -1);
        for (std::size_t j = 0; j < num_vars_; ++j) {
          const double sij = s(i, j);
          if (sij == 0.0 || mi[j] == 0) continue;
          out.add_term(mi.bumped(j, -1), c * sij * m[i] * mi[j]);
        }
      }
    }
    return out;
  }

  /// Q(z) = P(map z + offset), map is num_vars x new_vars.
  Polynomial substitute(const Matrix& map, const Vector& offset) const {
    detail::require(map.rows() == static_cast<Eigen::Index>(num_vars_) &&
                        offset.size() == map.rows(),
                    "Polynomial::substitute: map shape mismatch");
    const auto new_vars = static_cast<std::size_t>(map.cols());
    std::vector<std::vector<Polynomial>> powers(num_vars_);
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) {
        cache.push_back(Polynomial::constant(new_vars, 1.0));
        const auto row_index = static_cast<Eigen::Index>(i);
        std::vector<double> row(new_vars);
        for (std::size_t j = 0; j < new_vars; ++j)
          row[j] = map(row_index, static_cast<Eigen::Index>(j));
        cache.push_back(Polynomial::linear(row, offset(row_index)));
      }
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
      return cache[static_cast<std::size_t>(k)];
    };
    Polynomial out(new_vars);
    for (const auto& [m, c] : terms_) {
      Polynomial term = Polynomial::constant(new_vars, c);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (m[i] > 0) term = term * power(i, m[i]);
      out += term;
    }
    return out;
  }

  /// Same polynomial viewed in a larger variable space, variables shifted by `offset`.
  Polynomial embed(std::size_t new_vars, std::size_t offset) const {
    detail::require(offset + num_vars_ <= new_vars, "Polynomial::embed: target too small");
    Polynomial out(new_vars);
    for (const auto& [m, c] : terms_) {
      Monomial e(new_vars);
      for (std::size_t i = 0; i < num_vars_; ++i) e.bump(offset + i, m[i]);
      out.add_term(e, c);
    }
    return out;
  }

 private:
  std::size_t num_vars_ = 0;
  Terms terms_;
};

/// Moments E[prod y_i^{k_i}] under N(0, gamma), memoised per instance.
///
/// Uses the Gaussian integration-by-parts identity
///   E[y_i f(y)] = sum_j gamma_ij E[d_j f(y)],
/// which is the Isserlis pairing sum taken one partner at a time.
class GaussianMoments {
 public:
  explicit GaussianMoments(Matrix gamma, int degree_limit = kDefaultDegreeLimit)
      : gamma_(std::move(gamma)), degree_limit_(degree_limit) {
    detail::require(gamma_.rows() == gamma_.cols(), "GaussianMoments: gamma must be square");
  }

  double moment(const Monomial& m) {
    detail::require(m.num_vars() == static_cast<std::size_t>(gamma_.rows()),
                    "GaussianMoments: monomial arity mismatch");
    const int deg = m.degree();
    detail::require(deg <= degree_limit_, "GaussianMoments: degree above configured limit");
    if (deg % 2 == 1) return 0.0;
    if (deg == 0) return 1.0;
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    std::size_t i = 0;
    while (m[i] == 0) ++i;
    const Monomial rest = m.bumped(i, -1);
    double v = 0.0;
    for (std::size_t j = 0; j < rest.num_vars(); ++j) {
      if (rest[j] == 0) continue;
      const double g = gamma_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (g == 0.0) continue;
      v += g * rest[j] * moment(rest.bumped(j, -1));
    }
    cache_.emplace(m, v);
    return v;
  }

  double expectation(const Polynomial& p) {
    double v = 0.0;
    for (const auto& [m, c] : p.terms()) v += c * moment(m);
    return v;
  }

 private:
  Matrix gamma_;
  int degree_limit_;
  std::map<Monomial, double> cache_;
};

inline double gaussian_moment(const Matrix& gamma, const Monomial& m,
                              int degree_limit = kDefaultDegreeLimit) {
  GaussianMoments g(gamma, degree_limit);
  return g.moment(m);
}

/// y -> E_w[P(y + w)], w ~ N(0, sigma): exp(1/2 d^T sigma d) applied to P.
inline Polynomial gaussian_smooth(const Polynomial& p, const Matrix& sigma) {
  Polynomial out = p;
  Polynomial term = p;
  for (int n = 1; !term.is_zero(); ++n) {
    term = term.second_order(sigma) * (0.5 / n);
    out += term;
  }
  return out;
}

}  // namespace teleclone
