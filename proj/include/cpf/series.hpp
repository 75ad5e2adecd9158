#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cpf/bitvec.hpp"

namespace cpf {

enum class Trig : std::uint8_t { cos = 0, sin = 1 };

/// Multivariate trigonometric monomial: a product of cos/sin factors over a
/// subset of the parameters. Parameter indices are 1-based and strictly
/// increasing; the empty key is the constant monomial. The degree (Fourier
/// level) of the monomial is the total number of factors.
struct MonomialKey {
  std::vector<std::pair<std::uint32_t, Trig>> factors;

  int degree() const { return static_cast<int>(factors.size()); }

  friend bool operator==(const MonomialKey& a, const MonomialKey& b) {
    return a.factors == b.factors;
  }
  friend bool operator<(const MonomialKey& a, const MonomialKey& b) {
    return a.factors < b.factors;
  }
};

/// Fourier series of a loss function: a sparse map from trigonometric
/// monomials to real coefficients, with canonical (sorted-key) term order.
class FourierSeries {
 public:
  explicit FourierSeries(std::uint32_t n_params) : n_params_(n_params) {}

  std::uint32_t n_params() const { return n_params_; }
  const std::map<MonomialKey, double>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double coefficient(const MonomialKey& k) const;

  /// Accumulates c into the coefficient of k; coefficients that cancel below
  /// 1e-12 are removed.
  void add(const MonomialKey& k, double c);

  double evaluate(const std::vector<double>& phi) const;
  double l2_norm_sq() const;
  FourierSeries truncated(int max_degree) const;

  /// <|grad F|^2> under the uniform angle measure: every degree-m monomial
  /// contributes m * coeff^2 * 2^{-m}.
  double gradient_variance() const;

  int max_degree() const;

  friend bool operator==(const FourierSeries& a, const FourierSeries& b) {
    return a.n_params_ == b.n_params_ && a.terms_ == b.terms_;
  }

 private:
  std::uint32_t n_params_;
  std::map<MonomialKey, double> terms_;
};

/// wa * a + wb * b with cancellation below 1e-12 removed.
FourierSeries merge(const FourierSeries& a, const FourierSeries& b, double wa, double wb);

struct LevelStats {
  std::vector<std::uint64_t> l;  // non-zero terms per level, size M+1
  std::vector<double> nu;        // norm per level, size M+1
  double norm_sq = 0.0;
};

LevelStats level_stats(const FourierSeries& s);

}  // namespace cpf
