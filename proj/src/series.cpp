#include "cpf/series.hpp"

#include <cmath>
#include <stdexcept>

namespace cpf {

namespace {
constexpr double kCoeffDropTol = 1e-12;
}

double FourierSeries::coefficient(const MonomialKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0.0 : it->second;
}

void FourierSeries::add(const MonomialKey& k, double c) {
  for (std::size_t i = 0; i < k.factors.size(); ++i) {
    const auto m = k.factors[i].first;
    if (m < 1 || m > n_params_ || (i > 0 && k.factors[i - 1].first >= m)) {
      throw std::invalid_argument("malformed monomial key");
    }
  }
  auto [it, fresh] = terms_.emplace(k, 0.0);
  it->second += c;
  if (std::abs(it->second) < kCoeffDropTol) terms_.erase(it);
}

double FourierSeries::evaluate(const std::vector<double>& phi) const {
  if (phi.size() != n_params_) {
    throw std::invalid_argument("angle vector length does not match parameter count");
  }
  std::vector<double> c(n_params_), s(n_params_);
  for (std::uint32_t m = 0; m < n_params_; ++m) {
    c[m] = std::cos(phi[m]);
    s[m] = std::sin(phi[m]);
  }
  double total = 0.0;
  for (const auto& [key, coeff] : terms_) {
    double t = coeff;
    for (const auto& [m, f] : key.factors) {
      t *= (f == Trig::cos) ? c[m - 1] : s[m - 1];
    }
    total += t;
  }
  return total;
}

double FourierSeries::l2_norm_sq() const {
  double total = 0.0;
  for (const auto& [key, coeff] : terms_) {
    total += coeff * coeff * std::ldexp(1.0, -key.degree());
  }
  return total;
}

FourierSeries FourierSeries::truncated(int max_degree) const {
  if (max_degree < 0) throw std::invalid_argument("truncation level must be non-negative");
  FourierSeries out(n_params_);
  for (const auto& [key, coeff] : terms_) {
    if (key.degree() <= max_degree) out.terms_.emplace(key, coeff);
  }
  return out;
}

double FourierSeries::gradient_variance() const {
  double total = 0.0;
  for (const auto& [key, coeff] : terms_) {
    const int m = key.degree();
    total += m * coeff * coeff * std::ldexp(1.0, -m);
  }
  return total;
}

int FourierSeries::max_degree() const {
  int d = 0;
  for (const auto& [key, coeff] : terms_) d = std::max(d, key.degree());
  return d;
}

FourierSeries merge(const FourierSeries& a, const FourierSeries& b, double wa, double wb) {
  if (a.n_params() != b.n_params()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  FourierSeries out(a.n_params());
  for (const auto& [key, coeff] : a.terms()) out.add(key, wa * coeff);
  for (const auto& [key, coeff] : b.terms()) out.add(key, wb * coeff);
  return out;
}

LevelStats level_stats(const FourierSeries& s) {
  LevelStats st;
  st.l.assign(s.n_params() + 1, 0);
  st.nu.assign(s.n_params() + 1, 0.0);
  for (const auto& [key, coeff] : s.terms()) {
    const int m = key.degree();
    st.l[m] += 1;
    st.nu[m] += coeff * coeff * std::ldexp(1.0, -m);
  }
  for (double v : st.nu) st.norm_sq += v;
  return st;
}

}  // namespace cpf
