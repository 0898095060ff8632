#include "wirs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wirs/common.hpp"

namespace wirs {

namespace {

constexpr double kGammaEps = 1e-14;
constexpr int kMaxIter = 2000;

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kGammaEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kGammaEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw BadInputError("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_squared_sf(double stat, std::size_t dof) {
  if (dof == 0) throw BadInputError("chi_squared_sf: dof must be positive");
  return gamma_q(static_cast<double>(dof) / 2.0, stat / 2.0);
}

GofReport chi_squared_gof(std::span<const std::uint64_t> counts,
                          std::span<const double> expected_probs) {
  if (counts.size() != expected_probs.size() || counts.empty()) {
    throw BadInputError("chi_squared_gof: size mismatch");
  }
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) throw BadInputError("chi_squared_gof: no draws");
  double prob_sum = 0.0;
  for (double p : expected_probs) {
    if (!(p > 0.0)) throw BadInputError("chi_squared_gof: expected probs must be positive");
    prob_sum += p;
  }

  GofReport report;
  report.n_draws = n;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    report.tv_distance +=
        std::abs(static_cast<double>(counts[i]) / nd - expected_probs[i] / prob_sum);
  }
  report.tv_distance /= 2.0;

  // Pool ascending by expected count until every bin expects >= 5.
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return expected_probs[a] < expected_probs[b]; });

  std::vector<double> exp_bins;
  std::vector<double> obs_bins;
  double pool_exp = 0.0, pool_obs = 0.0;
  for (std::size_t idx : order) {
    pool_exp += nd * expected_probs[idx] / prob_sum;
    pool_obs += static_cast<double>(counts[idx]);
    if (pool_exp >= 5.0) {
      exp_bins.push_back(pool_exp);
      obs_bins.push_back(pool_obs);
      pool_exp = pool_obs = 0.0;
    }
  }
  if (pool_exp > 0.0 || pool_obs > 0.0) {
    if (!exp_bins.empty()) {  // fold the remainder into the last bin
      exp_bins.back() += pool_exp;
      obs_bins.back() += pool_obs;
    } else {
      exp_bins.push_back(pool_exp);
      obs_bins.push_back(pool_obs);
    }
  }
  if (exp_bins.size() < 2) throw DegenerateBinsError();

  double stat = 0.0;
  for (std::size_t i = 0; i < exp_bins.size(); ++i) {
    const double d = obs_bins[i] - exp_bins[i];
    stat += d * d / exp_bins[i];
  }
  report.statistic = stat;
  report.dof = exp_bins.size() - 1;
  report.p_value = chi_squared_sf(stat, report.dof);
  return report;
}

ExponentFit exponent_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw BadInputError("exponent_fit: need >= 3 (x, y) pairs");
  }
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw BadInputError("exponent_fit: pairs must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw BadInputError("exponent_fit: x values are all equal");

  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw BadInputError("tv_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2.0;
}

}  // namespace wirs
