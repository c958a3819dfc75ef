#include "padhyp/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "padhyp/error.hpp"

namespace padhyp {

int growth_weight(Flavor flavor, int l, int k) { return (flavor == Flavor::A1 ? l : std::abs(l)) + k; }

double GrowthCertificate::C() const { return std::pow(static_cast<double>(p), log_c); }

double GrowthCertificate::eta() const { return std::pow(static_cast<double>(p), log_eta); }

GrowthCertificate GrowthCertificate::from_values(unsigned long p, double c, double eta, Flavor flavor,
                                                 Window range) {
  if (!(c > 0.0)) fail(ErrorKind::InvalidParameter, "growth constant C must be positive");
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::InvalidParameter, "growth rate eta must lie in (0, 1)");
  return from_logs(p, log_p(c, p), log_p(eta, p), flavor, range);
}

GrowthCertificate GrowthCertificate::from_logs(unsigned long p, double log_c, double log_eta, Flavor flavor,
                                               Window range) {
  if (!std::isfinite(log_c)) fail(ErrorKind::InvalidParameter, "growth constant must be finite and positive");
  if (!(log_eta < 0.0) || !std::isfinite(log_eta)) fail(ErrorKind::InvalidParameter, "growth rate must be below 1");
  return GrowthCertificate{p, log_c, log_eta, flavor, range};
}

bool GrowthCertificate::holds_for(const WeylOperator& op) const {
  if (op.field().p() != p) return false;
  for (const auto& [key, a] : op.terms()) {
    if (flavor == Flavor::A1 && key.first < 0) return false;
    const double lhs = a.log_norm();
    const double rhs = log_c + log_eta * growth_weight(flavor, key.first, key.second);
    if (!(lhs < rhs)) return false;
  }
  return true;
}

GrowthCertificate fit_growth(const WeylOperator& op, Flavor flavor) {
  if (op.is_zero()) fail(ErrorKind::PreconditionViolated, "growth fit of the zero operator");
  const unsigned long p = op.field().p();
  std::map<int, double> env;
  for (const auto& [key, a] : op.terms()) {
    if (flavor == Flavor::A1 && key.first < 0) fail(ErrorKind::FlavorMismatch, "negative x-power under A1 weights");
    if (a.zero_status() != ZeroStatus::NonZero) continue;
    const int w = growth_weight(flavor, key.first, key.second);
    auto [it, inserted] = env.try_emplace(w, a.log_norm());
    if (!inserted) it->second = std::max(it->second, a.log_norm());
  }
  double sigma = 0.0;
  if (env.size() >= 2) {
    // Upper concave hull, left to right.
    std::vector<std::pair<double, double>> hull;
    for (const auto& [w, v] : env) {
      const std::pair<double, double> pt{static_cast<double>(w), v};
      while (hull.size() >= 2) {
        const auto& a = hull[hull.size() - 2];
        const auto& b = hull.back();
        const double cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
        if (cross >= 0.0) {
          hull.pop_back();
        } else {
          break;
        }
      }
      hull.push_back(pt);
    }
    auto hull_at = [&](double w) {
      for (std::size_t i = 1; i < hull.size(); ++i) {
        if (w <= hull[i].first) {
          const auto& a = hull[i - 1];
          const auto& b = hull[i];
          return a.second + (b.second - a.second) * (w - a.first) / (b.first - a.first);
        }
      }
      return hull.back().second;
    };
    const double w_lo = env.begin()->first;
    const double w_hi = env.rbegin()->first;
    const double w_mid = 0.5 * (w_lo + w_hi);
    sigma = (hull_at(w_hi) - hull_at(w_mid)) / (w_hi - w_mid);
  }
  if (sigma > 1e-12) {
    fail(ErrorKind::NotOverconvergentOnWindow,
         "coefficient norms grow at log-rate " + std::to_string(sigma) + " per weight on the window");
  }
  const double log_eta = sigma < -1e-12 ? sigma : log_p(0.5, p);
  double worst = -INFINITY;
  for (const auto& [key, a] : op.terms()) {
    worst = std::max(worst, a.log_norm() - log_eta * growth_weight(flavor, key.first, key.second));
  }
  if (!std::isfinite(worst)) worst = 0.0;
  GrowthCertificate cert = GrowthCertificate::from_logs(p, worst + log_p(2.0, p), log_eta, flavor, op.window());
  if (!cert.holds_for(op)) {
    fail(ErrorKind::NotOverconvergentOnWindow, "fitted certificate does not hold on every stored term");
  }
  return cert;
}

}  // namespace padhyp
