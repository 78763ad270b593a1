#include "kcross/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace kcross {

namespace {

// Scale to unit length and rotate so the first nonzero entry is real > 0.
Eigen::Vector2cd normalized(Eigen::Vector2cd v) {
  v /= v.norm();
  const double cutoff = 1e-300;
  const Complex lead = std::abs(v(0)) > cutoff ? v(0) : v(1);
  v *= std::conj(lead) / std::abs(lead);
  if (std::abs(v(0)) > cutoff) v(0) = Complex(std::real(v(0)), 0.0);
  else v(1) = Complex(std::real(v(1)), 0.0);
  return v;
}

// Null vector of (J - lambda I) from its larger-norm row.
Eigen::Vector2cd null_vector(const Jacobian2& j, Complex lambda,
                             const Eigen::Vector2cd& fallback) {
  const Complex r00 = j(0, 0) - lambda;
  const Complex r01 = j(0, 1);
  const Complex r10 = j(1, 0);
  const Complex r11 = j(1, 1) - lambda;
  const double n0 = std::norm(r00) + std::norm(r01);
  const double n1 = std::norm(r10) + std::norm(r11);
  if (std::max(n0, n1) == 0.0) return fallback;
  Eigen::Vector2cd v;
  if (n0 >= n1) v << -r01, r00;
  else v << -r11, r10;
  return normalized(v);
}

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::stable_node: return "stable_node";
    case Classification::unstable_node: return "unstable_node";
    case Classification::stable_spiral: return "stable_spiral";
    case Classification::unstable_spiral: return "unstable_spiral";
    case Classification::stable_star: return "stable_star";
    case Classification::unstable_star: return "unstable_star";
    case Classification::center: return "center";
    case Classification::saddle: return "saddle";
    case Classification::degenerate: return "degenerate";
  }
  return "unknown";
}

bool is_stable(Classification c) {
  return c == Classification::stable_node || c == Classification::stable_spiral ||
         c == Classification::stable_star;
}

EigenSystem2 eigen_2x2(const Jacobian2& j) {
  const double tr = trace(j);
  const double dt = det(j);
  // (a - d)^2 + 4 b c avoids the cancellation in tr^2 - 4 det.
  const double diff = j(0, 0) - j(1, 1);
  const double disc = diff * diff + 4.0 * j(0, 1) * j(1, 0);

  EigenSystem2 out{};
  out.discriminant = disc;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Larger-magnitude root directly, the other through the product det.
    const double q = 0.5 * (tr + std::copysign(s, tr));
    if (q == 0.0) {
      out.lambda1 = out.lambda2 = 0.0;
    } else if (tr >= 0.0) {
      out.lambda1 = q;
      out.lambda2 = dt / q;
    } else {
      out.lambda2 = q;
      out.lambda1 = dt / q;
    }
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    out.lambda1 = Complex(0.5 * tr, im);
    out.lambda2 = Complex(0.5 * tr, -im);
  }

  const Eigen::Vector2cd e1(1.0, 0.0);
  const Eigen::Vector2cd e2(0.0, 1.0);
  out.v1 = null_vector(j, out.lambda1, e1);
  out.v2 = null_vector(j, out.lambda2, e2);

  // Repeated eigenvalue: a scalar matrix keeps both axes, anything else has
  // a single eigendirection.
  const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
  const bool repeated = std::abs(out.lambda1 - out.lambda2) <= 1e-12 * scale;
  if (repeated) {
    const bool scalar = std::abs(j(0, 1)) <= 1e-14 * scale &&
                        std::abs(j(1, 0)) <= 1e-14 * scale &&
                        std::abs(diff) <= 1e-14 * scale;
    if (scalar) {
      out.v1 = e1;
      out.v2 = e2;
    } else {
      out.v2 = out.v1;
      out.defective = true;
    }
  }
  return out;
}

double default_classify_tol(const Jacobian2& j) {
  const double tr = trace(j);
  return 1e-9 * std::max({1.0, tr * tr, std::abs(det(j))});
}

Classification classify(const Jacobian2& j, double tol) {
  const double tr = trace(j);
  const double dt = det(j);
  const double diff = j(0, 0) - j(1, 1);
  const double disc = diff * diff + 4.0 * j(0, 1) * j(1, 0);

  if (dt < -tol) return Classification::saddle;
  if (dt <= tol) return Classification::degenerate;
  if (std::abs(tr) <= tol) return Classification::center;
  const bool stable = tr < 0.0;
  if (disc > tol) return stable ? Classification::stable_node : Classification::unstable_node;
  if (disc < -tol)
    return stable ? Classification::stable_spiral : Classification::unstable_spiral;
  return stable ? Classification::stable_star : Classification::unstable_star;
}

Classification classify(const Jacobian2& j) { return classify(j, default_classify_tol(j)); }

EquilibriumReport make_report(const ModelParams& params, const GovPolicy& policy,
                              const EquilibriumPoint& point) {
  const Jacobian2 j = jacobian(params, policy, point.state);
  return {point, j, eigen_2x2(j), classify(j)};
}

std::vector<EquilibriumReport> analyze(const ModelParams& params,
                                       const GovPolicy& policy) {
  std::vector<EquilibriumReport> reports;
  for (const auto& p : equilibria(params, policy))
    reports.push_back(make_report(params, policy, p));
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return a.point.state.x() < b.point.state.x();
  });
  return reports;
}

}  // namespace kcross
