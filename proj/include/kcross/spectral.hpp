#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "kcross/equilibrium.hpp"
#include "kcross/model.hpp"

namespace kcross {

using Complex = std::complex<double>;

/// Eigen-decomposition of a real 2x2 matrix.
///
/// lambda1 is the "+" branch of (tr +- sqrt(disc)) / 2 and lambda2 the "-"
/// branch. Eigenvectors have unit Euclidean norm and their first nonzero
/// component is real and positive. For a defective matrix (repeated
/// eigenvalue, one eigendirection) v1 == v2.
struct EigenSystem2 {
  Complex lambda1;
  Complex lambda2;
  Eigen::Vector2cd v1;
  Eigen::Vector2cd v2;
  /// tr^2 - 4 det
  double discriminant;
  bool defective;
};

enum class Classification {
  stable_node,
  unstable_node,
  stable_spiral,
  unstable_spiral,
  stable_star,
  unstable_star,
  center,
  saddle,
  degenerate,
};

std::string_view to_string(Classification c);
bool is_stable(Classification c);

EigenSystem2 eigen_2x2(const Jacobian2& j);

/// 1e-9 * max(1, tr^2, |det|)
double default_classify_tol(const Jacobian2& j);

/// Trace/determinant decision table. Boundaries (det = 0, tr = 0,
/// disc = 0) are resolved with the band tol. A repeated-eigenvalue
/// equilibrium is labelled a star whether or not it is defective; see
/// EigenSystem2::defective.
Classification classify(const Jacobian2& j, double tol);
Classification classify(const Jacobian2& j);

struct EquilibriumReport {
  EquilibriumPoint point;
  Jacobian2 jac;
  EigenSystem2 eigen;
  Classification classification;
};

EquilibriumReport make_report(const ModelParams& params, const GovPolicy& policy,
                              const EquilibriumPoint& point);

/// One report per equilibrium, ascending in income. Propagates
/// DegeneratePolicyError.
std::vector<EquilibriumReport> analyze(const ModelParams& params,
                                       const GovPolicy& policy);

}  // namespace kcross
