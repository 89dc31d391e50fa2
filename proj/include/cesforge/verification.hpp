#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cesforge/factorization.hpp"
#include "cesforge/grid.hpp"

namespace cesforge {

enum class CheckStatus { pass, fail, skip };
const char* to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status;
  double value;      // measured deviation or location; NaN when not applicable
  double tolerance;  // NaN when not applicable
  std::string detail;
};

struct VerifyConfig {
  TransformKind kind = TransformKind::of(TransformTag::T3);
  double gamma = 1.0;
  int n = 1;
  std::optional<Grid> grid;  // defaults per geometry
  int states = 4;
  double eigen_tol = 1e-4;
  double potential_tol = 1e-8;
  double residual_tol = 1e-9;
  double identity_tol = 1e-10;
  double intertwining_tol = 1e-5;
  /// Pointwise comparisons skip the region below this radius.
  double radial_cutoff = 0.05;
};

/// Runs the full chain for one (kind, gamma, N): Schrodinger residual of phi,
/// nodelessness, closed form vs numeric Darboux, Riccati residual, the
/// product identity, spectral contract and wavefunction intertwining.
/// Construction errors are thrown (cesforge::Error).
std::vector<CheckResult> verify_case(const VerifyConfig& config);

bool all_passed(const std::vector<CheckResult>& results);

/// sup |(-phi''/2 + (V1 - eps) phi)| / (|phi''/2| + |V1 phi| + |eps phi|) on x.
double schrodinger_residual(const PhiFunction& phi, const RealFn& v1, double epsilon,
                            const std::vector<double>& x);

/// Expected partner levels from the reference levels per the kind's contract.
std::vector<double> expected_partner_levels(const TransformKind& kind,
                                            const std::vector<double>& reference, double epsilon,
                                            std::size_t count);

}  // namespace cesforge
