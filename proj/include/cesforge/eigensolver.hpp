#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cesforge/factorization.hpp"
#include "cesforge/grid.hpp"

namespace cesforge {

struct SolverOptions {
  /// Radial only: psi ~ r^s at the origin. Estimated from V near lo when unset.
  std::optional<double> origin_exponent;
  bool richardson = true;
  /// Largest accepted |E(extrapolated) - E(step/2)|.
  double richardson_tolerance = 1e-3;
};

/// Lowest n_states eigenpairs of H = -1/2 d^2/dx^2 + V on the grid.
///
/// Line: central differences with Dirichlet ends. Radial: psi = r^s u with
/// s the origin exponent, discretized as a symmetric finite-volume problem
/// whose first cell extends to r = 0; Dirichlet at hi. Both stay symmetric
/// tridiagonal. Eigenvalues are Richardson-extrapolated from step and step/2, vectors and
/// node counts come from the base step.
Spectrum solve_bound_states(const RealFn& v, const Grid& grid, int n_states,
                            const SolverOptions& options = {});

/// Raw discrete eigenvalues at the grid's own step (no extrapolation).
std::vector<double> discrete_eigenvalues(const RealFn& v, const Grid& grid, int n_states,
                                         const SolverOptions& options = {});

/// s = 1/2 + sqrt(1/4 + lambda), lambda the fitted centrifugal strength of V near lo.
double estimate_origin_exponent(const RealFn& v, const Grid& grid);

/// ||H psi - E psi|| / ||psi|| using a fourth-order stencil on interior points.
double hamiltonian_residual(const RealFn& v, const std::vector<double>& x,
                            const std::vector<double>& psi, double energy);

struct LevelCheck {
  int level;
  double expected;
  double observed;
  double deviation;
  bool pass;
};

struct SpectrumComparison {
  bool pass = false;
  std::vector<LevelCheck> levels;
  std::string message;
};

/// T1: S2 = S1 minus its lowest level; T2 and the line case: S2 = {eps} u S1;
/// T3/T4: S2 = S1. Never throws on mismatch.
SpectrumComparison compare_spectra(const Spectrum& s1, const Spectrum& s2,
                                   const TransformKind& kind, double epsilon, double tol);

}  // namespace cesforge
