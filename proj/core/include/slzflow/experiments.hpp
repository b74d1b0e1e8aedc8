#pragma once

#include "slzflow/report.hpp"

namespace slz {

/// Per-point curvature table with the scalar-sectional identity residual.
ResultRecord run_curvature_grid(const ExperimentConfig& config);

/// Trajectory integration with per-step invariants and drift summary.
ResultRecord run_geodesic(const ExperimentConfig& config);

/// Randomized bracket-residual, centrality, involution, rank, flat-limit and
/// curvature-oracle suites with a max-residual summary and pass/fail per
/// property.
ResultRecord run_audit(const ExperimentConfig& config);

/// Green function along an r grid: quadrature and closed-form paths, the
/// intrinsic potentials, the Laplace-Beltrami residual and the path
/// agreement delta.
ResultRecord run_potential_scan(const ExperimentConfig& config);

ResultRecord run_experiment(const ExperimentConfig& config);

} // namespace slz
