#pragma once

// Every numerical threshold used by the library, the oracle scans and the
// acceptance suite lives here.

namespace hypcenter::tol {

// geometry
inline constexpr double boundary_snap = 1e-9;
inline constexpr double pole_denominator = 1e-300;
inline constexpr double unit_vector = 1e-12;

// measures
inline constexpr double colocation = 1e-12;
inline constexpr double geodesic_membership = 1e-10;
inline constexpr double region_margin = 1e-6;

// weights
inline constexpr int monotonicity_grid = 10000;
inline constexpr double quadrature_abs = 1e-10;

// energy
inline constexpr double busemann_singularity = 1e-150;

// solver
inline constexpr double residual_default = 1e-10;
inline constexpr int max_iters_default = 500;
inline constexpr double armijo_c1 = 1e-4;
inline constexpr double armijo_backtrack = 0.5;
inline constexpr double newton_fd_step = 1e-5;
inline constexpr double divergence_gap = 2e-14;  // 1-|x|^2 at |x| = 1-1e-14
inline constexpr double auto_start_clip = 0.9;
inline constexpr double multistart_radius_s = 2.0;
inline constexpr double cluster_distance = 1e-6;
inline constexpr int probe_starts_default = 8;

// oracle
inline constexpr double zero_scan_extent_s = 6.0;
inline constexpr double zero_bisection = 1e-12;
inline constexpr double zero_flat = 1e-13;
inline constexpr double gradient_fd_step = 1e-6;
inline constexpr double gradient_rel = 1e-5;
inline constexpr double gradient_sample_radius = 0.95;
inline constexpr double convexity_step = 1e-3;
inline constexpr double convexity_floor = -1e-8;
inline constexpr double convexity_strict = 1e-8;
inline constexpr double convexity_linear = 1e-8;
inline constexpr double cocycle_abs = 1e-11;
inline constexpr double distance_origin_avoid = 0.05;
inline constexpr double distance_linear = 1e-9;
inline constexpr double closed_form_rel = 1e-4;
inline constexpr int grid2d_resolution = 200;

}  // namespace hypcenter::tol
