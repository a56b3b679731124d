#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lvspread/geometry.hpp"
#include "lvspread/model.hpp"

namespace lvs {

enum class GridKind { line, radial, plane };

// line:   nodes x_i = -L + i h, i < n
// radial: nodes r_i = i h on [0, L], spatial dimension N >= 2 (N = 1 allowed
//         for cross-checks against the line scheme)
// plane:  n x n nodes on [-L, L]^2, index j*n + i with x = x_i, y = x_j
struct Grid {
  GridKind kind = GridKind::line;
  double h = 0.1;
  double L = 10.0;
  int N = 1;
  std::size_t n = 0;

  static Grid line(double L, double h);
  static Grid radial(int N, double L, double h);
  static Grid plane(double L, double h);

  std::size_t size() const { return kind == GridKind::plane ? n * n : n; }
  double coord(std::size_t i) const { return kind == GridKind::radial ? h * static_cast<double>(i) : -L + h * static_cast<double>(i); }
  Point point(std::size_t k) const;
  // |x| of node k.
  double radius(std::size_t k) const;
  // Distance of node k to the outer boundary.
  double boundary_distance(std::size_t k) const;
  int stencil_dim() const;
};

struct GridState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct ScenarioSpec {
  enum class Kind { C1, C2 };
  Kind kind = Kind::C1;
  IndicatorSet U{1};
  IndicatorSet V{1};  // unused for C2
};

GridState init_state(const Grid& grid, const ScenarioSpec& scenario);

// 0.9 h^2 / (2 dim max(d,1)); dim = N for the radial grid.
double diffusion_dt_bound(const Grid& grid, const ModelParams& params);
// Largest dt that also keeps the reaction part monotone (what run() uses).
double default_dt(const Grid& grid, const ModelParams& params);

// One explicit Euler step. threads > 1 splits the node range into bands.
GridState step(const Grid& grid, const GridState& state, const ModelParams& params, double dt, int threads = 1);

struct RunOptions {
  double dt = 0.0;  // 0: default_dt
  int threads = 1;
  bool monitor = true;
  double warn_level = 1e-3;
};

struct Trajectory {
  Grid grid;
  ModelParams params;
  double dt = 0.0;
  std::vector<GridState> snapshots;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

Trajectory run(const Grid& grid, const ScenarioSpec& scenario, const ModelParams& params, double T_final,
               double snapshot_every, const RunOptions& options = {});
Trajectory run_from(const Grid& grid, GridState initial, const ModelParams& params, double T_final,
                    double snapshot_every, const RunOptions& options = {});

// Writes manifest.txt plus one CSV per snapshot into dir.
void write_trajectory(const std::string& dir, const Trajectory& traj, const std::string& extra_manifest = {});
Trajectory read_trajectory(const std::string& dir);

struct RadiusSearchResult {
  double rho_star = 0.0;
  double rho_fail = 0.0;     // largest tested failing radius (0 if none tested)
  double u_center_fail = 0.0;
  double u_center_success = 0.0;
  int runs = 0;
};

// Smallest ρ (to within the grid spacing) such that C2 data with U = B(0,ρ)
// gives u(T_probe, 0) >= success_level. Radial grid only.
RadiusSearchResult invasion_radius_search(const ModelParams& params, const Grid& grid, double rho_max, int n_bisect,
                                          double T_probe, double success_level = 0.9, int threads = 1);

}  // namespace lvs
