#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lvspread/model.hpp"

namespace lvs {

// Monotone front of D φ'' + c φ' + ρ φ(1-φ) = 0, φ(-∞)=1, φ(+∞)=0,
// sampled on a uniform grid over [-L, L].
struct KppProfile {
  double D = 1.0;
  double rho = 1.0;
  double speed = 2.0;
  std::vector<double> xi;
  std::vector<double> phi;
  double residual_norm = 0.0;
};

// Bistable traveling wave (Φ, Ψ) with speed c_uv connecting (1,0) at -∞
// to (0,1) at +∞, pinned by Φ(0) = 1/2.
struct FrontProfile {
  ModelParams params;
  double speed = 0.0;
  std::vector<double> xi;
  std::vector<double> phi;
  std::vector<double> psi;
  double residual_norm = 0.0;
  std::vector<double> residual_history;

  double spacing() const { return xi.size() > 1 ? xi[1] - xi[0] : 0.0; }
  double half_length() const { return xi.empty() ? 0.0 : xi.back(); }
};

struct FrontOptions {
  double half_length = 60.0;
  std::size_t n_points = 2401;
  double tol = 1e-10;
  int max_newton = 100;
  int max_doublings = 4;
  // Tails are sampled a quarter of the domain in from each clamp.
  double tail_tol = 1e-4;
};

struct BumpSolution {
  double c = 0.0;
  double b_eps = 0.0;
  double beta = 0.0;
  double a = 0.0;  // first zero of V̂
  std::vector<double> xi;
  std::vector<double> v_hat;
  std::vector<double> dv_hat;
};

KppProfile solve_kpp_front(double D, double rho, double c, double half_length = 40.0,
                           std::size_t n_points = 1601, double tol = 1e-10);

FrontProfile solve_bistable_front(const ModelParams& params, const FrontOptions& options = {});

// Max-norm of the discrete bistable residual of `profile` re-sampled (cubic
// interpolation) onto a grid `refine` times finer.
double refined_residual(const FrontProfile& profile, int refine);

// (c_ε, β_ε) = (2 sqrt(1 - bε), 1 - bε).
std::pair<double, double> modified_kpp_speed(double b, double eps);

// Integrates V'' + cV' + V(1 - V - b_eps) = 0, V(0)=beta, V'(0)=0 with RK4
// until the first zero crossing.
BumpSolution solve_bump(double c, double b_eps, double beta, double dt_ode = 1e-3);

void write_profile_csv(std::ostream& os, const FrontProfile& profile);
FrontProfile read_profile_csv(std::istream& is);
void write_kpp_csv(std::ostream& os, const KppProfile& profile);

}  // namespace lvs
