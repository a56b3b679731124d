#pragma once

#include <optional>

namespace lvs {

// Coefficients of
//   u_t = d Δu + r u (1 - u - a v)
//   v_t =   Δv +   v (1 - v - b u)
struct ModelParams {
  double d = 1.0;
  double r = 1.0;
  double a = 2.0;
  double b = 2.0;

  bool strong_competition() const noexcept { return a > 1.0 && b > 1.0; }
};

struct Speeds {
  double c_u = 0.0;  // 2 sqrt(d r)
  double c_v = 0.0;  // 2
  std::optional<double> c_uv;
};

enum class CompetitionMode { any, strong };

// Checks positivity (and a, b > 1 in strong mode) and returns the two KPP
// speeds. c_uv is left unset.
Speeds validate(const ModelParams& params, CompetitionMode mode = CompetitionMode::any);

// Attaches a bistable speed after checking c_uv ∈ (-2, 2 sqrt(d r)).
Speeds with_bistable_speed(const ModelParams& params, double c_uv);

// Upper bound for the perturbation size δ used by the comparison
// constructions; six-term minimum, evaluated term by term.
double delta0(const ModelParams& params);

}  // namespace lvs
