#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace lvs {

// Coordinates past the set dimension are ignored (kept at zero).
using Point = std::array<double, 3>;

struct Primitive {
  enum class Kind { ball, half_space, cone, box, shell };
  Kind kind = Kind::ball;
  // ball/shell: p = centre; half_space: p = unit normal; cone: p = apex,
  // q = unit axis; box: p = min corner, q = max corner.
  Point p{};
  Point q{};
  // ball: s = radius; half_space: s = offset (n·x <= s); cone: s = half
  // angle; shell: s = inner radius, t = outer radius.
  double s = 0.0;
  double t = 0.0;
};

// Finite union of primitives in dimension 1..3 with exact distance.
class IndicatorSet {
 public:
  explicit IndicatorSet(int dim = 2);

  static IndicatorSet empty(int dim) { return IndicatorSet(dim); }

  IndicatorSet& add_ball(const Point& centre, double radius);
  IndicatorSet& add_half_space(const Point& normal, double offset);
  IndicatorSet& add_cone(const Point& apex, const Point& axis, double half_angle);
  IndicatorSet& add_box(const Point& lo, const Point& hi);
  IndicatorSet& add_shell(const Point& centre, double r_in, double r_out);

  int dim() const noexcept { return dim_; }
  bool is_empty() const noexcept { return prims_.empty(); }
  bool is_bounded() const;
  const std::vector<Primitive>& primitives() const noexcept { return prims_; }

  bool contains(const Point& x) const;
  // Euclidean distance to the closure; +inf for the empty set.
  double distance(const Point& x) const;
  // Lower bound for dist(x, complement): max over the primitives that hold x.
  // Exact for a single primitive. 0 outside.
  double depth(const Point& x) const;

  // U_ρ. Each primitive is eroded exactly; for unions the result is the
  // union of eroded pieces, which is contained in the true U_ρ.
  IndicatorSet eroded(double rho) const;

 private:
  int dim_;
  std::vector<Primitive> prims_;
};

struct ClassifyOptions {
  std::size_t m = 512;   // directions (2D: uniform angles, 3D: Fibonacci sphere)
  double tau0 = 1.0;
  int ladder = 17;       // τ_k = 2^k τ0, k = 0..ladder-1
  double ratio_threshold = 2e-3;
};

struct DirectionClassification {
  int dim = 2;
  IndicatorSet set;
  ClassifyOptions options;
  std::vector<Point> directions;
  std::vector<double> ratio;
  std::vector<bool> unbounded;

  // Same estimator as the samples, evaluated at an arbitrary direction.
  double ratio_at(const Point& e) const;
  bool is_unbounded(const Point& e) const;
  std::size_t n_unbounded() const;
};

std::vector<Point> sample_directions(int dim, std::size_t m);

// min over the top half of the τ-ladder of dist(τξ, U)/τ.
double liminf_ratio(const IndicatorSet& set, const Point& xi, const ClassifyOptions& options);

DirectionClassification classify_directions(const IndicatorSet& set, const ClassifyOptions& options = {});

// w(e): +inf on the unbounded directions, c_uv when no unbounded ξ has ξ·e >= 0.
double speed_function(const DirectionClassification& cls, double c_uv, const Point& e);

// inf over unbounded ξ with ξ·e >= 0 of sqrt(1 - (ξ·e)^2), 1 if there is none.
double ray_distance_rate(const DirectionClassification& cls, const Point& e);

struct EnvelopeMembership {
  bool route_a = false;  // |x| < w(x/|x|)
  bool route_b = false;  // dist(x, R+ U(U)) < c_uv
};

EnvelopeMembership envelope_membership(const DirectionClassification& cls, double c_uv, const Point& x);

// Fraction of the direction sample covered by B(U) ∪ U(U_ρ).
double abcon_coverage(const IndicatorSet& set, double rho, const ClassifyOptions& options = {});

// angle/direction, label, ratio, w(e)
void write_classification_csv(std::ostream& os, const DirectionClassification& cls, double c_uv);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace lvs
