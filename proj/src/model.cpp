#include "lvspread/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvspread/error.hpp"

namespace lvs {

namespace {

void require_positive(const char* name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "parameter '" << name << "' must be a positive finite number (got " << value << ")";
    throw ValidationError(name, os.str());
  }
}

}  // namespace

Speeds validate(const ModelParams& p, CompetitionMode mode) {
  require_positive("d", p.d);
  require_positive("r", p.r);
  require_positive("a", p.a);
  require_positive("b", p.b);
  if (mode == CompetitionMode::strong) {
    if (!(p.a > 1.0)) throw ValidationError("a", "strong competition requires a > 1");
    if (!(p.b > 1.0)) throw ValidationError("b", "strong competition requires b > 1");
  }
  Speeds s;
  s.c_u = 2.0 * std::sqrt(p.d * p.r);
  s.c_v = 2.0;
  return s;
}

Speeds with_bistable_speed(const ModelParams& p, double c_uv) {
  Speeds s = validate(p, CompetitionMode::strong);
  if (!(c_uv > -2.0 && c_uv < s.c_u)) {
    std::ostringstream os;
    os << "bistable speed " << c_uv << " outside (-2, " << s.c_u << ")";
    throw NumericError(os.str());
  }
  s.c_uv = c_uv;
  return s;
}

double delta0(const ModelParams& p) {
  validate(p);
  const double a = p.a;
  const double b = p.b;
  if (!(a > 1.0) || !(b > 1.0)) {
    throw DomainError("delta0 requires a > 1 and b > 1");
  }
  const double terms[6] = {
      1.0 / (2.0 * (3.0 + 4.0 * std::max(a, b))),
      (a - 1.0) / (2.0 * (1.0 + 2.0 * b) * a),
      (b - 1.0) / (2.0 * (4.0 * a + 1.0) * b),
      1.0 / 6.0,
      (a - 1.0) / (2.0 * (4.0 * b + 1.0) * a),
      (b - 1.0) / (2.0 * (1.0 + 2.0 * a) * b),
  };
  return *std::min_element(std::begin(terms), std::end(terms));
}

}  // namespace lvs
