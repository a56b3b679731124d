#include "lvspread/front.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "banded.hpp"
#include "interp.hpp"
#include "lvspread/error.hpp"

namespace lvs {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> uniform_grid(double half_length, std::size_t n) {
  std::vector<double> xi(n);
  const double h = 2.0 * half_length / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xi[i] = -half_length + h * static_cast<double>(i);
  // Exact zero at the centre keeps the phase node symmetric.
  if (n % 2 == 1) xi[n / 2] = 0.0;
  return xi;
}

// ---------------------------------------------------------------- KPP front

void kpp_residual(const KppProfile& p, double h, std::vector<double>& f) {
  const std::size_t n = p.phi.size();
  f.assign(n, 0.0);
  f[0] = p.phi[0] - 1.0;
  f[n - 1] = p.phi[n - 1];
  const double ih2 = 1.0 / (h * h);
  const double i2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = p.phi[i];
    f[i] = p.D * (p.phi[i + 1] - 2.0 * u + p.phi[i - 1]) * ih2 + p.speed * (p.phi[i + 1] - p.phi[i - 1]) * i2h +
           p.rho * u * (1.0 - u);
  }
}

// --------------------------------------------------------- bistable system
//
// Unknowns are interleaved per node as (Φ_i, Ψ_i, c_i). The speed is
// replicated on every node and tied together by c_i = c_{i±1}, which keeps
// the Jacobian banded (kl = ku = 3) while the phase condition Φ_m = 1/2
// closes the system at the centre node m.

struct BistableState {
  std::vector<double> phi, psi, c;
};

constexpr int kBand = 3;

void bistable_residual(const ModelParams& p, const BistableState& s, double h, std::vector<double>& f) {
  const std::size_t n = s.phi.size();
  const std::size_t m = n / 2;
  f.assign(3 * n, 0.0);
  const double ih2 = 1.0 / (h * h);
  const double i2h = 0.5 / h;
  for (std::size_t i = 0; i < n; ++i) {
    double* row = &f[3 * i];
    if (i == 0) {
      row[0] = s.phi[0] - 1.0;
      row[1] = s.psi[0];
    } else if (i == n - 1) {
      row[0] = s.phi[i];
      row[1] = s.psi[i] - 1.0;
    } else {
      const double u = s.phi[i];
      const double v = s.psi[i];
      const double c = s.c[i];
      row[0] = p.d * (s.phi[i + 1] - 2.0 * u + s.phi[i - 1]) * ih2 + c * (s.phi[i + 1] - s.phi[i - 1]) * i2h +
               p.r * u * (1.0 - u - p.a * v);
      row[1] = (s.psi[i + 1] - 2.0 * v + s.psi[i - 1]) * ih2 + c * (s.psi[i + 1] - s.psi[i - 1]) * i2h +
               v * (1.0 - v - p.b * u);
    }
    if (i < m) {
      row[2] = s.c[i] - s.c[i + 1];
    } else if (i == m) {
      row[2] = s.phi[m] - 0.5;
    } else {
      row[2] = s.c[i] - s.c[i - 1];
    }
  }
}

void bistable_jacobian(const ModelParams& p, const BistableState& s, double h, detail::BandedMatrix& J) {
  const std::size_t n = s.phi.size();
  const std::size_t m = n / 2;
  J.clear();
  const double ih2 = 1.0 / (h * h);
  const double i2h = 0.5 / h;
  auto iphi = [](std::size_t i) { return 3 * i; };
  auto ipsi = [](std::size_t i) { return 3 * i + 1; };
  auto ic = [](std::size_t i) { return 3 * i + 2; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r0 = 3 * i, r1 = 3 * i + 1, r2 = 3 * i + 2;
    if (i == 0 || i == n - 1) {
      J.add(r0, iphi(i), 1.0);
      J.add(r1, ipsi(i), 1.0);
    } else {
      const double u = s.phi[i];
      const double v = s.psi[i];
      const double c = s.c[i];
      J.add(r0, iphi(i - 1), p.d * ih2 - c * i2h);
      J.add(r0, iphi(i + 1), p.d * ih2 + c * i2h);
      J.add(r0, iphi(i), -2.0 * p.d * ih2 + p.r * (1.0 - 2.0 * u - p.a * v));
      J.add(r0, ipsi(i), -p.r * p.a * u);
      J.add(r0, ic(i), (s.phi[i + 1] - s.phi[i - 1]) * i2h);

      J.add(r1, ipsi(i - 1), ih2 - c * i2h);
      J.add(r1, ipsi(i + 1), ih2 + c * i2h);
      J.add(r1, ipsi(i), -2.0 * ih2 + (1.0 - 2.0 * v - p.b * u));
      J.add(r1, iphi(i), -p.b * v);
      J.add(r1, ic(i), (s.psi[i + 1] - s.psi[i - 1]) * i2h);
    }
    if (i < m) {
      J.add(r2, ic(i), 1.0);
      J.add(r2, ic(i + 1), -1.0);
    } else if (i == m) {
      J.add(r2, iphi(m), 1.0);
    } else {
      J.add(r2, ic(i), 1.0);
      J.add(r2, ic(i - 1), -1.0);
    }
  }
}

struct NewtonOutcome {
  bool converged = false;
  std::vector<double> history;
};

NewtonOutcome bistable_newton(const ModelParams& p, BistableState& s, double h, double tol, int max_iter) {
  const std::size_t n = s.phi.size();
  detail::BandedMatrix J(3 * n, kBand, kBand);
  std::vector<double> f, step, f_trial;
  NewtonOutcome out;
  bistable_residual(p, s, h, f);
  double norm = max_abs(f);
  out.history.push_back(norm);
  for (int it = 0; it < max_iter && norm > tol; ++it) {
    bistable_jacobian(p, s, h, J);
    step = f;
    if (!J.solve_in_place(step)) break;
    double lambda = 1.0;
    bool accepted = false;
    BistableState trial = s;
    for (int k = 0; k < 30; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        trial.phi[i] = s.phi[i] - lambda * step[3 * i];
        trial.psi[i] = s.psi[i] - lambda * step[3 * i + 1];
        trial.c[i] = s.c[i] - lambda * step[3 * i + 2];
      }
      bistable_residual(p, trial, h, f_trial);
      const double trial_norm = max_abs(f_trial);
      if (std::isfinite(trial_norm) && trial_norm < (1.0 - 1e-4 * lambda) * norm) {
        accepted = true;
        s = std::move(trial);
        f.swap(f_trial);
        norm = trial_norm;
        break;
      }
      lambda *= 0.5;
    }
    out.history.push_back(norm);
    if (!accepted) break;
  }
  out.converged = norm <= tol;
  return out;
}

BistableState initial_guess(const std::vector<double>& xi, double c0) {
  BistableState s;
  const std::size_t n = xi.size();
  s.phi.resize(n);
  s.psi.resize(n);
  s.c.assign(n, c0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::tanh(xi[i]);
    s.phi[i] = 0.5 * (1.0 - t);
    s.psi[i] = 0.5 * (1.0 + t);
  }
  s.phi.front() = 1.0;
  s.psi.front() = 0.0;
  s.phi.back() = 0.0;
  s.psi.back() = 1.0;
  return s;
}

bool tails_settled(const BistableState& s, double tail_tol) {
  const std::size_t n = s.phi.size();
  const std::size_t q = (n - 1) / 8;  // ξ = ∓ 3L/4
  const std::size_t lo = q, hi = n - 1 - q;
  return std::abs(s.phi[lo] - 1.0) < tail_tol && std::abs(s.psi[lo]) < tail_tol && std::abs(s.phi[hi]) < tail_tol &&
         std::abs(s.psi[hi] - 1.0) < tail_tol;
}

void check_monotone(const std::vector<double>& f, bool decreasing, const char* name) {
  constexpr double kSlack = 1e-12;
  constexpr double kRange = 1e-9;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < -kRange || f[i] > 1.0 + kRange) {
      std::ostringstream os;
      os << "spurious solution: " << name << " leaves [0,1] at node " << i << " (" << f[i] << ")";
      throw NumericError(os.str());
    }
    if (i + 1 < f.size()) {
      const double diff = f[i + 1] - f[i];
      if ((decreasing && diff > kSlack) || (!decreasing && diff < -kSlack)) {
        std::ostringstream os;
        os << "spurious solution: " << name << " is not monotone at node " << i;
        throw NumericError(os.str());
      }
    }
  }
}

}  // namespace

// ------------------------------------------------------------------- KPP

KppProfile solve_kpp_front(double D, double rho, double c, double half_length, std::size_t n_points, double tol) {
  if (!(D > 0.0) || !(rho > 0.0)) throw ValidationError("D", "KPP coefficients must be positive");
  if (n_points < 200) throw ValidationError("n_points", "KPP front needs at least 200 grid points");
  if (!(half_length > 0.0)) throw ValidationError("half_length", "half_length must be positive");
  const double c_star = 2.0 * std::sqrt(D * rho);
  // Relative slack so that c = 2 sqrt(Dρ) computed elsewhere is accepted.
  if (c < c_star * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "speed " << c << " is below the minimal KPP speed " << c_star << "; no monotone front exists";
    throw DomainError(os.str());
  }
  KppProfile p;
  p.D = D;
  p.rho = rho;
  p.speed = c;
  p.xi = uniform_grid(half_length, n_points);
  const double h = p.xi[1] - p.xi[0];
  const double k = 0.5 * std::sqrt(rho / D);
  p.phi.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) p.phi[i] = 0.5 * (1.0 - std::tanh(k * p.xi[i]));
  p.phi.front() = 1.0;
  p.phi.back() = 0.0;

  detail::BandedMatrix J(n_points, 1, 1);
  std::vector<double> f, f_trial, step;
  kpp_residual(p, h, f);
  double norm = max_abs(f);
  std::vector<double> history{norm};
  const double ih2 = 1.0 / (h * h);
  const double i2h = 0.5 / h;
  for (int it = 0; it < 100 && norm > tol; ++it) {
    J.clear();
    J.add(0, 0, 1.0);
    J.add(n_points - 1, n_points - 1, 1.0);
    for (std::size_t i = 1; i + 1 < n_points; ++i) {
      J.add(i, i - 1, D * ih2 - c * i2h);
      J.add(i, i + 1, D * ih2 + c * i2h);
      J.add(i, i, -2.0 * D * ih2 + rho * (1.0 - 2.0 * p.phi[i]));
    }
    step = f;
    if (!J.solve_in_place(step)) break;
    double lambda = 1.0;
    bool accepted = false;
    KppProfile trial = p;
    for (int k2 = 0; k2 < 30; ++k2) {
      for (std::size_t i = 0; i < n_points; ++i) trial.phi[i] = p.phi[i] - lambda * step[i];
      kpp_residual(trial, h, f_trial);
      const double tn = max_abs(f_trial);
      if (std::isfinite(tn) && tn < (1.0 - 1e-4 * lambda) * norm) {
        p.phi.swap(trial.phi);
        f.swap(f_trial);
        norm = tn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    history.push_back(norm);
    if (!accepted) break;
  }
  if (!(norm <= tol)) {
    std::ostringstream os;
    os << "KPP front: Newton did not converge (last residual " << norm << ")";
    throw ConvergenceError(os.str(), history);
  }
  p.residual_norm = norm;
  check_monotone(p.phi, true, "phi");
  return p;
}

// -------------------------------------------------------------- bistable

FrontProfile solve_bistable_front(const ModelParams& params, const FrontOptions& opt) {
  validate(params, CompetitionMode::strong);
  if (opt.n_points < 201) throw ValidationError("n_points", "bistable front needs at least 201 grid points");
  if (!(opt.half_length > 0.0)) throw ValidationError("half_length", "half_length must be positive");
  if (!(opt.tol > 0.0)) throw ValidationError("tol", "tolerance must be positive");

  double half_length = opt.half_length;
  std::size_t n = opt.n_points | 1u;  // odd so that ξ = 0 is a node
  double c0 = 0.0;
  std::vector<double> all_history;
  for (int attempt = 0; attempt <= opt.max_doublings; ++attempt) {
    const std::vector<double> xi = uniform_grid(half_length, n);
    const double h = xi[1] - xi[0];
    BistableState s = initial_guess(xi, c0);
    NewtonOutcome outcome = bistable_newton(params, s, h, opt.tol, opt.max_newton);
    all_history.insert(all_history.end(), outcome.history.begin(), outcome.history.end());
    if (!outcome.converged) {
      std::ostringstream os;
      os << "bistable front: Newton did not converge on L=" << half_length << ", n=" << n << " (last residual "
         << outcome.history.back() << ")";
      throw ConvergenceError(os.str(), all_history);
    }
    const double c = s.c[n / 2];
    if (!tails_settled(s, opt.tail_tol) && attempt < opt.max_doublings) {
      half_length *= 2.0;
      n = 2 * n - 1;
      c0 = c;
      continue;
    }
    if (!tails_settled(s, opt.tail_tol)) {
      throw NumericError("bistable front: tails did not settle after the maximum number of domain doublings");
    }
    check_monotone(s.phi, true, "Phi");
    check_monotone(s.psi, false, "Psi");
    const Speeds sp = validate(params);
    if (!(c > -2.0 && c < sp.c_u)) {
      std::ostringstream os;
      os << "spurious solution: speed " << c << " outside (-2, " << sp.c_u << ")";
      throw NumericError(os.str());
    }
    FrontProfile out;
    out.params = params;
    out.speed = c;
    out.xi = xi;
    out.phi = std::move(s.phi);
    out.psi = std::move(s.psi);
    out.residual_norm = outcome.history.back();
    out.residual_history = std::move(all_history);
    return out;
  }
  throw NumericError("bistable front: unreachable");
}

double refined_residual(const FrontProfile& prof, int refine) {
  if (refine < 1) throw ValidationError("refine", "refinement factor must be >= 1");
  const std::size_t n = (prof.xi.size() - 1) * static_cast<std::size_t>(refine) + 1;
  BistableState s;
  const std::vector<double> xi = uniform_grid(prof.half_length(), n);
  s.phi.resize(n);
  s.psi.resize(n);
  s.c.assign(n, prof.speed);
  for (std::size_t i = 0; i < n; ++i) {
    s.phi[i] = detail::lagrange4(prof.phi, prof.xi.front(), prof.spacing(), xi[i]);
    s.psi[i] = detail::lagrange4(prof.psi, prof.xi.front(), prof.spacing(), xi[i]);
  }
  std::vector<double> f;
  bistable_residual(prof.params, s, xi[1] - xi[0], f);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max({m, std::abs(f[3 * i]), std::abs(f[3 * i + 1])});
  return m;
}

// ------------------------------------------------------- modified KPP

std::pair<double, double> modified_kpp_speed(double b, double eps) {
  if (!(b > 0.0)) throw ValidationError("b", "b must be positive");
  if (!(eps >= 0.0) || !(eps < 1.0 / b)) {
    std::ostringstream os;
    os << "modified KPP speed needs 0 <= eps < 1/b (eps=" << eps << ", b=" << b << ")";
    throw DomainError(os.str());
  }
  const double beta = 1.0 - b * eps;
  return {2.0 * std::sqrt(beta), beta};
}

// --------------------------------------------------------------- bump ODE

BumpSolution solve_bump(double c, double b_eps, double beta, double dt) {
  if (!(b_eps >= 0.0 && b_eps < 1.0)) throw DomainError("bump ODE needs 0 <= b_eps < 1");
  if (!(c >= 0.0 && c < 2.0 * std::sqrt(1.0 - b_eps))) throw DomainError("bump ODE needs 0 <= c < 2 sqrt(1 - b_eps)");
  if (!(beta > 0.0 && beta <= 1.0 - b_eps)) throw DomainError("bump ODE needs 0 < beta <= 1 - b_eps");
  if (!(dt > 0.0)) throw ValidationError("dt_ode", "ODE step must be positive");

  auto rhs = [&](double v, double w) { return std::pair{w, -c * w - v * (1.0 - v - b_eps)}; };
  auto rk4 = [&](double v, double w, double step) {
    const auto [k1v, k1w] = rhs(v, w);
    const auto [k2v, k2w] = rhs(v + 0.5 * step * k1v, w + 0.5 * step * k1w);
    const auto [k3v, k3w] = rhs(v + 0.5 * step * k2v, w + 0.5 * step * k2w);
    const auto [k4v, k4w] = rhs(v + step * k3v, w + step * k3w);
    return std::pair{v + step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
                     w + step / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)};
  };

  constexpr double kHorizon = 1e3;
  BumpSolution sol;
  sol.c = c;
  sol.b_eps = b_eps;
  sol.beta = beta;
  double xi = 0.0, v = beta, w = 0.0;
  sol.xi.push_back(xi);
  sol.v_hat.push_back(v);
  sol.dv_hat.push_back(w);
  while (xi < kHorizon) {
    const auto [vn, wn] = rk4(v, w, dt);
    if (vn <= 0.0) {
      // Bisection on the sub-step length for the crossing.
      double lo = 0.0, hi = dt;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (rk4(v, w, mid).first > 0.0) lo = mid; else hi = mid;
      }
      const double tau = 0.5 * (lo + hi);
      const auto [vc, wc] = rk4(v, w, tau);
      sol.a = xi + tau;
      sol.xi.push_back(sol.a);
      sol.v_hat.push_back(vc);
      sol.dv_hat.push_back(wc);
      return sol;
    }
    if (!(wn < 0.0)) {
      std::ostringstream os;
      os << "beta below beta(c): V' >= 0 at xi=" << xi + dt << " before any zero crossing";
      throw NumericError(os.str());
    }
    xi += dt;
    v = vn;
    w = wn;
    sol.xi.push_back(xi);
    sol.v_hat.push_back(v);
    sol.dv_hat.push_back(w);
  }
  throw NumericError("beta below beta(c): no zero crossing within the ODE horizon");
}

// -------------------------------------------------------------------- CSV

void write_profile_csv(std::ostream& os, const FrontProfile& p) {
  os << std::setprecision(17);
  os << "# speed = " << p.speed << "\n";
  os << "# residual_norm = " << p.residual_norm << "\n";
  os << "# d = " << p.params.d << "\n# r = " << p.params.r << "\n# a = " << p.params.a << "\n# b = " << p.params.b
     << "\n";
  os << "xi,phi,psi\n";
  for (std::size_t i = 0; i < p.xi.size(); ++i) os << p.xi[i] << ',' << p.phi[i] << ',' << p.psi[i] << '\n';
}

void write_kpp_csv(std::ostream& os, const KppProfile& p) {
  os << std::setprecision(17);
  os << "# speed = " << p.speed << "\n# residual_norm = " << p.residual_norm << "\n# D = " << p.D
     << "\n# rho = " << p.rho << "\n";
  os << "xi,phi\n";
  for (std::size_t i = 0; i < p.xi.size(); ++i) os << p.xi[i] << ',' << p.phi[i] << '\n';
}

FrontProfile read_profile_csv(std::istream& is) {
  FrontProfile p;
  std::map<std::string, double> meta;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
      meta[key] = std::stod(line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line.rfind("xi,phi,psi", 0) != 0) throw ConfigError("profile CSV: expected header 'xi,phi,psi'");
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ','))
      throw ConfigError("profile CSV: malformed row '" + line + "'");
    p.xi.push_back(std::stod(a));
    p.phi.push_back(std::stod(b));
    p.psi.push_back(std::stod(c));
  }
  for (const char* key : {"speed", "d", "r", "a", "b"}) {
    if (!meta.count(key)) throw ConfigError(std::string("profile CSV: missing metadata '") + key + "'");
  }
  if (p.xi.size() < 5) throw ConfigError("profile CSV: too few rows");
  p.speed = meta["speed"];
  p.residual_norm = meta.count("residual_norm") ? meta["residual_norm"] : 0.0;
  p.params = ModelParams{meta["d"], meta["r"], meta["a"], meta["b"]};
  return p;
}

}  // namespace lvs
