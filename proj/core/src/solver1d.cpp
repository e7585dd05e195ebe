#include "multifluid/solver1d.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "multifluid/error.hpp"

namespace multifluid {

namespace {

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};

std::vector<double> or_zeros(const std::vector<double>& v, std::size_t n) {
  return v.empty() ? std::vector<double>(n, 0.0) : v;
}

void check_size(const std::vector<double>& v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw InvalidInput(std::string(name) + ": expected " + std::to_string(n) + " values, got " +
                       std::to_string(v.size()));
  }
}

double periodic_distance(double x, double center, double length) {
  double d = std::fmod(x - center, length);
  if (d > 0.5 * length) d -= length;
  if (d < -0.5 * length) d += length;
  return d;
}

}  // namespace

Grid1D::Grid1D(std::size_t n_cells, double length) : n_cells_(n_cells), length_(length) {
  if (n_cells < kMinCells) {
    throw InvalidInput("grid needs at least " + std::to_string(kMinCells) + " cells");
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidInput("grid length must be positive");
}

double ForceSpec::value(std::size_t constituent, double x, double length) const {
  switch (waveform) {
    case ForceWaveform::zero:
      return 0.0;
    case ForceWaveform::constant:
      return amplitude[constituent];
    case ForceWaveform::sinusoid:
      return amplitude[constituent] *
             std::sin(2.0 * std::numbers::pi * static_cast<double>(wavenumber) * x / length);
  }
  return 0.0;
}

Solver1D::Solver1D(SolverConfig config, Grid1D grid)
    : config_(std::move(config)), grid_(grid) {
  validate_config();
}

void Solver1D::validate_config() const {
  const std::size_t n = n_constituents();
  validate_alpha(config_.alpha, n);

  const auto& p = config_.pressure;
  if (!(p.coefficient >= 0.0) || !std::isfinite(p.coefficient)) {
    throw InvalidInput("pressure coefficient must be non-negative");
  }
  if (p.gamma && !(*p.gamma > 1.0)) throw InvalidInput("frozen adiabatic index must exceed 1");

  const auto& visc = config_.viscosity;
  switch (visc.kind) {
    case ViscosityKind::none:
      break;
    case ViscosityKind::constant: {
      if (!visc.constant) throw InvalidInput("constant viscosity selected without matrices");
      if (visc.constant->size() != n) {
        throw InvalidInput("viscosity matrices must be " + std::to_string(n) + "x" +
                           std::to_string(n));
      }
      const PositivityVerdict verdict = bulk_constraint_check(*visc.constant);
      if (!verdict.pass()) throw InvalidInput("viscosity positivity check: " + verdict.describe());
      break;
    }
    case ViscosityKind::concentration:
      if (!visc.model) throw InvalidInput("concentration-dependent viscosity selected without model");
      visc.model->validate();
      if (visc.model->size() != n) {
        throw InvalidInput("viscosity model must have " + std::to_string(n) + " constituents");
      }
      break;
  }

  const auto& f = config_.forces;
  if (f.waveform != ForceWaveform::zero) {
    check_size(f.amplitude, n, "force amplitude");
    for (double a : f.amplitude) {
      if (!std::isfinite(a)) throw InvalidInput("force amplitudes must be finite");
    }
    if (f.waveform == ForceWaveform::sinusoid && f.wavenumber < 1) {
      throw InvalidInput("force wavenumber must be at least 1");
    }
  }
}

FieldState Solver1D::init_state(const InitialProfile& profile) {
  FieldState state = build_initial_fields(profile);
  adopt_state(state);
  return state;
}

FieldState Solver1D::build_initial_fields(const InitialProfile& profile) const {
  const std::size_t n = n_constituents();
  check_size(profile.rho, n, "initial rho");
  const auto rho_amp = or_zeros(profile.rho_amplitude, n);
  const auto u_base = or_zeros(profile.u, n);
  const auto u_amp = or_zeros(profile.u_amplitude, n);
  check_size(rho_amp, n, "initial rho amplitude");
  check_size(u_base, n, "initial u");
  check_size(u_amp, n, "initial u amplitude");
  if (profile.kind == ProfileKind::sine && profile.wavenumber < 1) {
    throw InvalidInput("initial wavenumber must be at least 1");
  }
  if (profile.kind == ProfileKind::gaussian && !(profile.width > 0.0)) {
    throw InvalidInput("gaussian width must be positive");
  }

  const double length = grid_.length();
  auto shape = [&](double x) {
    switch (profile.kind) {
      case ProfileKind::sine:
        return std::sin(2.0 * std::numbers::pi * static_cast<double>(profile.wavenumber) * x /
                        length);
      case ProfileKind::gaussian: {
        const double d = periodic_distance(x, profile.center, length);
        return std::exp(-d * d / (2.0 * profile.width * profile.width));
      }
      default:
        return 0.0;
    }
  };

  FieldState state;
  state.time = 0.0;
  state.grid = grid_;
  state.rho = ConstituentField(n, grid_.n_cells());
  state.momentum = ConstituentField(n, grid_.n_cells());

  if (profile.kind == ProfileKind::random) {
    std::mt19937_64 rng(profile.seed);
    auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
    for (std::size_t c = 0; c < grid_.n_cells(); ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double rho = profile.rho[i] * (1.0 + rho_amp[i] * uniform());
        const double u = u_base[i] + u_amp[i] * uniform();
        state.rho(i, c) = rho;
        state.momentum(i, c) = rho * u;
      }
    }
  } else {
    const double dx = grid_.dx();
    for (std::size_t c = 0; c < grid_.n_cells(); ++c) {
      const double xc = grid_.center(c);
      for (std::size_t i = 0; i < n; ++i) {
        double rho_avg = 0.0;
        double mom_avg = 0.0;
        for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
          const double s = shape(xc + 0.5 * dx * kGaussNodes[q]);
          const double rho = profile.rho[i] + rho_amp[i] * s;
          const double u = u_base[i] + u_amp[i] * s;
          rho_avg += 0.5 * kGaussWeights[q] * rho;
          mom_avg += 0.5 * kGaussWeights[q] * rho * u;
        }
        state.rho(i, c) = rho_avg;
        state.momentum(i, c) = mom_avg;
      }
    }
  }
  return state;
}

void Solver1D::adopt_state(const FieldState& state) {
  const std::size_t n = n_constituents();
  if (state.n_constituents() != n || state.momentum.n_constituents() != n) {
    throw InvalidInput("state has the wrong number of constituents");
  }
  if (state.n_cells() != grid_.n_cells() || state.momentum.n_cells() != grid_.n_cells() ||
      !(state.grid == grid_)) {
    throw InvalidInput("state grid does not match solver grid");
  }
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = state.rho(i, c);
      if (!(rho >= kDensityFloor) || !std::isfinite(state.momentum(i, c))) {
        std::ostringstream os;
        os.precision(17);
        os << "initial density of constituent " << i + 1 << " in cell " << c << " is " << rho
           << " (must be at least " << kDensityFloor << ")";
        throw InvalidInput(os.str());
      }
      total += rho;
    }
    if (!(total > 0.0)) throw InvalidInput("total density must be positive in every cell");
  }

  auto& p = config_.pressure;
  if (p.gamma_mode == GammaMode::frozen && !p.gamma) {
    std::vector<double> mass(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (double rho : state.rho.constituent(i)) mass[i] += rho;
    }
    p.gamma = adiabatic_index(concentrations(DensityVector(mass)), config_.mixture);
  }
  check_viscosity_at(state);
}

void Solver1D::check_viscosity_at(const FieldState& state) const {
  if (config_.viscosity.kind != ViscosityKind::concentration) return;
  const std::size_t n = n_constituents();
  std::vector<double> rho(n);
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    for (std::size_t i = 0; i < n; ++i) rho[i] = state.rho(i, c);
    const ConcentrationVector xi = concentrations(DensityVector(rho));
    for (std::size_t i = 0; i < n; ++i) {
      if (xi[i] < ViscositySetup::kMinConcentration) {
        std::ostringstream os;
        os << "concentration-dependent viscosity needs every concentration >= "
           << ViscositySetup::kMinConcentration << "; constituent " << i + 1 << " in cell " << c
           << " has " << xi[i] << " (use constant viscosity matrices instead)";
        throw InvalidInput(os.str());
      }
    }
    const PositivityVerdict verdict = bulk_constraint_check(evaluate_model(*config_.viscosity.model, xi));
    if (!verdict.pass()) {
      throw InvalidInput("viscosity positivity check in cell " + std::to_string(c) + ": " +
                         verdict.describe());
    }
  }
}

double Solver1D::cell_pressure(std::span<const double> rho_cell, double gamma) const {
  const auto& p = config_.pressure;
  if (p.coefficient == 0.0) return 0.0;
  DensityVector rho(std::vector<double>(rho_cell.begin(), rho_cell.end()));
  if (p.law == PressureLaw::simple) return pressure_simple(rho.total(), p.coefficient, gamma);
  return pressure_composite(rho, p.coefficient, config_.mixture, {GammaMode::frozen, gamma});
}

Primitives Solver1D::primitives(const FieldState& state) const {
  const std::size_t n = n_constituents();
  const std::size_t cells = state.n_cells();
  const auto& closure = config_.pressure;
  if (closure.gamma_mode == GammaMode::frozen && !closure.gamma) {
    throw InvalidInput("frozen adiabatic index is unresolved; call init_state or adopt_state");
  }

  Primitives prim;
  prim.velocity = ConstituentField(n, cells);
  prim.concentration = ConstituentField(n, cells);
  prim.alpha = ConstituentField(n, cells);
  prim.total_density.resize(cells);
  prim.average_velocity.resize(cells);
  prim.pressure.resize(cells);
  prim.gamma.resize(cells);

  std::vector<double> rho_cell(n);
  std::vector<double> xi_cell(n);
  for (std::size_t c = 0; c < cells; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = state.rho(i, c);
      const double mom = state.momentum(i, c);
      if (!std::isfinite(rho) || !std::isfinite(mom)) {
        throw RuntimeFailure("non-finite field in cell " + std::to_string(c) + " at t = " +
                             std::to_string(state.time));
      }
      if (rho < kDensityFloor) throw FloorBreach(c, i, rho, state.time);
      rho_cell[i] = rho;
      total += rho;
    }
    prim.total_density[c] = total;
    for (std::size_t i = 0; i < n; ++i) {
      prim.velocity(i, c) = state.momentum(i, c) / rho_cell[i];
      xi_cell[i] = rho_cell[i] / total;
      prim.concentration(i, c) = xi_cell[i];
    }
    const double gamma = closure.gamma_mode == GammaMode::frozen
                             ? *closure.gamma
                             : adiabatic_index(ConcentrationVector(xi_cell), config_.mixture);
    prim.gamma[c] = gamma;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a =
          config_.alpha.mode == AlphaMode::concentration ? xi_cell[i] : config_.alpha.constants[i];
      prim.alpha(i, c) = a;
      v += a * prim.velocity(i, c);
    }
    prim.average_velocity[c] = v;
    prim.pressure[c] = cell_pressure(rho_cell, gamma);
  }
  return prim;
}

std::vector<Matrix> Solver1D::stress_coefficients(const Primitives& prim) const {
  const auto& visc = config_.viscosity;
  switch (visc.kind) {
    case ViscosityKind::none:
      return {};
    case ViscosityKind::constant:
      return {visc.constant->stress_coefficients()};
    case ViscosityKind::concentration: {
      const std::size_t n = n_constituents();
      const std::size_t cells = prim.total_density.size();
      std::vector<Matrix> out;
      out.reserve(cells);
      std::vector<double> xi(n);
      for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t i = 0; i < n; ++i) xi[i] = prim.concentration(i, c);
        out.push_back(evaluate_model(*visc.model, ConcentrationVector(xi)).stress_coefficients());
      }
      return out;
    }
  }
  return {};
}

Tendency Solver1D::rhs(const FieldState& state) const {
  const std::size_t n = n_constituents();
  const std::size_t cells = state.n_cells();
  const double dx = grid_.dx();
  const Primitives prim = primitives(state);
  const std::vector<Matrix> coeff = stress_coefficients(prim);

  // Face c carries the flux between cell c and its right neighbour.
  ConstituentField mass_flux(n, cells);
  ConstituentField momentum_flux(n, cells);
  ConstituentField viscous_flux(n, cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t r = grid_.right(c);
    const double v_face = 0.5 * (prim.average_velocity[c] + prim.average_velocity[r]);
    const std::size_t up = v_face >= 0.0 ? c : r;
    for (std::size_t i = 0; i < n; ++i) {
      mass_flux(i, c) = v_face * state.rho(i, up);
      momentum_flux(i, c) = v_face * state.momentum(i, up);
    }
    if (coeff.empty()) continue;
    const Matrix face = coeff.size() == 1 ? coeff.front() : Matrix(0.5 * (coeff[c] + coeff[r]));
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        g += face(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             (prim.velocity(j, r) - prim.velocity(j, c));
      }
      viscous_flux(i, c) = g / dx;
    }
  }

  Tendency out{ConstituentField(n, cells), ConstituentField(n, cells)};
  const bool forced = config_.forces.waveform != ForceWaveform::zero;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t l = grid_.left(c);
    const std::size_t r = grid_.right(c);
    const double dp = (prim.pressure[r] - prim.pressure[l]) / (2.0 * dx);
    const double x = grid_.center(c);
    for (std::size_t i = 0; i < n; ++i) {
      out.rho(i, c) = -(mass_flux(i, c) - mass_flux(i, l)) / dx;
      double dm = -(momentum_flux(i, c) - momentum_flux(i, l)) / dx - prim.alpha(i, c) * dp +
                  (viscous_flux(i, c) - viscous_flux(i, l)) / dx;
      if (forced) dm += state.rho(i, c) * config_.forces.value(i, x, grid_.length());
      out.momentum(i, c) = dm;
    }
  }
  return out;
}

double Solver1D::stable_dt(const FieldState& state, double cfl) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidInput("cfl must lie in (0, 1]");
  const Primitives prim = primitives(state);
  const std::vector<Matrix> coeff = stress_coefficients(prim);
  const double dx = grid_.dx();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> sigma_max;
  sigma_max.reserve(coeff.size());
  for (const Matrix& a : coeff) sigma_max.push_back(symmetric_eigenvalues(a).maxCoeff());

  double bound = inf;
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    const double rho = prim.total_density[c];
    const double sound = std::sqrt(prim.gamma[c] * prim.pressure[c] / rho);
    const double speed = std::abs(prim.average_velocity[c]) + sound;
    if (!std::isfinite(speed)) throw RuntimeFailure("non-finite wave speed in cell " + std::to_string(c));
    if (speed > 0.0) bound = std::min(bound, dx / speed);
    if (!sigma_max.empty()) {
      const double sigma = sigma_max.size() == 1 ? sigma_max.front() : sigma_max[c];
      if (sigma > 0.0) {
        double rho_min = inf;
        for (std::size_t i = 0; i < n_constituents(); ++i) rho_min = std::min(rho_min, state.rho(i, c));
        bound = std::min(bound, dx * dx * rho_min / (2.0 * sigma));
      }
    }
  }
  return cfl * bound;
}

namespace {

// out = a * x + b * (y + dt * k), fieldwise.
void combine(ConstituentField& out, double a, const ConstituentField& x, double b,
             const ConstituentField& y, double dt, const ConstituentField& k) {
  auto o = out.raw();
  const auto xs = x.raw();
  const auto ys = y.raw();
  const auto ks = k.raw();
  for (std::size_t m = 0; m < o.size(); ++m) o[m] = a * xs[m] + b * (ys[m] + dt * ks[m]);
}

void euler(ConstituentField& out, const ConstituentField& x, double dt, const ConstituentField& k) {
  auto o = out.raw();
  const auto xs = x.raw();
  const auto ks = k.raw();
  for (std::size_t m = 0; m < o.size(); ++m) o[m] = xs[m] + dt * ks[m];
}

}  // namespace

FieldState Solver1D::step(const FieldState& state, double dt) const {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw InvalidInput("time step must be non-negative");

  const Tendency k0 = rhs(state);
  FieldState stage = state;
  euler(stage.rho, state.rho, dt, k0.rho);
  euler(stage.momentum, state.momentum, dt, k0.momentum);
  stage.time = state.time + dt;

  const Tendency k1 = rhs(stage);
  FieldState next = state;
  combine(next.rho, 0.5, state.rho, 0.5, stage.rho, dt, k1.rho);
  combine(next.momentum, 0.5, state.momentum, 0.5, stage.momentum, dt, k1.momentum);
  next.time = state.time + dt;

  for (std::size_t i = 0; i < n_constituents(); ++i) {
    for (std::size_t c = 0; c < next.n_cells(); ++c) {
      const double rho = next.rho(i, c);
      if (!std::isfinite(rho) || !std::isfinite(next.momentum(i, c))) {
        throw RuntimeFailure("non-finite field in cell " + std::to_string(c) + " after step to t = " +
                             std::to_string(next.time));
      }
      if (rho < kDensityFloor) throw FloorBreach(c, i, rho, next.time);
    }
  }
  return next;
}

}  // namespace multifluid
