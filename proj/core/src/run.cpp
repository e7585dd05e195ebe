#include "multifluid/run.hpp"

#include <cmath>

#include "multifluid/error.hpp"

namespace multifluid {

namespace {

void validate(const RunOptions& options) {
  if (!(options.t_end >= 0.0) || !std::isfinite(options.t_end)) {
    throw InvalidInput("t_end must be non-negative");
  }
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw InvalidInput("cfl must lie in (0, 1]");
  if (options.fixed_dt && !(*options.fixed_dt > 0.0)) {
    throw InvalidInput("fixed time step must be positive");
  }
  if (!std::isfinite(options.snapshot_interval)) {
    throw InvalidInput("snapshot interval must be finite");
  }
}

DiagnosticsRow make_row(const FieldState& state, const EnergyBudget& b, double residual) {
  return {state.time, masses(state), b.kinetic + b.internal, b.dissipation, b.power_input, residual};
}

}  // namespace

RunSummary run(const Solver1D& solver, const FieldState& initial, const RunOptions& options,
               const RunObserver& observer) {
  validate(options);
  auto emit_snapshot = [&](const FieldState& s, std::size_t index) {
    if (observer.on_snapshot) observer.on_snapshot(s, index);
  };
  auto emit_row = [&](const DiagnosticsRow& row) {
    if (observer.on_diagnostics) observer.on_diagnostics(row);
  };

  RunSummary summary;
  FieldState state = initial;
  EnergyBudget current = budget(solver, state);
  emit_row(make_row(state, current, 0.0));
  emit_snapshot(state, 0);

  std::size_t snapshot_index = 1;
  double last_snapshot_time = state.time;
  const bool periodic_snapshots = options.snapshot_interval > 0.0;
  std::size_t next_multiple = 1;
  auto next_snapshot_time = [&] {
    return periodic_snapshots ? std::min(options.snapshot_interval * static_cast<double>(next_multiple),
                                         options.t_end)
                              : options.t_end;
  };

  try {
    while (state.time < options.t_end) {
      if (summary.steps >= options.max_steps) {
        throw RuntimeFailure("step limit of " + std::to_string(options.max_steps) + " reached");
      }
      double dt = 0.0;
      if (options.fixed_dt) {
        dt = *options.fixed_dt;
        const double limit = solver.stable_dt(state, 1.0);
        if (dt > limit * (1.0 + 1e-12)) {
          throw RuntimeFailure("fixed time step " + std::to_string(dt) +
                               " exceeds the stability bound " + std::to_string(limit) +
                               " at t = " + std::to_string(state.time));
        }
      } else {
        dt = solver.stable_dt(state, options.cfl);
      }

      const double target = next_snapshot_time();
      bool landed = false;
      if (!std::isfinite(dt) || state.time + dt * (1.0 + 1e-9) >= target) {
        dt = target - state.time;
        landed = true;
      }

      FieldState next = solver.step(state, dt);
      if (landed) next.time = target;
      ++summary.steps;

      const EnergyBudget after = budget(solver, next);
      emit_row(make_row(next, after, energy_residual(current, after, next.time - state.time)));
      state = std::move(next);
      current = after;

      if (landed) {
        emit_snapshot(state, snapshot_index++);
        last_snapshot_time = state.time;
        if (periodic_snapshots) {
          while (options.snapshot_interval * static_cast<double>(next_multiple) <= state.time) {
            ++next_multiple;
          }
        }
      }
    }
    if (last_snapshot_time != state.time) emit_snapshot(state, snapshot_index++);
  } catch (const FloorBreach& e) {
    summary.status = RunStatus::floor_breach;
    summary.failure = e.what();
    emit_snapshot(state, snapshot_index++);
  } catch (const RuntimeFailure& e) {
    summary.status = RunStatus::runtime_failure;
    summary.failure = e.what();
    emit_snapshot(state, snapshot_index++);
  }

  summary.final_time = state.time;
  summary.final_state = std::move(state);
  return summary;
}

Trajectory run_collect(const Solver1D& solver, const FieldState& initial,
                       const RunOptions& options) {
  Trajectory out;
  RunObserver observer;
  observer.on_snapshot = [&out](const FieldState& s, std::size_t) { out.snapshots.push_back(s); };
  observer.on_diagnostics = [&out](const DiagnosticsRow& row) { out.diagnostics.push_back(row); };
  out.summary = run(solver, initial, options, observer);
  return out;
}

}  // namespace multifluid
