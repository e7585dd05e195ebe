#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multifluid/diagnostics.hpp"
#include "multifluid/solver1d.hpp"

namespace multifluid {

struct RunOptions {
  double t_end = 0.0;
  double cfl = 0.5;
  /// Snapshot spacing in time; zero or negative emits only the initial and
  /// final snapshots.
  double snapshot_interval = 0.0;
  /// Fixed step. Must respect stable_dt(state, 1) at every step; otherwise the
  /// run fails with RuntimeFailure.
  std::optional<double> fixed_dt;
  std::size_t max_steps = 100'000'000;
};

struct DiagnosticsRow {
  double time;
  std::vector<double> masses;
  double energy;
  double dissipation;
  double power_input;
  double energy_residual;  ///< zero on the initial row
};

enum class RunStatus { completed, floor_breach, runtime_failure };

struct RunSummary {
  RunStatus status = RunStatus::completed;
  std::size_t steps = 0;
  double final_time = 0.0;
  std::string failure;  ///< message when status != completed
  FieldState final_state;
};

struct RunObserver {
  std::function<void(const FieldState&, std::size_t index)> on_snapshot;
  std::function<void(const DiagnosticsRow&)> on_diagnostics;
};

/// Integrates from `initial` to options.t_end. Emits a snapshot at t = 0, at
/// every multiple of snapshot_interval (steps are shortened to land on them)
/// and at t_end, plus one diagnostics row per step. Floor breaches and other
/// runtime failures stop the run and are reported in the summary; the last
/// good state is emitted as a final snapshot.
RunSummary run(const Solver1D& solver, const FieldState& initial, const RunOptions& options,
               const RunObserver& observer = {});

/// Collected trajectory for callers that want everything in memory.
struct Trajectory {
  std::vector<FieldState> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  RunSummary summary;
};

Trajectory run_collect(const Solver1D& solver, const FieldState& initial, const RunOptions& options);

}  // namespace multifluid
