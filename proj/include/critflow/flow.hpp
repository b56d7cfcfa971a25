#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "critflow/functionals.hpp"
#include "critflow/spectral.hpp"

namespace critflow {

/// Knobs of the discrete flow line: projected descent of the energy quotient
/// on the unit H^1 sphere with Armijo backtracking. The accepted step is
/// carried over (doubled, capped at step0) as the next trial step.
struct FlowConfig {
  double step0 = 1.0;
  double backtrack = 0.5;
  double c_decrease = 1e-4;
  double grad_tol = 1e-8;
  long max_iter = 100000;
  bool positivity = true;  ///< nodewise absolute-value projection

  double stagnation_h = 1e-14;

  // Concentration detection: half-energy radius below radius_factor mesh
  // spacings, or the quotient within level_band (relative) of the critical
  // threshold while the gradient is still large.
  double conc_radius_factor = 4.0;
  double conc_level_band = 1e-3;
  double conc_grad_factor = 1e3;

  // A candidate is recorded the first time the gradient norm drops below
  // 10^{-j} for each j in [ps_threshold_lo, ps_threshold_hi].
  int ps_threshold_lo = 2;
  int ps_threshold_hi = 8;
};

enum class Terminal { PsConverged, Concentrated, Stalled, IterationCap };

const char* to_string(Terminal t);

struct TraceRow {
  long iter = 0;
  double s = 0.0;         ///< cumulative pseudo-time
  double J = 0.0;
  double grad_norm = 0.0;
  double max_u = 0.0;
  double half_energy_radius = 0.0;
  bool in_m1 = false;
};

/// A rescaled candidate u = beta1 * eta together with the scaling factors
/// and the verified link between the two gradients.
struct PSCandidate {
  Field u;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double I_value = 0.0;
  double grad_I_norm = 0.0;
  long iter = 0;
  double identity_err_grad = 0.0;   ///< |grad J(eta) - beta2 grad I(u)| / scale
  double identity_err_level = 0.0;  ///< |I(u) - J^{n/2}/n| / |J^{n/2}/n|
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  std::vector<PSCandidate> candidates;
  Terminal terminal = Terminal::IterationCap;
  std::string diagnostic;

  double L_running = 0.0;  ///< running minimum of the quotient
  double max_tangency = 0.0;
  double max_norm_dev = 0.0;  ///< max | |eta| - 1 |
  double sum_h_g2 = 0.0;      ///< sum of h_k g_k^2 over accepted steps
  double beta1_min = 0.0, beta1_max = 0.0;
  double beta2_min = 0.0, beta2_max = 0.0;
  bool left_m2 = false;

  Field final_eta;
  double final_J = 0.0;
  double final_grad_norm = 0.0;
  long iterations = 0;
};

enum class InitialStrategy { Eigenfunction, BumpAtArgmaxK, UserField };

/// Builds a nonnegative unit-H^1 datum that belongs to M_1. The bump
/// strategy scans compactly supported profiles centered at the node
/// maximizing the coefficient, from broad to narrow, and keeps the broadest
/// admissible one. Throws AdmissibilityError when nothing admissible exists.
Field initial_data(const ProblemData& data, InitialStrategy strategy,
                   const EigenBasis* basis = nullptr,
                   const Field* user = nullptr);

/// Bump datum centered at an arbitrary node (used by the multi-start
/// estimator); same scan and admissibility contract as initial_data.
Field bump_datum_at(const ProblemData& data, std::size_t center_idx);

struct StepResult {
  Field eta;
  double accepted_h = 0.0;
  QuotientParts parts;
  bool converged = false;
  bool stalled = false;
};

/// One projected-descent step with Armijo backtracking. Returns the iterate
/// unchanged (converged flag) when the gradient is already below tolerance;
/// reports stagnation when backtracking underflows.
StepResult flow_step(const ProblemData& data, const FlowConfig& config,
                     const Field& eta);

/// Runs the discrete flow line from an admissible unit datum and classifies
/// the terminal state.
FlowTrace run_flow(const ProblemData& data, const FlowConfig& config,
                   const Field& u0);

/// Rescales eta into an energy-level candidate and verifies the two scaling
/// identities linking the quotient gradient with the energy gradient; beta
/// ranges are accumulated in the trace.
PSCandidate extract_ps(const ProblemData& data, FlowTrace& trace,
                       const Field& eta, long iter = 0);

/// Trace CSV: iter,s,J,grad_norm,max_u,half_energy_radius,in_M1
void write_trace_csv(const FlowTrace& trace, std::ostream& os);
void write_trace_csv_file(const FlowTrace& trace, const std::string& path);

}  // namespace critflow
