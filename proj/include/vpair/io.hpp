#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vpair/branch.hpp"
#include "vpair/expansion.hpp"
#include "vpair/problem.hpp"

namespace vpair {

// Unreadable/unwritable files and malformed serialized data. Kept distinct
// from validation (std::invalid_argument) and solver failures (SolveError)
// so the CLI can map each family to its own exit status.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One run request: command in {solve, continue, verify, expand-check, emit},
// a config file, an output directory, and key=value overrides applied on top
// of the file's values.
struct RunSpec {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
};

// Solver configuration plus the continuation targets it came with.
struct RunConfig {
  PairConfig pair;
  std::vector<double> eps_targets;
};

// Parses a flat `key = value` text file ('#' starts a comment). Keys:
// mode (co|counter), gamma1, gamma2 (co-rotating only; rejected in counter
// mode where it is solved for), b1, b2, d, modes (N), grid (M), tol,
// max_iter, eps_targets (bracketed or bare comma/space list). Defaults:
// modes=32, grid=256, tol=1e-12, max_iter=25. Missing, unknown, or ill-typed
// keys throw std::invalid_argument naming the key; unreadable files throw
// IoError. The assembled config passes validate_config before returning.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

// 17-significant-digit decimal formatting used for every number this module
// writes; round-trips IEEE doubles exactly, so re-reading is bit-exact.
std::string format_double(double x);

// branch.jsonl: one JSON record per state and per line, fields eps, scalar1,
// scalar2, coeffs1, coeffs2, residual_norm, newton_iters. Reading restores
// exactly those fields (iteration histories are not serialized).
void write_branch_jsonl(const std::string& path, const Branch& branch);
std::vector<VState> read_branch_jsonl(const std::string& path);

// boundary CSV: header patch_id,theta,x,y, then M_out rows per patch sampled
// on the uniform parameter grid theta_k = 2*pi*k/M_out.
void write_boundary_csv(const std::string& path, const PairConfig& cfg, const VState& v,
                        int M_out = 128);

// report.csv: header name,predicted,fitted,rel_err,order, one row per
// expansion-report entry.
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

// boundaries.svg: both patches drawn to scale with centres marked;
// primitive elements only.
void write_boundaries_svg(const std::string& path, const PairConfig& cfg, const VState& v,
                          int M_out = 128);

// One verification gate: pass means value <= limit, or value >= limit when
// ge is set (value > limit for strict_gt).
struct VerifyCheck {
  double eps = 0.0;
  std::string label;
  double value = 0.0;
  double limit = 0.0;
  bool ge = false;
  bool pass = false;
};

// Independent health gates per branch state:
//   residual        — re-evaluated residual sup <= 2*tol*scale,
//   equilibrium     — probe oracle <= 1e-6          (eps != 0 states),
//   min_curvature   — curvature scan > 0,
//   symmetry        — residual of the w -> -w reflected state at -eps,
//                     <= 1e-10 (eps != 0 states),
//   nondegeneracy_j — sup|f_j| >= |eps|*b_j*|gamma_other|/(2*d^2*|gamma_self|)
//                     (eps != 0 states; the shaped branch is detectably
//                     away from unshaped circles).
std::vector<VerifyCheck> verify_branch(const PairConfig& cfg, const std::vector<VState>& states);

// Executes spec.command, writing artifacts under spec.out_dir (created if
// missing) and a line-per-result summary to stdout. solve/continue write
// branch.jsonl; verify reads it and writes verify.txt; expand-check reads it
// and writes report.csv; emit reads it and writes boundary_<eps>.csv per
// state plus boundaries.svg. Returns the process exit status: 0 success,
// 1 validation/usage error, 2 failed solve or failed check, 3 I/O failure.
int run_command(const RunSpec& spec);

}  // namespace vpair
