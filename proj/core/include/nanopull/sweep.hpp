#pragma once

#include <string>
#include <vector>

#include "nanopull/config.hpp"
#include "nanopull/force.hpp"

namespace nanopull {

enum class SweepAxis { Frequency, ChemicalPotential, HalfLength, IncidenceAngle };

SweepAxis axis_from_key(const std::string& key);  // e.g. "frequency_thz"
std::string axis_csv_label(SweepAxis a);          // e.g. "f_THz"

struct SweepRow {
  double axis_value = 0;  // in axis units (THz / eV / nm / deg)
  ForceResult force;
  cplx sigma{}, xi{}, alpha{};
  bool near_edge = false;
  double residual_rel = 0;
  bool ok = false;
  std::string error;  // nonempty when the point failed
};

struct SweepResult {
  Config config;
  SweepAxis axis = SweepAxis::Frequency;
  std::vector<SweepRow> rows;
  std::string sign_convention;  // coupling sign used in the solve
  std::string version;
};

// Worker cap: min(NANOPULL_THREADS if set, hardware concurrency), >= 1.
int worker_count();

// Evaluates every point of c.sweep. Per-point failures are captured in the
// row, not thrown; output ordering is deterministic regardless of threading.
// For the incidence-angle axis the kernel is assembled once and shared.
SweepResult run_sweep(const Config& c);

// Byte-stable serializations.
std::string sweep_csv(const SweepResult& r);
std::string sweep_json(const SweepResult& r);

}  // namespace nanopull
