#pragma once

#include <cstdint>
#include <string>

#include "initial.hpp"
#include "model.hpp"
#include "stepper.hpp"

namespace gch {

struct OutputSpec {
  std::string csv_path;        // empty: no CSV
  std::string snapshot_path;   // empty: no snapshots; else a filename prefix
  long long snapshot_cadence = 100;  // steps between snapshots

  bool operator==(const OutputSpec&) const = default;
};

// A fully resolved scenario: model, grid, stepping, initial data, outputs.
// parse_config produces only validated instances with every default filled
// in, so parse(render(cfg)) == cfg.
struct ScenarioConfig {
  ModelParams model;
  std::string preset;  // set when the model came from a named preset
  int grid_n = 256;
  double grid_length = 0.0;
  StepControl control;
  InitialData initial;
  OutputSpec outputs;
  // Sobolev index tracked in the diagnostics; defaults to 2(k-1)+3/2+0.1,
  // the local theory's admissible range with a concrete margin.
  double monitor_s = 0.0;
  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;

  GridSpec grid() const { return GridSpec(grid_n, grid_length); }
  void validate() const;  // throws invalid_input naming the offending key
};

// Parse the flat key = value document format:
//   - one "key = value" per line; '#' starts a comment; blank lines ignored
//   - dotted key groups: model.preset | model.{k,p,b,g_coeffs};
//     grid.{n,length}; control.{dt|cfl,t_end,breaking_threshold,max_steps};
//     initial.{kind,amplitude,center,width,modes,mollify_width};
//     outputs.{csv,snapshots,cadence}; monitor_s; seed
//   - arrays in brackets: g_coeffs = [0, 1]; modes = [1, 2, 3]
// Required: a model (preset or explicit k/p/b), grid.n, control.t_end.
// Defaults: grid.length 40 for localized initial kinds (gaussian,
// mollified_peakon) and 2*pi otherwise; initial.center = domain center;
// control.cfl 0.3 when control.dt is absent.  Unknown and duplicate keys are
// rejected by name.
ScenarioConfig parse_config(const std::string& text);

// Canonical document for a valid config; inverse of parse_config.
std::string render_config(const ScenarioConfig& cfg);

// Default monitored Sobolev index for Helmholtz degree k.
double default_monitor_s(int k);

}  // namespace gch
