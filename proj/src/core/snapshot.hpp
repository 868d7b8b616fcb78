#pragma once

#include <string>

#include "model.hpp"
#include "stepper.hpp"

namespace gch {

// Binary checkpoint of a solver state, little-endian:
//   magic "GCHS" | version u32 | N u64 | L f64 | t f64 | k u32 | p u32 |
//   b f64 | N x f64 samples
// The format round-trips (t, grid, values) bit-exactly, which is what makes
// snapshot/resume transparent for fixed-dt runs.  The polynomial forcing
// coefficients are not part of the format; a resume of a forced run takes
// them from its configuration.
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct SnapshotData {
  SolverState state;  // t and u; step/breaking start fresh on resume
  int k = 1;
  int p = 1;
  double b = 2.0;
};

// Write st (with the model identity) to path.  Throws io_failure on any
// filesystem problem.
void write_snapshot(const SolverState& st, const ModelParams& mp,
                    const std::string& path);

// Read a snapshot back.  Throws io_failure for unreadable files, foreign or
// truncated content, and version mismatches; the message says which.
SnapshotData read_snapshot(const std::string& path);

}  // namespace gch
