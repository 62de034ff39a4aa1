#pragma once

#include <string>

#include "extsum/trainer.hpp"

namespace extsum {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File layout: one header line "extsum-checkpoint <version> <fnv1a64 of the
// payload>", then the JSON payload. Doubles are serialized so that they
// round-trip bit-exactly.
void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);

// Verifies the magic, version, and checksum, then rebuilds the model from the
// stored config and overwrites every parameter tensor.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace extsum
