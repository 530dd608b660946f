#pragma once

// Binary checkpoints of a vorticity-form state.
//
// Layout: magic "GMHD2\0" (6 bytes), format version (1 byte), then n as a
// little-endian 64-bit integer, then time, nu, eta, alpha, beta as
// little-endian IEEE-754 doubles, then the w and j coefficient arrays in
// row-major mode order with real/imaginary parts interleaved.  Round trips
// are bit-exact.

#include <string>

#include "gmhd/mhd.hpp"

namespace gmhd {

inline constexpr unsigned char checkpoint_version = 1;

struct CheckpointData {
    MhdState state;
    SimParams params;
};

// Throws IoError on any write failure.
void save_checkpoint(const MhdState& state, const SimParams& params, const std::string& path);

// Fully validates the file before constructing anything, so a truncated or
// damaged file never yields a partial state.  Throws IoError, CorruptHeaderError,
// or VersionMismatchError.
CheckpointData load_checkpoint(const std::string& path);

}  // namespace gmhd
