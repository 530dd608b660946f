#pragma once

// Self-contained property suite behind the `verify` subcommand: spectral
// round trips and identities, then randomized trials of the inequality lab.
// Prints one [PASS]/[FAIL] line per check and returns the failure count.

#include <cstdint>
#include <ostream>

namespace gmhd {

int run_verification(std::uint64_t seed, int n, std::ostream& out);

}  // namespace gmhd
