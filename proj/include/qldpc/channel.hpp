#pragma once

#include <cstdint>
#include <string>

#include "qldpc/code.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

// Which Pauli error type is being corrected. X errors are detected by the
// Z-type checks and are degenerate up to X-type stabilizers; Z errors are the
// mirror image. X is the conventional default throughout.
enum class Side { X, Z };

std::string to_string(Side s);
Side side_from_string(const std::string& s);

inline const BitMat& check_matrix(const CssCode& c, Side s) {
    return s == Side::X ? c.h_z() : c.h_x();
}
inline const BitMat& stabilizer_matrix(const CssCode& c, Side s) {
    return s == Side::X ? c.h_x() : c.h_z();
}
inline const TannerGraph& check_graph(const CssCode& c, Side s) {
    return s == Side::X ? c.tanner_z() : c.tanner_x();
}

// One sampled channel use: which qubits were erased, the actual error placed
// on them (uniform within the erasure), and the resulting syndrome.
struct ErasureInstance {
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    BitVec mask;       // erased positions, length n
    BitVec error;      // support always inside mask
    BitVec syndrome;   // check_matrix * error
};

// Draws a trial. Each qubit independently erases with probability p; an
// erased qubit carries this side's error with probability 1/2. The stream is
// keyed by (seed, trial), so any worker reproduces the same instance.
ErasureInstance sample_instance(const CssCode& code, Side side, double p,
                                std::uint64_t seed, std::uint64_t trial);

BitVec syndrome_of(const CssCode& code, Side side, const BitVec& error);

}  // namespace qldpc
