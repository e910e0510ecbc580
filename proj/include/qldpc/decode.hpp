#pragma once

#include "qldpc/channel.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

enum class DecodeStatus { Converged, NonConvergence };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::NonConvergence;
    BitVec estimate;                 // last hard decision even when unconverged
    int rounds_used = 0;             // decimation/peeling rounds consumed
    long bp_iterations_total = 0;    // message-passing iterations actually run

    bool operator==(const DecodeResult&) const = default;
};

// Coset bookkeeping for one corrected side.
enum class Outcome {
    ExactMatch,       // estimate equals the channel error
    DegenerateMatch,  // differs by a stabilizer: still a success
    LogicalError,     // syndrome matched but a logical operator was applied
    DecoderFailure,   // decoder gave up (non-convergence)
};

std::string to_string(Outcome o);

// Residual-based classification. Requires the estimate to reproduce the
// instance syndrome; anything else is a caller bug and throws.
Outcome classify(const CssCode& code, Side side, const BitVec& error, const BitVec& estimate);

// Same decision against a prebuilt stabilizer row space (hot path for sweeps).
Outcome classify(const CssCode& code, Side side, const BitVec& error, const BitVec& estimate,
                 const RowSpace& stabilizer_space);

}  // namespace qldpc
