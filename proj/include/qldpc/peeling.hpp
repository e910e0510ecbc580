#pragma once

#include "qldpc/channel.hpp"
#include "qldpc/code.hpp"
#include "qldpc/decode.hpp"

namespace qldpc {

// Classic erasure peeling: repeatedly take the lowest-indexed check with
// exactly one unresolved erased neighbour and read that bit off the residual
// syndrome. Converges exactly when the erasure contains no stopping set.
class PeelingDecoder {
public:
    // prune_depth M > 0 enables the stopping-set escape: when peeling stalls,
    // search combinations of up to M stabilizer generator rows (same side as
    // the correction) whose combined support lies inside the residual
    // erasure, and pin the lowest supported bit to 0. Each combination is
    // spent once per trial. M = 0 is plain peeling.
    PeelingDecoder(const CssCode& code, Side side, int prune_depth = 0);
    DecodeResult decode(const ErasureInstance& inst);

private:
    bool find_cover_combo(const BitVec& residual, std::vector<std::size_t>& combo_out);

    const CssCode* code_;
    Side side_;
    int depth_;
    const TannerGraph* g_;          // graph of the check matrix
    const BitMat* stab_;            // same-side stabilizer generators
    std::vector<std::vector<std::size_t>> used_;  // combos spent this trial
};

DecodeResult peel_decode(const CssCode& code, Side side, const ErasureInstance& inst);
DecodeResult pruned_peel_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                                int prune_depth);

}  // namespace qldpc
