#pragma once

#include "qldpc/channel.hpp"
#include "qldpc/code.hpp"
#include "qldpc/decode.hpp"

namespace qldpc {

// Maximum-likelihood erasure decoding by direct linear algebra on the check
// matrix restricted to the erased columns. The erasure pattern alone decides
// whether ML can succeed with certainty: it can unless the kernel of the
// restricted matrix contains a logical operator.
struct MlResult {
    DecodeResult decode;
    bool decodable = false;   // kernel lies inside the stabilizer span
    Outcome outcome = Outcome::DecoderFailure;
};

class MlDecoder {
public:
    // fair_guess: when the erasure supports a logical, pick uniformly among
    // the solution classes instead of scoring an automatic logical error.
    // The guess stream is keyed off the instance seed, so replays agree.
    MlDecoder(const CssCode& code, Side side, bool fair_guess = false);
    MlResult decode(const ErasureInstance& inst);

private:
    const CssCode* code_;
    Side side_;
    bool fair_guess_;
    RowSpace stab_space_;
};

MlResult ml_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                   bool fair_guess = false);

}  // namespace qldpc
