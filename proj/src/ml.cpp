#include "qldpc/ml.hpp"

#include <stdexcept>

#include "qldpc/rng.hpp"

namespace qldpc {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::ExactMatch: return "exact_match";
        case Outcome::DegenerateMatch: return "degenerate_match";
        case Outcome::LogicalError: return "logical_error";
        case Outcome::DecoderFailure: return "decoder_failure";
    }
    return "unknown";
}

Outcome classify(const CssCode& code, Side side, const BitVec& error, const BitVec& estimate,
                 const RowSpace& stabilizer_space) {
    if (error.size() != code.n() || estimate.size() != code.n())
        throw std::invalid_argument("classify: vector length does not match code");
    BitVec diff = error ^ estimate;
    if (diff.none()) return Outcome::ExactMatch;
    if (!check_matrix(code, side).mat_vec(diff).none())
        throw std::logic_error("classify: estimate does not reproduce the error syndrome");
    return stabilizer_space.contains(diff) ? Outcome::DegenerateMatch : Outcome::LogicalError;
}

Outcome classify(const CssCode& code, Side side, const BitVec& error, const BitVec& estimate) {
    RowSpace space(stabilizer_matrix(code, side));
    return classify(code, side, error, estimate, space);
}

MlDecoder::MlDecoder(const CssCode& code, Side side, bool fair_guess)
    : code_(&code), side_(side), fair_guess_(fair_guess),
      stab_space_(stabilizer_matrix(code, side)) {}

MlResult MlDecoder::decode(const ErasureInstance& inst) {
    const CssCode& code = *code_;
    std::size_t n = code.n();
    if (inst.mask.size() != n) throw std::invalid_argument("MlDecoder: instance shape mismatch");

    std::vector<std::size_t> erased = inst.mask.indices();
    BitMat restricted = check_matrix(code, side_).select_columns(erased);

    MlResult out;
    auto embed = [&](const BitVec& local) {
        BitVec full(n);
        for (std::size_t i = 0; i < erased.size(); ++i)
            if (local.get(i)) full.set(erased[i], true);
        return full;
    };

    std::optional<BitVec> sol = restricted.solve(inst.syndrome);
    if (!sol) {
        // Inconsistent syndrome: only possible on hand-edited replays.
        out.decode.status = DecodeStatus::NonConvergence;
        out.decode.estimate = BitVec(n);
        out.outcome = Outcome::DecoderFailure;
        return out;
    }

    BitMat kernel = restricted.nullspace_basis();
    out.decodable = true;
    for (std::size_t r = 0; r < kernel.rows(); ++r)
        if (!stab_space_.contains(embed(kernel.row(r)))) {
            out.decodable = false;
            break;
        }

    BitVec estimate = embed(*sol);
    if (!out.decodable && fair_guess_) {
        // The solution classes are equally likely under the channel, so a
        // uniform draw over the kernel is an honest tie-break. Salted key
        // keeps the stream clear of the channel sampler's.
        TrialRng rng(inst.seed ^ 0x6d6c67756573ull, inst.trial);
        for (std::size_t r = 0; r < kernel.rows(); ++r)
            if (rng.coin()) estimate ^= embed(kernel.row(r));
    }

    out.decode.status = DecodeStatus::Converged;
    out.decode.estimate = estimate;
    if (out.decodable || fair_guess_)
        out.outcome = classify(code, side_, inst.error, estimate, stab_space_);
    else
        out.outcome = Outcome::LogicalError;
    return out;
}

MlResult ml_decode(const CssCode& code, Side side, const ErasureInstance& inst, bool fair_guess) {
    return MlDecoder(code, side, fair_guess).decode(inst);
}

}  // namespace qldpc
