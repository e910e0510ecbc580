#include "qldpc/channel.hpp"

#include <stdexcept>

#include "qldpc/rng.hpp"

namespace qldpc {

std::string to_string(Side s) { return s == Side::X ? "X" : "Z"; }

Side side_from_string(const std::string& s) {
    if (s == "X" || s == "x") return Side::X;
    if (s == "Z" || s == "z") return Side::Z;
    throw std::invalid_argument("side must be X or Z, got '" + s + "'");
}

ErasureInstance sample_instance(const CssCode& code, Side side, double p,
                                std::uint64_t seed, std::uint64_t trial) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("erasure rate must lie in [0, 1]");
    std::size_t n = code.n();
    ErasureInstance inst;
    inst.rate = p;
    inst.seed = seed;
    inst.trial = trial;
    inst.mask = BitVec(n);
    inst.error = BitVec(n);

    TrialRng rng(seed, trial);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(p)) continue;
        inst.mask.set(i, true);
        if (rng.coin()) inst.error.set(i, true);
    }
    inst.syndrome = check_matrix(code, side).mat_vec(inst.error);
    return inst;
}

BitVec syndrome_of(const CssCode& code, Side side, const BitVec& error) {
    return check_matrix(code, side).mat_vec(error);
}

}  // namespace qldpc
