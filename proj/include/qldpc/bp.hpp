#pragma once

#include <vector>

#include "qldpc/channel.hpp"
#include "qldpc/code.hpp"
#include "qldpc/decode.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

struct BpConfig {
    int iters = 32;          // message-passing iterations per decimation round
    double llr_max = 25.0;   // saturation bound and confident-prior magnitude
    double llr_min = 0.0;    // prior handed to erased bits
    double gamma = 1.0;      // damping weight on new var->check messages; 1 = off
    double c_opt = 1.0;      // scale on unerased priors; 1 = off
};

// log((1-p)/p), clamped to [-llr_max, llr_max]. Out-of-range p saturates and
// warns once on stderr.
double channel_llr(double p, double llr_max = 25.0);

// Erased bits get llr_min, everything else c_opt * llr_max.
std::vector<double> init_priors(const BitVec& mask, std::size_t n, const BpConfig& cfg);

// Flooding sum-product over one Tanner graph with syndrome signs. State
// persists between run() calls so a caller can interleave prior updates
// (decimation) with further iterations.
class BpEngine {
public:
    BpEngine(const TannerGraph& g, const BpConfig& cfg);

    void reset(const std::vector<double>& priors, const BitVec& syndrome);

    // Runs up to `max_iters` flooding iterations (checks then vars). Stops
    // early only at an exact message fixed point, where every further
    // iteration would reproduce the state bit for bit. Returns iterations
    // actually executed.
    int run(int max_iters);

    bool at_fixed_point() const { return fixed_point_; }
    const std::vector<double>& beliefs() const { return belief_; }
    double prior(std::size_t v) const { return prior_[v]; }
    void set_prior(std::size_t v, double value);

    // Negative belief decides 1; a belief of exactly zero decides 0.
    BitVec hard_decision() const;
    bool syndrome_matches(const BitVec& hard) const;

private:
    bool iterate();

    const TannerGraph* g_;
    BpConfig cfg_;
    double sat_tanh_;                 // tanh(llr_max / 2)
    std::vector<double> sat_msg_;     // by count: clamp(2 atanh(sat_tanh^count))
    std::vector<double> msg_vc_, msg_cv_, prior_, belief_;
    std::vector<double> tb_, pre_, suf_;
    std::vector<std::uint8_t> syn_;
    bool fixed_point_ = false;
};

struct BpRunResult {
    std::vector<double> beliefs;
    BitVec hard;
    bool matched = false;
    int iters_run = 0;
};

// One fresh BP pass: initialize messages from priors, iterate cfg.iters
// times, report beliefs, hard decision and whether the syndrome is met.
BpRunResult bp_run(const TannerGraph& g, const std::vector<double>& priors,
                   const BitVec& syndrome, const BpConfig& cfg);

// Belief propagation with guided decimation. Every round runs cfg.iters BP
// iterations, checks the syndrome, then pins the most confident undecimated
// variable's prior to +/-llr_max. Rounds where the pin did not change any
// prior reuse the existing fixed point instead of recomputing it; counters
// reflect the work actually performed, never more than n * cfg.iters.
class BpgdDecoder {
public:
    BpgdDecoder(const CssCode& code, Side side, const BpConfig& cfg);
    DecodeResult decode(const ErasureInstance& inst);
    const BpConfig& config() const { return cfg_; }

private:
    const TannerGraph* g_;
    BpConfig cfg_;
    BpEngine engine_;
    std::vector<std::uint8_t> undecimated_;
};

DecodeResult bpgd_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                         const BpConfig& cfg = {});

// Plain BP as a decoder: a single bp_run, Converged only if the hard decision
// reproduces the syndrome.
DecodeResult bp_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                       const BpConfig& cfg = {});

}  // namespace qldpc
