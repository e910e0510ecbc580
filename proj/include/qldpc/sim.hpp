#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/bp.hpp"
#include "qldpc/channel.hpp"
#include "qldpc/code.hpp"
#include "qldpc/decode.hpp"
#include "qldpc/params.hpp"

namespace qldpc {

enum class DecoderKind {
    Bp,             // one BP pass, no decimation
    Bpgd,           // guided decimation, stock priors
    BpgdDamped,     // decimation with damped message updates
    BpgdAdjLlr,     // decimation with scaled unerased priors
    BpgdCombined,   // damping and scaled priors together
    Peeling,
    PrunedPeeling,
    Ml,
};

std::string to_string(DecoderKind k);
DecoderKind decoder_from_string(const std::string& name);

struct SweepSpec {
    std::string code_name;             // used for knob lookup and output echo
    Side side = Side::X;
    DecoderKind decoder = DecoderKind::Bpgd;
    std::vector<double> rates;
    std::uint64_t trials = 10000;      // per rate; a cap when min_failures > 0
    std::uint64_t master_seed = 1;
    int bp_iters = 32;
    double llr_max = 25.0;
    std::optional<double> gamma_override;
    std::optional<double> c_opt_override;
    int prune_depth = 1;               // pruned peeling only
    std::uint64_t min_failures = 0;    // 0 = fixed trial count
    int workers = 1;
    bool record_timing = true;         // false pins the seconds column to 0
    bool ml_fair_guess = false;
    std::string dump_path;             // per-trial dump file; empty disables
};

struct PointStats {
    double rate = 0;
    std::uint64_t trials = 0;          // consumed, not requested
    std::uint64_t exact = 0;
    std::uint64_t degenerate = 0;
    std::uint64_t logical = 0;
    std::uint64_t nonconv = 0;
    std::uint64_t syndrome_violations = 0;  // converged yet syndrome broken
    double failure_rate = 0;           // (logical + nonconv) / trials
    double ci_low = 0, ci_high = 0;    // Wilson 95%
    double seconds = 0;
    long long bp_iterations_total = 0;
    double gamma_used = 1.0;
    double c_opt_used = 1.0;
    // Present only when an early stop on min_failures triggered; corrects the
    // bias of sampling until a fixed failure count.
    std::optional<double> unbiased_failure_rate;
};

// 95% Wilson score interval for fails successes out of trials.
std::pair<double, double> wilson_interval(std::uint64_t fails, std::uint64_t trials);

// Monte Carlo sweep over spec.rates. Results are independent of spec.workers:
// trials are scanned in index order regardless of which thread ran them.
// `tables` may be null when the decoder needs no tuned knobs.
std::vector<PointStats> run_sweep(const CssCode& code, const SweepSpec& spec,
                                  const ParamTables* tables = nullptr);

void emit_csv(std::ostream& os, const CssCode& code, const SweepSpec& spec,
              const std::vector<PointStats>& points);
void emit_json(std::ostream& os, const CssCode& code, const SweepSpec& spec,
               const std::vector<PointStats>& points);

// One-line instance serialization for dump files and replays. Bit sets are
// comma-joined indices, `-` when empty:
//   trial=7 seed=1 p=0.28 mask=3,17 error=17 syndrome=0,4,9
std::string format_dump_line(const ErasureInstance& inst);
ErasureInstance parse_dump_line(const std::string& line, std::size_t n_vars,
                                std::size_t n_checks);

// Fully resolved per-rate decoding setup; what run_sweep executes per trial.
struct ResolvedDecoder {
    DecoderKind kind;
    BpConfig bp;
    int prune_depth = 0;
    bool ml_fair_guess = false;
};

// Applies overrides and table lookups for one rate. Throws when a tuned knob
// is needed but absent from both the spec and the tables.
ResolvedDecoder resolve_decoder(const SweepSpec& spec, double rate, const ParamTables* tables);

// Runs the resolved decoder on one instance (used by sweeps and replays).
// ML fixes its own outcome (tie handling differs from plain classification);
// everyone else leaves `outcome` empty for the caller to classify.
struct TrialOutcome {
    DecodeResult decode;
    std::optional<Outcome> outcome;
};
TrialOutcome decode_instance(const CssCode& code, Side side, const ResolvedDecoder& dec,
                             const ErasureInstance& inst);

}  // namespace qldpc
