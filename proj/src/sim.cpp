#include "qldpc/sim.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qldpc/ml.hpp"
#include "qldpc/peeling.hpp"

namespace qldpc {

namespace {

// Shortest representation that round-trips exactly; used anywhere a value
// may be read back (dump lines, CSV rates).
std::string fmt_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_g10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_seconds(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string join_indices(const BitVec& v) {
    std::vector<std::size_t> idx = v.indices();
    if (idx.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(idx[i]);
    }
    return out;
}

// Per-trial category codes inside a chunk. Violation means the decoder
// claimed convergence while its output breaks the syndrome; it counts as a
// failure and is tracked separately because it can only be a decoder bug.
enum : std::uint8_t { kExact = 0, kDegenerate, kLogical, kNonConv, kViolation };

struct Chunk {
    std::vector<std::uint8_t> cat;
    std::vector<long long> bp_iters;
    std::vector<std::string> dump;
};

class TrialRunner {
public:
    TrialRunner(const CssCode& code, Side side, const ResolvedDecoder& d)
        : code_(&code), side_(side), dec_(d) {
        switch (d.kind) {
            case DecoderKind::Bp:
                break;
            case DecoderKind::Bpgd:
            case DecoderKind::BpgdDamped:
            case DecoderKind::BpgdAdjLlr:
            case DecoderKind::BpgdCombined:
                bpgd_.emplace(code, side, d.bp);
                break;
            case DecoderKind::Peeling:
                peel_.emplace(code, side, 0);
                break;
            case DecoderKind::PrunedPeeling:
                peel_.emplace(code, side, d.prune_depth);
                break;
            case DecoderKind::Ml:
                ml_.emplace(code, side, d.ml_fair_guess);
                break;
        }
    }

    TrialOutcome run(const ErasureInstance& inst) {
        TrialOutcome out;
        switch (dec_.kind) {
            case DecoderKind::Bp:
                out.decode = bp_decode(*code_, side_, inst, dec_.bp);
                break;
            case DecoderKind::Bpgd:
            case DecoderKind::BpgdDamped:
            case DecoderKind::BpgdAdjLlr:
            case DecoderKind::BpgdCombined:
                out.decode = bpgd_->decode(inst);
                break;
            case DecoderKind::Peeling:
            case DecoderKind::PrunedPeeling:
                out.decode = peel_->decode(inst);
                break;
            case DecoderKind::Ml: {
                MlResult r = ml_->decode(inst);
                out.decode = std::move(r.decode);
                out.outcome = r.outcome;
                break;
            }
        }
        return out;
    }

private:
    const CssCode* code_;
    Side side_;
    ResolvedDecoder dec_;
    std::optional<BpgdDecoder> bpgd_;
    std::optional<PeelingDecoder> peel_;
    std::optional<MlDecoder> ml_;
};

std::uint8_t categorize(const CssCode& code, Side side, const RowSpace& stab_space,
                        const ErasureInstance& inst, const TrialOutcome& t) {
    if (t.decode.status == DecodeStatus::NonConvergence) return kNonConv;
    if (t.outcome) {
        switch (*t.outcome) {
            case Outcome::ExactMatch: return kExact;
            case Outcome::DegenerateMatch: return kDegenerate;
            case Outcome::LogicalError: return kLogical;
            case Outcome::DecoderFailure: return kNonConv;
        }
    }
    BitVec diff = inst.error ^ t.decode.estimate;
    if (diff.none()) return kExact;
    if (!check_matrix(code, side).mat_vec(diff).none()) return kViolation;
    return stab_space.contains(diff) ? kDegenerate : kLogical;
}

}  // namespace

std::string to_string(DecoderKind k) {
    switch (k) {
        case DecoderKind::Bp: return "bp";
        case DecoderKind::Bpgd: return "bpgd";
        case DecoderKind::BpgdDamped: return "bpgd-damped";
        case DecoderKind::BpgdAdjLlr: return "bpgd-adj-llr";
        case DecoderKind::BpgdCombined: return "bpgd-combined";
        case DecoderKind::Peeling: return "peeling";
        case DecoderKind::PrunedPeeling: return "pruned-peeling";
        case DecoderKind::Ml: return "ml";
    }
    return "unknown";
}

DecoderKind decoder_from_string(const std::string& name) {
    static const std::map<std::string, DecoderKind> lut = {
        {"bp", DecoderKind::Bp},
        {"bpgd", DecoderKind::Bpgd},
        {"bpgd-damped", DecoderKind::BpgdDamped},
        {"bpgd-adj-llr", DecoderKind::BpgdAdjLlr},
        {"bpgd-combined", DecoderKind::BpgdCombined},
        {"peeling", DecoderKind::Peeling},
        {"pruned-peeling", DecoderKind::PrunedPeeling},
        {"ml", DecoderKind::Ml},
    };
    auto it = lut.find(name);
    if (it == lut.end()) {
        std::string valid;
        for (const auto& [k, v] : lut) {
            if (!valid.empty()) valid += ", ";
            valid += k;
        }
        throw std::invalid_argument("unknown decoder '" + name + "' (expected one of: " + valid + ")");
    }
    return it->second;
}

std::pair<double, double> wilson_interval(std::uint64_t fails, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // Phi^-1(0.975)
    double n = double(trials);
    double phat = double(fails) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    double lo = center - half, hi = center + half;
    return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

ResolvedDecoder resolve_decoder(const SweepSpec& spec, double rate, const ParamTables* tables) {
    ResolvedDecoder d;
    d.kind = spec.decoder;
    d.bp.iters = spec.bp_iters;
    d.bp.llr_max = spec.llr_max;
    d.prune_depth = spec.decoder == DecoderKind::PrunedPeeling ? spec.prune_depth : 0;
    d.ml_fair_guess = spec.ml_fair_guess;

    auto tuned = [&](const ParamTable* table, const std::optional<double>& override_v,
                     const char* what) {
        if (override_v) return *override_v;
        if (table) {
            if (auto v = table->lookup(spec.code_name, rate)) return *v;
        }
        std::ostringstream msg;
        msg << "no tuned " << what << " for code '" << spec.code_name << "' at p=" << rate
            << "; pass an explicit value";
        throw std::runtime_error(msg.str());
    };

    switch (spec.decoder) {
        case DecoderKind::BpgdDamped:
            d.bp.gamma = tuned(tables ? &tables->gamma : nullptr, spec.gamma_override, "gamma");
            break;
        case DecoderKind::BpgdAdjLlr:
            d.bp.c_opt = tuned(tables ? &tables->c_opt : nullptr, spec.c_opt_override, "c_opt");
            break;
        case DecoderKind::BpgdCombined:
            d.bp.gamma = tuned(tables ? &tables->gamma : nullptr, spec.gamma_override, "gamma");
            d.bp.c_opt =
                tuned(tables ? &tables->c_opt_combined : nullptr, spec.c_opt_override, "c_opt");
            break;
        default:
            // Plain variants still honour explicit overrides so one-off
            // experiments don't need tables.
            if (spec.gamma_override) d.bp.gamma = *spec.gamma_override;
            if (spec.c_opt_override) d.bp.c_opt = *spec.c_opt_override;
            break;
    }
    if (!(d.bp.gamma > 0.0 && d.bp.gamma <= 1.0))
        throw std::runtime_error("gamma must be in (0, 1]");
    if (!(d.bp.c_opt > 0.0 && d.bp.c_opt <= 1.0))
        throw std::runtime_error("c_opt must be in (0, 1]");
    return d;
}

TrialOutcome decode_instance(const CssCode& code, Side side, const ResolvedDecoder& dec,
                             const ErasureInstance& inst) {
    TrialRunner runner(code, side, dec);
    return runner.run(inst);
}

std::vector<PointStats> run_sweep(const CssCode& code, const SweepSpec& spec,
                                  const ParamTables* tables) {
    if (spec.trials == 0) throw std::invalid_argument("run_sweep: trials must be positive");
    if (spec.workers < 1) throw std::invalid_argument("run_sweep: workers must be positive");
    if (spec.bp_iters < 1) throw std::invalid_argument("run_sweep: bp_iters must be positive");

    RowSpace stab_space(stabilizer_matrix(code, spec.side));

    std::ofstream dump;
    bool dumping = !spec.dump_path.empty();
    if (dumping) {
        dump.open(spec.dump_path);
        if (!dump) throw std::runtime_error("cannot open dump file: " + spec.dump_path);
    }

    // Trials are split into fixed chunks handed to whichever worker is free;
    // the aggregation below walks chunks in index order, so the statistics
    // (and any early stop) cannot depend on the worker count.
    constexpr std::uint64_t kChunk = 512;

    std::vector<PointStats> out;
    for (double rate : spec.rates) {
        ResolvedDecoder dec = resolve_decoder(spec, rate, tables);

        PointStats ps;
        ps.rate = rate;
        ps.gamma_used = dec.bp.gamma;
        ps.c_opt_used = dec.bp.c_opt;

        auto t0 = std::chrono::steady_clock::now();

        const std::uint64_t n_chunks = (spec.trials + kChunk - 1) / kChunk;
        std::atomic<std::uint64_t> next_chunk{0};
        std::atomic<bool> stop{false};
        std::map<std::uint64_t, Chunk> done;
        std::mutex mu;
        std::condition_variable cv;
        std::exception_ptr err;
        bool has_err = false;

        auto worker = [&]() {
            try {
                TrialRunner runner(code, spec.side, dec);
                while (true) {
                    std::uint64_t ci = next_chunk.fetch_add(1);
                    if (ci >= n_chunks || stop.load()) break;
                    std::uint64_t lo = ci * kChunk;
                    std::uint64_t hi = std::min(spec.trials, lo + kChunk);
                    Chunk ch;
                    ch.cat.reserve(hi - lo);
                    for (std::uint64_t t = lo; t < hi; ++t) {
                        if (stop.load(std::memory_order_relaxed)) break;
                        ErasureInstance inst =
                            sample_instance(code, spec.side, rate, spec.master_seed, t);
                        TrialOutcome res = runner.run(inst);
                        ch.cat.push_back(categorize(code, spec.side, stab_space, inst, res));
                        ch.bp_iters.push_back(res.decode.bp_iterations_total);
                        if (dumping) ch.dump.push_back(format_dump_line(inst));
                    }
                    {
                        std::lock_guard<std::mutex> lk(mu);
                        done.emplace(ci, std::move(ch));
                    }
                    cv.notify_all();
                }
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!has_err) {
                        err = std::current_exception();
                        has_err = true;
                    }
                }
                stop.store(true);
                cv.notify_all();
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(spec.workers);
        for (int w = 0; w < spec.workers; ++w) pool.emplace_back(worker);

        std::uint64_t fails = 0;
        bool stopped_early = false;
        for (std::uint64_t ci = 0; ci < n_chunks && !stopped_early; ++ci) {
            Chunk ch;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv.wait(lk, [&] { return done.count(ci) != 0 || has_err; });
                if (has_err) break;
                ch = std::move(done[ci]);
                done.erase(ci);
            }
            for (std::size_t i = 0; i < ch.cat.size(); ++i) {
                switch (ch.cat[i]) {
                    case kExact: ++ps.exact; break;
                    case kDegenerate: ++ps.degenerate; break;
                    case kLogical: ++ps.logical; break;
                    case kNonConv: ++ps.nonconv; break;
                    case kViolation:
                        ++ps.nonconv;
                        ++ps.syndrome_violations;
                        break;
                }
                ps.bp_iterations_total += ch.bp_iters[i];
                if (dumping) dump << ch.dump[i] << '\n';
                ++ps.trials;
                if (ch.cat[i] >= kLogical) ++fails;
                if (spec.min_failures > 0 && fails >= spec.min_failures) {
                    stopped_early = true;
                    break;
                }
            }
        }
        stop.store(true);
        cv.notify_all();
        for (auto& th : pool) th.join();
        if (has_err) std::rethrow_exception(err);

        ps.failure_rate = ps.trials ? double(ps.logical + ps.nonconv) / double(ps.trials) : 0.0;
        std::tie(ps.ci_low, ps.ci_high) = wilson_interval(ps.logical + ps.nonconv, ps.trials);
        if (stopped_early)
            ps.unbiased_failure_rate =
                ps.trials > 1 ? double(fails - 1) / double(ps.trials - 1) : 1.0;
        if (spec.record_timing) {
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            ps.seconds = dt.count();
        }
        out.push_back(std::move(ps));
    }

    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].ci_high < out[i - 1].ci_low)
            std::cerr << "note: failure rate at p=" << fmt_shortest(out[i].rate)
                      << " is significantly below p=" << fmt_shortest(out[i - 1].rate)
                      << "; double-check decoder knobs\n";
    return out;
}

namespace {

bool decoder_uses_knobs(DecoderKind k) {
    return k == DecoderKind::BpgdDamped || k == DecoderKind::BpgdAdjLlr ||
           k == DecoderKind::BpgdCombined;
}

}  // namespace

void emit_csv(std::ostream& os, const CssCode& code, const SweepSpec& spec,
              const std::vector<PointStats>& points) {
    os << "# qldpc-erasure sweep\n";
    os << "# code=" << code.name() << " n=" << code.n() << " k=" << code.k()
       << " side=" << to_string(spec.side) << "\n";
    os << "# decoder=" << to_string(spec.decoder) << " seed=" << spec.master_seed
       << " trials=" << spec.trials << " min_failures=" << spec.min_failures << "\n";
    os << "# bp_iters=" << spec.bp_iters << " llr_max=" << fmt_shortest(spec.llr_max)
       << " prune_depth=" << spec.prune_depth << "\n";
    if (decoder_uses_knobs(spec.decoder))
        for (const PointStats& p : points)
            os << "# knobs p=" << fmt_shortest(p.rate) << " gamma=" << fmt_shortest(p.gamma_used)
               << " c_opt=" << fmt_shortest(p.c_opt_used) << "\n";
    os << "rate,trials,exact,degenerate,logical,nonconv,failure_rate,ci_low,ci_high,seconds\n";
    for (const PointStats& p : points) {
        os << fmt_shortest(p.rate) << ',' << p.trials << ',' << p.exact << ',' << p.degenerate
           << ',' << p.logical << ',' << p.nonconv << ',' << fmt_g10(p.failure_rate) << ','
           << fmt_g10(p.ci_low) << ',' << fmt_g10(p.ci_high) << ',' << fmt_seconds(p.seconds)
           << '\n';
    }
}

void emit_json(std::ostream& os, const CssCode& code, const SweepSpec& spec,
               const std::vector<PointStats>& points) {
    nlohmann::ordered_json j;
    j["tool"] = "qldpc-erasure";
    j["code"] = {{"name", code.name()},
                 {"n", code.n()},
                 {"k", code.k()},
                 {"checks_x", code.h_x().rows()},
                 {"checks_z", code.h_z().rows()}};
    j["side"] = to_string(spec.side);
    j["decoder"] = to_string(spec.decoder);
    j["seed"] = spec.master_seed;
    j["trials_requested"] = spec.trials;
    j["min_failures"] = spec.min_failures;
    j["bp_iters"] = spec.bp_iters;
    j["llr_max"] = spec.llr_max;
    if (spec.decoder == DecoderKind::PrunedPeeling) j["prune_depth"] = spec.prune_depth;
    if (spec.decoder == DecoderKind::Ml) j["ml_fair_guess"] = spec.ml_fair_guess;
    j["points"] = nlohmann::ordered_json::array();
    for (const PointStats& p : points) {
        nlohmann::ordered_json pj;
        pj["rate"] = p.rate;
        pj["trials"] = p.trials;
        pj["exact"] = p.exact;
        pj["degenerate"] = p.degenerate;
        pj["logical"] = p.logical;
        pj["nonconv"] = p.nonconv;
        pj["failure_rate"] = p.failure_rate;
        pj["ci_low"] = p.ci_low;
        pj["ci_high"] = p.ci_high;
        pj["seconds"] = p.seconds;
        pj["bp_iterations_total"] = p.bp_iterations_total;
        pj["syndrome_violations"] = p.syndrome_violations;
        if (decoder_uses_knobs(spec.decoder)) {
            pj["gamma"] = p.gamma_used;
            pj["c_opt"] = p.c_opt_used;
        }
        if (p.unbiased_failure_rate) pj["unbiased_failure_rate"] = *p.unbiased_failure_rate;
        j["points"].push_back(std::move(pj));
    }
    os << j.dump(2) << '\n';
}

std::string format_dump_line(const ErasureInstance& inst) {
    std::ostringstream os;
    os << "trial=" << inst.trial << " seed=" << inst.seed << " p=" << fmt_shortest(inst.rate)
       << " mask=" << join_indices(inst.mask) << " error=" << join_indices(inst.error)
       << " syndrome=" << join_indices(inst.syndrome);
    return os.str();
}

ErasureInstance parse_dump_line(const std::string& line, std::size_t n_vars,
                                std::size_t n_checks) {
    auto fail = [&](const std::string& why) -> std::runtime_error {
        return std::runtime_error("bad dump line (" + why + "): " + line);
    };

    std::map<std::string, std::string> kv;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos) throw fail("token without '='");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"trial", "seed", "p", "mask", "error", "syndrome"})
        if (!kv.count(key)) throw fail(std::string("missing ") + key);

    auto parse_bits = [&](const std::string& s, std::size_t size, const char* what) {
        BitVec v(size);
        if (s == "-") return v;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
            std::size_t idx = 0;
            auto res = std::from_chars(part.data(), part.data() + part.size(), idx);
            if (res.ec != std::errc() || res.ptr != part.data() + part.size())
                throw fail(std::string("malformed index list in ") + what);
            if (idx >= size) throw fail(std::string("index out of range in ") + what);
            v.set(idx, true);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return v;
    };

    ErasureInstance inst;
    try {
        inst.trial = std::stoull(kv["trial"]);
        inst.seed = std::stoull(kv["seed"]);
        inst.rate = std::stod(kv["p"]);
    } catch (const std::exception&) {
        throw fail("malformed numeric field");
    }
    inst.mask = parse_bits(kv["mask"], n_vars, "mask");
    inst.error = parse_bits(kv["error"], n_vars, "error");
    inst.syndrome = parse_bits(kv["syndrome"], n_checks, "syndrome");
    return inst;
}

}  // namespace qldpc
