#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qldpc/code.hpp"
#include "qldpc/io.hpp"
#include "qldpc/params.hpp"
#include "qldpc/sim.hpp"

using namespace qldpc;

namespace {

// Accepts a comma list whose items are plain rates or lo:hi:step ranges,
// e.g. "0.1,0.2:0.3:0.02". Range points are snapped to a 1e-12 grid so that
// 0.26 + 0.02 prints as 0.28, not a float artifact.
std::vector<double> parse_rates(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(std::stod(item));
            continue;
        }
        std::size_t c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::runtime_error("rate range must be lo:hi:step, got: " + item);
        double lo = std::stod(item.substr(0, c1));
        double hi = std::stod(item.substr(c1 + 1, c2 - c1 - 1));
        double step = std::stod(item.substr(c2 + 1));
        if (step <= 0.0 || hi < lo)
            throw std::runtime_error("bad rate range (need lo <= hi, step > 0): " + item);
        long count = std::lround(std::floor((hi - lo) / step + 1e-9));
        for (long i = 0; i <= count; ++i)
            out.push_back(std::round((lo + double(i) * step) * 1e12) / 1e12);
    }
    if (out.empty()) throw std::runtime_error("no rates given");
    for (double p : out)
        if (p < 0.0 || p > 1.0)
            throw std::runtime_error("rates must lie in [0, 1]");
    return out;
}

int default_workers() {
    if (const char* env = std::getenv("QLDPC_WORKERS")) {
        try {
            int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid QLDPC_WORKERS value '" << env << "'\n";
    }
    return 1;
}

struct DecoderArgs {
    std::string decoder = "bpgd";
    int bp_iters = 32;
    double llr_max = 25.0;
    std::optional<double> gamma;
    std::optional<double> c_opt;
    int prune_depth = 1;
    bool ml_fair_guess = false;
};

void add_decoder_args(CLI::App* sc, DecoderArgs& d) {
    sc->add_option("--decoder", d.decoder,
                   "bp | bpgd | bpgd-damped | bpgd-adj-llr | bpgd-combined | "
                   "peeling | pruned-peeling | ml")
        ->capture_default_str();
    sc->add_option("--bp-iters", d.bp_iters, "BP iterations per decimation round")
        ->capture_default_str();
    sc->add_option("--llr-max", d.llr_max, "LLR saturation bound")->capture_default_str();
    sc->add_option("--gamma", d.gamma,
                   "damping factor in (0,1]; overrides the tuned table");
    sc->add_option("--c-opt", d.c_opt,
                   "unerased-prior scale in (0,1]; overrides the tuned table");
    sc->add_option("--prune-depth", d.prune_depth,
                   "max stabilizer combination size for pruned peeling")
        ->capture_default_str();
    sc->add_flag("--ml-fair-guess", d.ml_fair_guess,
                 "ml only: guess uniformly among solution classes instead of "
                 "scoring an automatic logical error");
}

void fill_spec(SweepSpec& spec, const CssCode& code, const std::string& side,
               const DecoderArgs& d) {
    spec.code_name = code.name();
    spec.side = side_from_string(side);
    spec.decoder = decoder_from_string(d.decoder);
    spec.bp_iters = d.bp_iters;
    spec.llr_max = d.llr_max;
    spec.gamma_override = d.gamma;
    spec.c_opt_override = d.c_opt;
    spec.prune_depth = d.prune_depth;
    spec.ml_fair_guess = d.ml_fair_guess;
}

struct SweepArgs {
    std::string code;
    std::string side = "X";
    DecoderArgs dec;
    std::string rates;
    std::uint64_t trials = 10000;
    std::uint64_t min_failures = 0;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out = "-";
    int workers = default_workers();
    bool no_timing = false;
    std::string dump;
};

int cmd_sweep(const SweepArgs& a) {
    CssCode code = load_code(a.code);
    SweepSpec spec;
    fill_spec(spec, code, a.side, a.dec);
    spec.rates = parse_rates(a.rates);
    spec.trials = a.trials;
    spec.min_failures = a.min_failures;
    spec.master_seed = a.seed;
    spec.workers = a.workers;
    spec.record_timing = !a.no_timing;
    spec.dump_path = a.dump;

    ParamTables tables = ParamTables::load_default();
    std::vector<PointStats> points = run_sweep(code, spec, &tables);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (a.out != "-") {
        file.open(a.out);
        if (!file) throw std::runtime_error("cannot open output file: " + a.out);
        os = &file;
    }
    if (a.format == "json")
        emit_json(*os, code, spec, points);
    else
        emit_csv(*os, code, spec, points);
    return 0;
}

int cmd_validate(const std::string& code_arg) {
    CssCode code = load_code(code_arg);
    std::vector<std::string> problems = validate(code);
    std::cout << code.name() << ": [[" << code.n() << "," << code.k() << "]]\n";
    for (const std::string& p : problems) std::cout << "problem: " << p << "\n";
    if (problems.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    return 1;
}

template <typename F>
std::pair<std::size_t, std::size_t> degree_range(std::size_t count, F deg) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t d = deg(i);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (count == 0) lo = 0;
    return {lo, hi};
}

int cmd_describe(const std::string& code_arg) {
    CssCode code = load_code(code_arg);
    std::cout << "name:        " << code.name() << "\n";
    std::cout << "parameters:  [[" << code.n() << "," << code.k() << "]]\n";
    std::cout << "h_x:         " << code.h_x().rows() << " x " << code.h_x().cols()
              << " (rank " << code.rank_x() << ")\n";
    std::cout << "h_z:         " << code.h_z().rows() << " x " << code.h_z().cols()
              << " (rank " << code.rank_z() << ")\n";
    const TannerGraph& tx = code.tanner_x();
    const TannerGraph& tz = code.tanner_z();
    auto [vxl, vxh] = degree_range(tx.n_vars, [&](std::size_t v) { return tx.var_degree(v); });
    auto [cxl, cxh] = degree_range(tx.n_checks, [&](std::size_t c) { return tx.check_degree(c); });
    auto [vzl, vzh] = degree_range(tz.n_vars, [&](std::size_t v) { return tz.var_degree(v); });
    auto [czl, czh] = degree_range(tz.n_checks, [&](std::size_t c) { return tz.check_degree(c); });
    std::cout << "x degrees:   var " << vxl << ".." << vxh << ", check " << cxl << ".." << cxh
              << "\n";
    std::cout << "z degrees:   var " << vzl << ".." << vzh << ", check " << czl << ".." << czh
              << "\n";
    std::vector<std::string> problems = validate(code);
    std::cout << "valid css:   " << (problems.empty() ? "yes" : "NO") << "\n";
    for (const std::string& p : problems) std::cout << "problem: " << p << "\n";
    return problems.empty() ? 0 : 1;
}

struct ReplayArgs {
    std::string code;
    std::string side = "X";
    DecoderArgs dec;
    std::string in = "-";
};

int cmd_replay(const ReplayArgs& a) {
    CssCode code = load_code(a.code);
    SweepSpec spec;
    fill_spec(spec, code, a.side, a.dec);
    ParamTables tables = ParamTables::load_default();
    RowSpace stab_space(stabilizer_matrix(code, spec.side));

    std::ifstream file;
    std::istream* in = &std::cin;
    if (a.in != "-") {
        file.open(a.in);
        if (!file) throw std::runtime_error("cannot open dump file: " + a.in);
        in = &file;
    }

    std::size_t n_checks = check_matrix(code, spec.side).rows();
    std::size_t counts[5] = {0, 0, 0, 0, 0};
    const char* labels[5] = {"exact_match", "degenerate_match", "logical_error",
                             "decoder_failure", "syndrome_violation"};
    std::string line;
    while (std::getline(*in, line)) {
        if (line.empty() || line[0] == '#') continue;
        ErasureInstance inst = parse_dump_line(line, code.n(), n_checks);
        ResolvedDecoder dec = resolve_decoder(spec, inst.rate, &tables);
        TrialOutcome t = decode_instance(code, spec.side, dec, inst);
        int cat;
        if (t.decode.status == DecodeStatus::NonConvergence) {
            cat = 3;
        } else if (t.outcome) {
            cat = t.outcome == Outcome::ExactMatch        ? 0
                  : t.outcome == Outcome::DegenerateMatch ? 1
                  : t.outcome == Outcome::LogicalError    ? 2
                                                          : 3;
        } else {
            try {
                Outcome o = classify(code, spec.side, inst.error, t.decode.estimate, stab_space);
                cat = o == Outcome::ExactMatch ? 0 : o == Outcome::DegenerateMatch ? 1 : 2;
            } catch (const std::logic_error&) {
                cat = 4;
            }
        }
        ++counts[cat];
        std::cout << "trial=" << inst.trial << " p=" << inst.rate << " outcome=" << labels[cat]
                  << " rounds=" << t.decode.rounds_used
                  << " bp_iters=" << t.decode.bp_iterations_total << "\n";
    }
    std::cout << "# summary:";
    for (int i = 0; i < 5; ++i) std::cout << " " << labels[i] << "=" << counts[i];
    std::cout << "\n";
    return 0;
}

struct GenCodeArgs {
    std::string family;
    std::string out = "-";
    std::string name;
    std::string seed_alist, seed_alist2;
    std::size_t checks = 24, vars = 32, col_w = 3, row_w = 4;
    std::uint64_t gen_seed = 1;
    std::string seed_out;
};

int cmd_gen_code(const GenCodeArgs& a) {
    CssCode code;
    if (a.family == "b1") {
        code = b1_code();
    } else if (a.family == "hgp") {
        if (a.seed_alist.empty())
            throw std::runtime_error("--seed-alist is required for --family hgp");
        BitMat h1 = read_alist_file(a.seed_alist);
        BitMat h2 = a.seed_alist2.empty() ? h1 : read_alist_file(a.seed_alist2);
        code = hgp(h1, h2);
    } else if (a.family == "hgp-random") {
        BitMat h = random_regular_ldpc(a.checks, a.vars, a.col_w, a.row_w, a.gen_seed);
        if (!a.seed_out.empty()) write_alist_file(a.seed_out, h);
        code = hgp(h);
    } else {
        throw std::runtime_error("unknown family '" + a.family +
                                 "' (expected b1, hgp or hgp-random)");
    }

    std::vector<std::string> problems = validate(code);
    if (!problems.empty()) {
        for (const std::string& p : problems) std::cerr << "problem: " << p << "\n";
        throw std::runtime_error("constructed code fails validation; not writing it");
    }

    std::string name = a.name;
    if (name.empty()) {
        std::ostringstream os;
        os << (a.family == "b1" ? "b1" : "hgp") << "_" << code.n() << "_" << code.k();
        name = os.str();
    }
    code.set_name(name);

    if (a.out == "-") {
        write_css(std::cout, code);
    } else {
        write_css_file(a.out, code);
    }
    std::cerr << name << ": [[" << code.n() << "," << code.k() << "]], h_x "
              << code.h_x().rows() << "x" << code.h_x().cols() << ", h_z " << code.h_z().rows()
              << "x" << code.h_z().cols() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Erasure-channel Monte Carlo for CSS LDPC codes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qldpc-erasure 0.1.0");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a failure-rate sweep over erasure rates");
    sweep->set_config("--config");
    sweep->add_option("--code", sweep_args.code, "bundled code name or path to a .css file")
        ->required();
    sweep->add_option("--side", sweep_args.side, "error side to decode: X or Z")
        ->capture_default_str();
    add_decoder_args(sweep, sweep_args.dec);
    sweep->add_option("--rates", sweep_args.rates,
                      "comma list of rates and lo:hi:step ranges, e.g. 0.2:0.3:0.02")
        ->required();
    sweep->add_option("--trials", sweep_args.trials, "trials per rate (cap with --min-failures)")
        ->capture_default_str();
    sweep->add_option("--min-failures", sweep_args.min_failures,
                      "stop a rate early after this many failures (0 = fixed trials)")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "master seed; trials are seeded per index")
        ->capture_default_str();
    sweep->add_option("--format", sweep_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "output path, - for stdout")
        ->capture_default_str();
    sweep->add_option("--workers", sweep_args.workers,
                      "worker threads (default: QLDPC_WORKERS or 1); results do "
                      "not depend on this")
        ->capture_default_str();
    sweep->add_flag("--no-timing", sweep_args.no_timing,
                    "write 0.000 in the seconds column for reproducible output");
    sweep->add_option("--dump", sweep_args.dump, "write per-trial instances to this file");

    std::string validate_code;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check CSS invariants of a code");
    validate_cmd->add_option("--code", validate_code, "bundled code name or .css path")
        ->required();

    std::string describe_code;
    CLI::App* describe = app.add_subcommand("describe-code", "Print code parameters and degrees");
    describe->add_option("--code", describe_code, "bundled code name or .css path")->required();

    ReplayArgs replay_args;
    CLI::App* replay = app.add_subcommand("replay", "Re-decode dumped instances");
    replay->add_option("--code", replay_args.code, "bundled code name or .css path")->required();
    replay->add_option("--side", replay_args.side, "error side to decode: X or Z")
        ->capture_default_str();
    add_decoder_args(replay, replay_args.dec);
    replay->add_option("--in", replay_args.in, "dump file, - for stdin")->capture_default_str();

    GenCodeArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen-code", "Construct a code and write it as .css");
    gen->add_option("--family", gen_args.family, "b1 | hgp | hgp-random")->required();
    gen->add_option("--out", gen_args.out, "output .css path, - for stdout")
        ->capture_default_str();
    gen->add_option("--name", gen_args.name, "code name (default hgp_<n>_<k> style)");
    gen->add_option("--seed-alist", gen_args.seed_alist, "hgp: first classical seed matrix");
    gen->add_option("--seed-alist2", gen_args.seed_alist2,
                    "hgp: second seed matrix (default: same as first)");
    gen->add_option("--checks", gen_args.checks, "hgp-random: seed check count")
        ->capture_default_str();
    gen->add_option("--vars", gen_args.vars, "hgp-random: seed variable count")
        ->capture_default_str();
    gen->add_option("--col-w", gen_args.col_w, "hgp-random: seed column weight")
        ->capture_default_str();
    gen->add_option("--row-w", gen_args.row_w, "hgp-random: seed row weight")
        ->capture_default_str();
    gen->add_option("--gen-seed", gen_args.gen_seed, "hgp-random: RNG seed for the seed matrix")
        ->capture_default_str();
    gen->add_option("--seed-out", gen_args.seed_out,
                    "hgp-random: also write the seed matrix as alist");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sweep)) return cmd_sweep(sweep_args);
        if (app.got_subcommand(validate_cmd)) return cmd_validate(validate_code);
        if (app.got_subcommand(describe)) return cmd_describe(describe_code);
        if (app.got_subcommand(replay)) return cmd_replay(replay_args);
        if (app.got_subcommand(gen)) return cmd_gen_code(gen_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
