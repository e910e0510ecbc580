// Python bindings for the erasure-decoding core. The surface mirrors the
// C++ API closely; bit vectors and matrices cross the boundary as index
// lists and dense 0/1 nested lists, which keeps the module free of any
// numpy dependency.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qldpc/bp.hpp"
#include "qldpc/io.hpp"
#include "qldpc/ml.hpp"
#include "qldpc/peeling.hpp"
#include "qldpc/sim.hpp"

namespace py = pybind11;
using namespace qldpc;

namespace {

std::vector<std::vector<int>> to_dense(const BitMat& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out[r][c] = 1;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Erasure decoding for CSS quantum LDPC codes";

    py::class_<BitVec>(m, "BitVec")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def_static("from_indices", &BitVec::from_indices, py::arg("n"), py::arg("indices"))
        .def("__len__", &BitVec::size)
        .def("get", &BitVec::get, py::arg("i"))
        .def("set", &BitVec::set, py::arg("i"), py::arg("value"))
        .def("popcount", &BitVec::popcount)
        .def("indices", &BitVec::indices)
        .def("__eq__", [](const BitVec& a, const BitVec& b) { return a == b; })
        .def("__xor__", [](const BitVec& a, const BitVec& b) { return a ^ b; })
        .def("__repr__", [](const BitVec& v) {
            std::ostringstream os;
            os << "BitVec(n=" << v.size() << ", weight=" << v.popcount() << ")";
            return os.str();
        });

    py::class_<BitMat>(m, "BitMat")
        .def(py::init<std::size_t, std::size_t>(), py::arg("rows"), py::arg("cols"))
        .def_static("from_dense", &BitMat::from_dense, py::arg("rows"))
        .def_static("identity", &BitMat::identity, py::arg("n"))
        .def_property_readonly("rows", &BitMat::rows)
        .def_property_readonly("cols", &BitMat::cols)
        .def("get", &BitMat::get, py::arg("r"), py::arg("c"))
        .def("set", &BitMat::set, py::arg("r"), py::arg("c"), py::arg("value"))
        .def("rank", &BitMat::rank)
        .def("to_dense", &to_dense)
        .def("mat_vec", &BitMat::mat_vec, py::arg("v"))
        .def("__eq__", [](const BitMat& a, const BitMat& b) { return a == b; })
        .def("__repr__", [](const BitMat& v) {
            std::ostringstream os;
            os << "BitMat(" << v.rows() << "x" << v.cols() << ")";
            return os.str();
        });

    py::enum_<Side>(m, "Side").value("X", Side::X).value("Z", Side::Z);

    py::class_<CssCode>(m, "CssCode")
        .def(py::init<BitMat, BitMat, std::string>(), py::arg("h_x"), py::arg("h_z"),
             py::arg("name") = "")
        .def_property_readonly("n", &CssCode::n)
        .def_property_readonly("k", &CssCode::k)
        .def_property_readonly("name", &CssCode::name)
        .def_property_readonly("h_x", &CssCode::h_x)
        .def_property_readonly("h_z", &CssCode::h_z)
        .def("__repr__", [](const CssCode& c) {
            std::ostringstream os;
            os << "CssCode(name='" << c.name() << "', n=" << c.n() << ", k=" << c.k() << ")";
            return os.str();
        });

    m.def("validate", &validate, py::arg("code"), py::arg("max_reports") = 16);
    m.def("hgp", py::overload_cast<const BitMat&, const BitMat&, std::string>(&hgp),
          py::arg("h1"), py::arg("h2"), py::arg("name") = "");
    m.def("hgp", py::overload_cast<const BitMat&, std::string>(&hgp), py::arg("h"),
          py::arg("name") = "");
    m.def("b1_code", &b1_code);
    m.def(
        "random_regular_ldpc",
        [](std::size_t checks, std::size_t vars, std::size_t col_w, std::size_t row_w,
           std::uint64_t seed, bool require_full_rank, bool forbid_four_cycles,
           int max_attempts) {
            RegularLdpcOptions opts{require_full_rank, forbid_four_cycles, max_attempts};
            return random_regular_ldpc(checks, vars, col_w, row_w, seed, opts);
        },
        py::arg("checks"), py::arg("vars"), py::arg("col_w"), py::arg("row_w"),
        py::arg("seed"), py::arg("require_full_rank") = true,
        py::arg("forbid_four_cycles") = true, py::arg("max_attempts") = 2000);
    m.def("load_code", &load_code, py::arg("path_or_name"));

    py::class_<ErasureInstance>(m, "ErasureInstance")
        .def_readonly("rate", &ErasureInstance::rate)
        .def_readonly("seed", &ErasureInstance::seed)
        .def_readonly("trial", &ErasureInstance::trial)
        .def_readonly("mask", &ErasureInstance::mask)
        .def_readonly("error", &ErasureInstance::error)
        .def_readonly("syndrome", &ErasureInstance::syndrome);

    m.def("sample_instance", &sample_instance, py::arg("code"), py::arg("side"),
          py::arg("p"), py::arg("seed"), py::arg("trial"));
    m.def("syndrome_of", &syndrome_of, py::arg("code"), py::arg("side"), py::arg("error"));

    py::enum_<DecodeStatus>(m, "DecodeStatus")
        .value("Converged", DecodeStatus::Converged)
        .value("NonConvergence", DecodeStatus::NonConvergence);

    py::enum_<Outcome>(m, "Outcome")
        .value("ExactMatch", Outcome::ExactMatch)
        .value("DegenerateMatch", Outcome::DegenerateMatch)
        .value("LogicalError", Outcome::LogicalError)
        .value("DecoderFailure", Outcome::DecoderFailure);

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("status", &DecodeResult::status)
        .def_readonly("estimate", &DecodeResult::estimate)
        .def_readonly("rounds_used", &DecodeResult::rounds_used)
        .def_readonly("bp_iterations_total", &DecodeResult::bp_iterations_total);

    py::class_<BpConfig>(m, "BpConfig")
        .def(py::init<>())
        .def_readwrite("iters", &BpConfig::iters)
        .def_readwrite("llr_max", &BpConfig::llr_max)
        .def_readwrite("llr_min", &BpConfig::llr_min)
        .def_readwrite("gamma", &BpConfig::gamma)
        .def_readwrite("c_opt", &BpConfig::c_opt);

    m.def("bp_decode", &bp_decode, py::arg("code"), py::arg("side"), py::arg("instance"),
          py::arg("config") = BpConfig{});
    m.def("bpgd_decode", &bpgd_decode, py::arg("code"), py::arg("side"), py::arg("instance"),
          py::arg("config") = BpConfig{});
    m.def("peel_decode", &peel_decode, py::arg("code"), py::arg("side"), py::arg("instance"));
    m.def("pruned_peel_decode", &pruned_peel_decode, py::arg("code"), py::arg("side"),
          py::arg("instance"), py::arg("prune_depth"));

    py::class_<MlResult>(m, "MlResult")
        .def_readonly("decode", &MlResult::decode)
        .def_readonly("decodable", &MlResult::decodable)
        .def_readonly("outcome", &MlResult::outcome);
    m.def("ml_decode", &ml_decode, py::arg("code"), py::arg("side"), py::arg("instance"),
          py::arg("fair_guess") = false);

    m.def("classify",
          py::overload_cast<const CssCode&, Side, const BitVec&, const BitVec&>(&classify),
          py::arg("code"), py::arg("side"), py::arg("error"), py::arg("estimate"));

    py::enum_<DecoderKind>(m, "DecoderKind")
        .value("Bp", DecoderKind::Bp)
        .value("Bpgd", DecoderKind::Bpgd)
        .value("BpgdDamped", DecoderKind::BpgdDamped)
        .value("BpgdAdjLlr", DecoderKind::BpgdAdjLlr)
        .value("BpgdCombined", DecoderKind::BpgdCombined)
        .value("Peeling", DecoderKind::Peeling)
        .value("PrunedPeeling", DecoderKind::PrunedPeeling)
        .value("Ml", DecoderKind::Ml);
    m.def("decoder_from_string", &decoder_from_string, py::arg("name"));
    m.def("decoder_name", [](DecoderKind k) { return to_string(k); }, py::arg("kind"));

    py::class_<ParamTables>(m, "ParamTables")
        .def_static("load_default", &ParamTables::load_default)
        .def("gamma_for",
             [](const ParamTables& t, const std::string& code, double p) {
                 return t.gamma.lookup(code, p);
             },
             py::arg("code"), py::arg("p"))
        .def("c_opt_for",
             [](const ParamTables& t, const std::string& code, double p) {
                 return t.c_opt.lookup(code, p);
             },
             py::arg("code"), py::arg("p"))
        .def("c_opt_combined_for",
             [](const ParamTables& t, const std::string& code, double p) {
                 return t.c_opt_combined.lookup(code, p);
             },
             py::arg("code"), py::arg("p"));

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("code_name", &SweepSpec::code_name)
        .def_readwrite("side", &SweepSpec::side)
        .def_readwrite("decoder", &SweepSpec::decoder)
        .def_readwrite("rates", &SweepSpec::rates)
        .def_readwrite("trials", &SweepSpec::trials)
        .def_readwrite("master_seed", &SweepSpec::master_seed)
        .def_readwrite("bp_iters", &SweepSpec::bp_iters)
        .def_readwrite("llr_max", &SweepSpec::llr_max)
        .def_readwrite("gamma_override", &SweepSpec::gamma_override)
        .def_readwrite("c_opt_override", &SweepSpec::c_opt_override)
        .def_readwrite("prune_depth", &SweepSpec::prune_depth)
        .def_readwrite("min_failures", &SweepSpec::min_failures)
        .def_readwrite("workers", &SweepSpec::workers)
        .def_readwrite("record_timing", &SweepSpec::record_timing)
        .def_readwrite("ml_fair_guess", &SweepSpec::ml_fair_guess)
        .def_readwrite("dump_path", &SweepSpec::dump_path);

    py::class_<PointStats>(m, "PointStats")
        .def_readonly("rate", &PointStats::rate)
        .def_readonly("trials", &PointStats::trials)
        .def_readonly("exact", &PointStats::exact)
        .def_readonly("degenerate", &PointStats::degenerate)
        .def_readonly("logical", &PointStats::logical)
        .def_readonly("nonconv", &PointStats::nonconv)
        .def_readonly("syndrome_violations", &PointStats::syndrome_violations)
        .def_readonly("failure_rate", &PointStats::failure_rate)
        .def_readonly("ci_low", &PointStats::ci_low)
        .def_readonly("ci_high", &PointStats::ci_high)
        .def_readonly("seconds", &PointStats::seconds)
        .def_readonly("bp_iterations_total", &PointStats::bp_iterations_total)
        .def_readonly("gamma_used", &PointStats::gamma_used)
        .def_readonly("c_opt_used", &PointStats::c_opt_used)
        .def_readonly("unbiased_failure_rate", &PointStats::unbiased_failure_rate);

    m.def("wilson_interval", &wilson_interval, py::arg("fails"), py::arg("trials"));

    m.def(
        "run_sweep",
        [](const CssCode& code, const SweepSpec& spec, const ParamTables* tables) {
            py::gil_scoped_release release;
            return run_sweep(code, spec, tables);
        },
        py::arg("code"), py::arg("spec"), py::arg("tables") = nullptr);

    m.def("sweep_csv", [](const CssCode& code, const SweepSpec& spec,
                          const std::vector<PointStats>& points) {
        std::ostringstream os;
        emit_csv(os, code, spec, points);
        return os.str();
    });
    m.def("sweep_json", [](const CssCode& code, const SweepSpec& spec,
                           const std::vector<PointStats>& points) {
        std::ostringstream os;
        emit_json(os, code, spec, points);
        return os.str();
    });

    m.def("format_dump_line", &format_dump_line, py::arg("instance"));
    m.def("parse_dump_line", &parse_dump_line, py::arg("line"), py::arg("n_vars"),
          py::arg("n_checks"));
}
