#include "qldpc/params.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qldpc/io.hpp"

namespace qldpc {

ParamTable ParamTable::parse(std::istream& in, const std::string& origin) {
    ParamTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string code;
        if (!(ls >> code)) continue;  // blank or comment-only
        Range r{};
        if (!(ls >> r.lo >> r.hi >> r.value))
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected `code p_lo p_hi value`");
        if (r.lo > r.hi)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty rate range");
        t.rows_[code].push_back(r);
    }
    return t;
}

ParamTable ParamTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter table: " + path);
    return parse(in, path);
}

std::optional<double> ParamTable::lookup(const std::string& code, double p) const {
    auto it = rows_.find(code);
    if (it == rows_.end()) return std::nullopt;
    const double eps = 1e-9;
    double best_dist = 0;
    const Range* best = nullptr;
    for (const Range& r : it->second) {
        if (p >= r.lo - eps && p <= r.hi + eps) return r.value;
        double dist = p < r.lo ? r.lo - p : p - r.hi;
        if (!best || dist < best_dist) {
            best = &r;
            best_dist = dist;
        }
    }
    if (!best) return std::nullopt;
    return best->value;
}

ParamTables ParamTables::load_default() {
    namespace fs = std::filesystem;
    ParamTables t;
    fs::path dir = fs::path(data_dir()) / "params";
    auto load_if_present = [&](const char* file, ParamTable& into) {
        fs::path p = dir / file;
        if (fs::exists(p)) into = ParamTable::load_file(p.string());
    };
    load_if_present("gamma.tsv", t.gamma);
    load_if_present("c_opt.tsv", t.c_opt);
    load_if_present("c_opt_combined.tsv", t.c_opt_combined);
    return t;
}

}  // namespace qldpc
