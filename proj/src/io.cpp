#include "qldpc/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qldpc {

namespace {

[[noreturn]] void parse_fail(const std::string& what, std::size_t line) {
    throw std::runtime_error("parse error at line " + std::to_string(line) + ": " + what);
}

// Pulls the next non-empty, non-comment line; returns false on EOF.
bool next_line(std::istream& in, std::string& out, std::size_t& lineno, bool skip_blank = true) {
    while (std::getline(in, out)) {
        ++lineno;
        std::size_t i = out.find_first_not_of(" \t\r");
        if (i == std::string::npos) {
            if (skip_blank) continue;
            return true;
        }
        if (out[i] == '#') continue;
        return true;
    }
    return false;
}

std::vector<long> parse_ints(const std::string& line, std::size_t lineno) {
    std::vector<long> out;
    std::istringstream ss(line);
    long v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) {
        std::string tail;
        ss.clear();
        ss >> tail;
        if (!tail.empty() && tail[0] != '#') parse_fail("unexpected token '" + tail + "'", lineno);
    }
    return out;
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

}  // namespace

BitMat read_alist(std::istream& in) {
    std::size_t lineno = 0;
    std::string line;
    if (!next_line(in, line, lineno)) parse_fail("empty alist", lineno);
    auto head = parse_ints(line, lineno);
    if (head.size() != 2 || head[0] <= 0 || head[1] <= 0) parse_fail("expected 'n m'", lineno);
    std::size_t n = head[0], m = head[1];

    if (!next_line(in, line, lineno)) parse_fail("missing max degrees", lineno);
    auto degmax = parse_ints(line, lineno);
    if (degmax.size() != 2) parse_fail("expected max column and row degree", lineno);

    if (!next_line(in, line, lineno)) parse_fail("missing column degrees", lineno);
    auto col_deg = parse_ints(line, lineno);
    if (col_deg.size() != n) parse_fail("column degree count mismatch", lineno);

    if (!next_line(in, line, lineno)) parse_fail("missing row degrees", lineno);
    auto row_deg = parse_ints(line, lineno);
    if (row_deg.size() != m) parse_fail("row degree count mismatch", lineno);

    BitMat h(m, n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!next_line(in, line, lineno)) parse_fail("missing adjacency for column", lineno);
        auto idx = parse_ints(line, lineno);
        std::size_t seen = 0;
        for (long i : idx) {
            if (i == 0) continue;  // zero padding
            if (i < 0 || std::size_t(i) > m) parse_fail("check index out of range", lineno);
            h.set(std::size_t(i) - 1, v, true);
            ++seen;
        }
        if (seen != std::size_t(col_deg[v])) parse_fail("column degree mismatch", lineno);
    }
    for (std::size_t c = 0; c < m; ++c) {
        if (!next_line(in, line, lineno)) parse_fail("missing adjacency for row", lineno);
        auto idx = parse_ints(line, lineno);
        std::size_t seen = 0;
        for (long i : idx) {
            if (i == 0) continue;
            if (i < 0 || std::size_t(i) > n) parse_fail("bit index out of range", lineno);
            if (!h.get(c, std::size_t(i) - 1)) parse_fail("row list disagrees with column lists", lineno);
            ++seen;
        }
        if (seen != std::size_t(row_deg[c])) parse_fail("row degree mismatch", lineno);
    }
    return h;
}

BitMat read_alist_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open alist file: " + path);
    return read_alist(f);
}

void write_alist(std::ostream& out, const BitMat& h) {
    std::size_t m = h.rows(), n = h.cols();
    std::vector<std::vector<std::size_t>> cols(n), rows(m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (h.get(r, c)) {
                cols[c].push_back(r + 1);
                rows[r].push_back(c + 1);
            }
    std::size_t dc = 0, dr = 0;
    for (auto& v : cols) dc = std::max(dc, v.size());
    for (auto& v : rows) dr = std::max(dr, v.size());

    out << n << ' ' << m << '\n' << dc << ' ' << dr << '\n';
    for (std::size_t c = 0; c < n; ++c) out << cols[c].size() << (c + 1 < n ? ' ' : '\n');
    for (std::size_t r = 0; r < m; ++r) out << rows[r].size() << (r + 1 < m ? ' ' : '\n');
    auto emit = [&out](const std::vector<std::size_t>& v, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) out << (i < v.size() ? v[i] : 0) << (i + 1 < width ? ' ' : '\n');
    };
    for (std::size_t c = 0; c < n; ++c) emit(cols[c], dc);
    for (std::size_t r = 0; r < m; ++r) emit(rows[r], dr);
}

void write_alist_file(const std::string& path, const BitMat& h) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_alist(f, h);
}

CssCode read_css(std::istream& in, std::string name) {
    std::size_t lineno = 0;
    std::string line;
    if (!next_line(in, line, lineno)) parse_fail("empty css file", lineno);
    auto head = parse_ints(line, lineno);
    if (head.size() != 3 || head[0] <= 0 || head[1] < 0 || head[2] < 0)
        parse_fail("expected 'n m_x m_z'", lineno);
    std::size_t n = head[0], mx = head[1], mz = head[2];

    auto read_rows = [&](std::size_t m) {
        BitMat h(m, n);
        for (std::size_t r = 0; r < m; ++r) {
            if (!next_line(in, line, lineno, /*skip_blank=*/false))
                parse_fail("missing check row", lineno);
            for (long c : parse_ints(line, lineno)) {
                if (c < 0 || std::size_t(c) >= n) parse_fail("column index out of range", lineno);
                h.set(r, std::size_t(c), true);
            }
        }
        return h;
    };
    BitMat hx = read_rows(mx);
    BitMat hz = read_rows(mz);
    return CssCode(std::move(hx), std::move(hz), std::move(name));
}

CssCode read_css_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open css file: " + path);
    return read_css(f, file_stem(path));
}

void write_css(std::ostream& out, const CssCode& code) {
    out << code.n() << ' ' << code.h_x().rows() << ' ' << code.h_z().rows() << '\n';
    auto rows = [&out](const BitMat& h) {
        for (std::size_t r = 0; r < h.rows(); ++r) {
            bool first = true;
            for (std::size_t c = 0; c < h.cols(); ++c)
                if (h.get(r, c)) {
                    out << (first ? "" : " ") << c;
                    first = false;
                }
            out << '\n';
        }
    };
    rows(code.h_x());
    rows(code.h_z());
}

void write_css_file(const std::string& path, const CssCode& code) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_css(f, code);
}

std::string data_dir() {
    if (const char* env = std::getenv("QLDPC_DATA_DIR"); env && *env) return env;
#ifdef QLDPC_SOURCE_DATA_DIR
    return QLDPC_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

CssCode load_code(const std::string& path_or_name) {
    namespace fs = std::filesystem;
    if (fs::exists(path_or_name)) return read_css_file(path_or_name);
    fs::path bundled = fs::path(data_dir()) / "codes" / (path_or_name + ".css");
    if (fs::exists(bundled)) return read_css_file(bundled.string());
    throw std::runtime_error("code not found: " + path_or_name +
                             " (no such file, and no bundled code of that name)");
}

}  // namespace qldpc
