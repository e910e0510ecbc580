#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qldpc/code.hpp"
#include "qldpc/io.hpp"

using namespace qldpc;

namespace {

BitMat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    BitMat m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c, true);
    return m;
}

std::filesystem::path temp_file(const char* stem) {
    return std::filesystem::temp_directory_path() / stem;
}

}  // namespace

TEST_CASE("alist round trip preserves ragged matrices") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 10; ++it) {
        BitMat m = random_mat(rng, 3 + rng() % 6, 4 + rng() % 10, 0.35);
        std::stringstream buf;
        write_alist(buf, m);
        CHECK(read_alist(buf) == m);
    }
    BitMat reg = random_regular_ldpc(12, 16, 3, 4, 5);
    std::stringstream buf;
    write_alist(buf, reg);
    CHECK(read_alist(buf) == reg);
}

TEST_CASE("alist reader accepts padded and unpadded adjacency lines") {
    BitMat want = BitMat::from_dense({{1, 1, 0}, {0, 1, 1}});
    std::string unpadded =
        "3 2\n2 2\n1 2 1\n2 2\n"
        "1\n1 2\n2\n"
        "1 2\n2 3\n";
    std::string padded =
        "3 2\n2 2\n1 2 1\n2 2\n"
        "1 0\n1 2\n2 0\n"
        "1 2\n2 3\n";
    std::istringstream a(unpadded), b(padded);
    CHECK(read_alist(a) == want);
    CHECK(read_alist(b) == want);
}

TEST_CASE("alist parse failures carry line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_alist(in);
    };
    CHECK_THROWS_WITH_AS(parse("5\n"), "parse error at line 1: expected 'n m'",
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("3 x\n"), "parse error at line 1: unexpected token 'x'",
                         std::runtime_error);
    // Column 0 claims degree 2 but lists a single check.
    CHECK_THROWS_WITH_AS(parse("3 2\n2 2\n2 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n"),
                         "parse error at line 5: column degree mismatch", std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("3 2\n2 2\n1 2 1\n2 2\n7\n1 2\n2\n1 2\n2 3\n"),
                         "parse error at line 5: check index out of range", std::runtime_error);
    CHECK_THROWS_AS(parse(""), std::runtime_error);
}

TEST_CASE("css round trip keeps both matrices, empty rows included") {
    BitMat hx = BitMat::from_dense({{1, 1, 1, 1}, {0, 0, 0, 0}});
    BitMat hz = BitMat::from_dense({{1, 1, 0, 0}});
    CssCode code(hx, hz, "tiny");
    std::stringstream buf;
    write_css(buf, code);
    CssCode back = read_css(buf, "tiny");
    CHECK(back.h_x() == hx);
    CHECK(back.h_z() == hz);
    CHECK(back.n() == 4);
}

TEST_CASE("css reader skips comments and tolerates trailing ones") {
    std::istringstream in(
        "# toy code\n"
        "4 1 1   # n m_x m_z\n"
        "0 1 2 3\n"
        "# the z side\n"
        "0 1\n");
    CssCode c = read_css(in, "commented");
    CHECK(c.h_x().row_weight(0) == 4);
    CHECK(c.h_z().row_weight(0) == 2);

    std::istringstream bad("4 1 1\n0 9\n0 1\n");
    CHECK_THROWS_WITH_AS(read_css(bad), "parse error at line 2: column index out of range",
                         std::runtime_error);
}

TEST_CASE("file round trips set the name from the stem") {
    auto path = temp_file("qldpc_io_test.css");
    CssCode code(BitMat::from_dense({{1, 1}}), BitMat(0, 2), "whatever");
    write_css_file(path.string(), code);
    CssCode back = read_css_file(path.string());
    CHECK(back.name() == "qldpc_io_test");
    CHECK(back.h_x() == code.h_x());
    std::filesystem::remove(path);

    auto apath = temp_file("qldpc_io_test.alist");
    BitMat m = random_regular_ldpc(6, 8, 3, 4, 2, {true, false, 2000});
    write_alist_file(apath.string(), m);
    CHECK(read_alist_file(apath.string()) == m);
    std::filesystem::remove(apath);
}

TEST_CASE("data_dir prefers a non-empty environment override") {
    std::string fallback = data_dir();
    CHECK_FALSE(fallback.empty());
    setenv("QLDPC_DATA_DIR", "/tmp/qldpc-alt", 1);
    CHECK(data_dir() == "/tmp/qldpc-alt");
    setenv("QLDPC_DATA_DIR", "", 1);
    CHECK(data_dir() == fallback);
    unsetenv("QLDPC_DATA_DIR");
    CHECK(data_dir() == fallback);
}

TEST_CASE("load_code resolves bundled names and explicit paths") {
    CssCode b1 = load_code("b1_882_24");
    CHECK(b1.n() == 882);
    CHECK(b1.k() == 24);
    // The bundled file is exactly what the built-in constructor produces.
    CssCode built = b1_code();
    CHECK(b1.h_x() == built.h_x());
    CHECK(b1.h_z() == built.h_z());

    auto path = temp_file("qldpc_load_test.css");
    write_css_file(path.string(), built);
    CHECK(load_code(path.string()).n() == 882);
    std::filesystem::remove(path);

    CHECK_THROWS_WITH_AS(load_code("nope_xyz"),
                         "code not found: nope_xyz (no such file, and no bundled code of that name)",
                         std::runtime_error);
}

TEST_CASE("bundled product codes regenerate from their recorded seeds") {
    namespace fs = std::filesystem;
    struct Entry {
        const char* name;
        std::size_t checks, vars;
        std::uint64_t seed;
        std::size_t n, k;
    };
    for (const Entry& e : {Entry{"hgp_1600_64", 24, 32, 971, 1600, 64},
                           Entry{"hgp_2025_81", 27, 36, 8, 2025, 81}}) {
        CssCode code = load_code(e.name);
        CHECK(code.n() == e.n);
        CHECK(code.k() == long(e.k));
        CHECK(validate(code).empty());

        fs::path alist = fs::path(data_dir()) / "codes" / (std::string(e.name) + ".seed.alist");
        REQUIRE(fs::exists(alist));
        BitMat seed_mat = read_alist_file(alist.string());
        CHECK(seed_mat == random_regular_ldpc(e.checks, e.vars, 3, 4, e.seed));
        CssCode rebuilt = hgp(seed_mat, e.name);
        CHECK(rebuilt.h_x() == code.h_x());
        CHECK(rebuilt.h_z() == code.h_z());
    }
}
