#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "qldpc/code.hpp"

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

// Any two columns of a 4-cycle-free matrix share at most one check.
bool has_four_cycle(const BitMat& h) {
    for (std::size_t a = 0; a < h.cols(); ++a)
        for (std::size_t b = a + 1; b < h.cols(); ++b) {
            int shared = 0;
            for (std::size_t r = 0; r < h.rows(); ++r)
                shared += h.get(r, a) && h.get(r, b);
            if (shared > 1) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("TannerGraph mirrors the check matrix") {
    BitMat h = BitMat::from_dense({{1, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 0, 0}});
    TannerGraph g = TannerGraph::from_check_matrix(h);
    CHECK(g.n_vars == 4);
    CHECK(g.n_checks == 3);
    CHECK(g.n_edges == 5);
    CHECK(g.check_degree(0) == 3);
    CHECK(g.check_degree(2) == 0);
    CHECK(g.var_degree(1) == 2);
    CHECK(g.var_degree(2) == 1);
    // Every edge agrees with the matrix from both endpoints.
    for (std::size_t c = 0; c < g.n_checks; ++c)
        for (std::size_t e = g.chk_off[c]; e < g.chk_off[c + 1]; ++e) {
            CHECK(h.get(c, g.var_of[e]));
            CHECK(g.chk_of[e] == c);
        }
    std::size_t edge_count = 0;
    for (std::size_t v = 0; v < g.n_vars; ++v)
        for (std::size_t k = g.var_off[v]; k < g.var_off[v + 1]; ++k) {
            std::uint32_t e = g.edges_of_var[k];
            CHECK(g.var_of[e] == v);
            ++edge_count;
        }
    CHECK(edge_count == g.n_edges);
}

TEST_CASE("hypergraph product satisfies the dimension formulas") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 8; ++it) {
        std::size_t m1 = 2 + rng() % 4, n1 = 3 + rng() % 5;
        std::size_t m2 = 2 + rng() % 4, n2 = 3 + rng() % 5;
        BitMat h1 = random_mat(rng, m1, n1, 0.45);
        BitMat h2 = random_mat(rng, m2, n2, 0.45);
        std::size_t r1 = h1.rank(), r2 = h2.rank();

        CssCode c = hgp(h1, h2);
        CHECK(c.n() == n1 * n2 + m1 * m2);
        long k = long((n1 - r1) * (n2 - r2)) + long((m1 - r1) * (m2 - r2));
        CHECK(c.k() == k);
        CHECK(c.h_x().rows() == m1 * n2);
        CHECK(c.h_z().rows() == n1 * m2);
        CHECK(validate(c).empty());
    }
}

TEST_CASE("square product of a full-rank seed") {
    // Too small to avoid 4-cycles, so only full rank is enforced.
    BitMat h = random_regular_ldpc(6, 8, 3, 4, 12, {true, false, 2000});
    REQUIRE(h.rank() == 6);
    CssCode c = hgp(h, "toy");
    CHECK(c.name() == "toy");
    CHECK(c.n() == 8 * 8 + 6 * 6);
    CHECK(c.k() == (8 - 6) * (8 - 6));
    CHECK(validate(c).empty());
    // X and Z graphs are cached and consistent with their matrices.
    CHECK(c.tanner_x().n_checks == c.h_x().rows());
    CHECK(c.tanner_z().n_vars == c.n());
}

TEST_CASE("validate names anticommuting rows and k can go negative") {
    CssCode bad(BitMat::identity(2), BitMat::identity(2), "bad");
    CHECK(bad.k() == -2);
    auto problems = validate(bad);
    // Rows (0,0) and (1,1) overlap oddly, plus the negative-k report.
    REQUIRE(problems.size() == 3);
    CHECK(problems[0].find("H_X row 0") != std::string::npos);
    CHECK(problems[2].find("k = -2") != std::string::npos);

    // Pair reports are capped so enormous broken inputs stay inspectable.
    CssCode worse(BitMat::identity(40), BitMat::identity(40));
    CHECK(validate(worse, 4).size() == 5);  // 4 capped pairs + negative k
}

TEST_CASE("lifted product with L = 1 collapses to the hypergraph product") {
    std::mt19937_64 rng(47);
    BitMat a = random_mat(rng, 3, 5, 0.5);
    BitMat b = random_mat(rng, 2, 4, 0.5);
    CssCode lifted = lifted_product(LiftedBase::from_binary(a), LiftedBase::from_binary(b));
    CssCode product = hgp(a, b);
    CHECK(lifted.h_x() == product.h_x());
    CHECK(lifted.h_z() == product.h_z());
}

TEST_CASE("lifted product over a nontrivial ring is a valid CSS code") {
    LiftedBase base = LiftedBase::zero(1, 2, 5);
    base.cell[0][0] = {0, 1};  // 1 + x
    base.cell[0][1] = {0, 2};  // 1 + x^2
    CssCode c = lifted_product(base, base);
    CHECK(c.n() == 5 * (2 * 2 + 1 * 1));
    CHECK(validate(c).empty());
}

TEST_CASE("bundled lifted-product code has the advertised parameters") {
    CssCode b1 = b1_code();
    CHECK(b1.n() == 882);
    CHECK(b1.k() == 24);
    CHECK(b1.rank_x() == 429);
    CHECK(b1.rank_z() == 429);
    CHECK(b1.h_x().rows() == 441);
    CHECK(b1.h_z().rows() == 441);
    // Row weights follow the base row: three monomial entries plus a
    // weight-3 polynomial block.
    CHECK(b1.h_x().row_weight(0) == 6);
    CHECK(validate(b1).empty());
}

TEST_CASE("random regular ldpc meets its structural contract") {
    BitMat h = random_regular_ldpc(24, 32, 3, 4, 971);
    CHECK(h.rows() == 24);
    CHECK(h.cols() == 32);
    for (std::size_t c = 0; c < 32; ++c) CHECK(h.col_weight(c) == 3);
    for (std::size_t r = 0; r < 24; ++r) CHECK(h.row_weight(r) == 4);
    CHECK(h.rank() == 24);
    CHECK_FALSE(has_four_cycle(h));

    CHECK(random_regular_ldpc(24, 32, 3, 4, 971) == h);   // same seed, same matrix
    CHECK(random_regular_ldpc(24, 32, 3, 4, 972) != h);

    // Socket counts must balance.
    CHECK_THROWS_AS(random_regular_ldpc(5, 8, 3, 4, 1), std::invalid_argument);

    RegularLdpcOptions loose;
    loose.forbid_four_cycles = false;
    loose.require_full_rank = false;
    BitMat tiny = random_regular_ldpc(3, 4, 3, 4, 9, loose);
    for (std::size_t c = 0; c < 4; ++c) CHECK(tiny.col_weight(c) == 3);
}

TEST_CASE("impossible regular ensembles give up with a clear error") {
    RegularLdpcOptions opts;
    opts.max_attempts = 50;
    // Weight-4 columns in 4 rows are all-ones, so every column pair shares
    // four checks and the rank is 1. Resampling must stop, not spin.
    CHECK_THROWS_AS(random_regular_ldpc(4, 4, 4, 4, 1, opts), std::runtime_error);
}
