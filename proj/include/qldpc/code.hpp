#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qldpc/gf2.hpp"

namespace qldpc {

// Bipartite adjacency of one check matrix, laid out for message passing.
// Edges are numbered contiguously per check; vars hold indices into the same
// edge array.
struct TannerGraph {
    std::size_t n_vars = 0;
    std::size_t n_checks = 0;
    std::size_t n_edges = 0;
    std::vector<std::size_t> chk_off;    // n_checks + 1 offsets into var_of
    std::vector<std::uint32_t> var_of;   // variable endpoint of edge e
    std::vector<std::size_t> var_off;    // n_vars + 1 offsets into edges_of_var
    std::vector<std::uint32_t> edges_of_var;
    std::vector<std::uint32_t> chk_of;   // check endpoint of edge e

    static TannerGraph from_check_matrix(const BitMat& h);
    std::size_t check_degree(std::size_t c) const { return chk_off[c + 1] - chk_off[c]; }
    std::size_t var_degree(std::size_t v) const { return var_off[v + 1] - var_off[v]; }
};

// CSS stabilizer code held as its two binary check matrices. Construction
// never rejects: validate() reports violations so that broken inputs can be
// inspected rather than bounced.
class CssCode {
public:
    CssCode() = default;
    CssCode(BitMat h_x, BitMat h_z, std::string name = "");

    const BitMat& h_x() const { return h_x_; }
    const BitMat& h_z() const { return h_z_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    std::size_t n() const { return n_; }
    long k() const { return k_; }            // may go negative for invalid pairs
    std::size_t rank_x() const { return rank_x_; }
    std::size_t rank_z() const { return rank_z_; }

    const TannerGraph& tanner_x() const { return tanner_x_; }
    const TannerGraph& tanner_z() const { return tanner_z_; }

private:
    BitMat h_x_, h_z_;
    std::string name_;
    std::size_t n_ = 0;
    long k_ = 0;
    std::size_t rank_x_ = 0, rank_z_ = 0;
    TannerGraph tanner_x_, tanner_z_;
};

// Human-readable invariant violations; empty means the pair is a valid CSS
// code. Each anticommuting pair is named individually (capped).
std::vector<std::string> validate(const CssCode& code, std::size_t max_reports = 16);

// Hypergraph product of two classical check matrices:
//   H_X = [H1 (x) I_n2 | I_m1 (x) H2^T],  H_Z = [I_n1 (x) H2 | H1^T (x) I_m2].
CssCode hgp(const BitMat& h1, const BitMat& h2, std::string name = "");
CssCode hgp(const BitMat& h, std::string name = "");  // square product of one seed

// Base matrix over F2[x]/(x^L - 1): each cell is a list of exponents
// (empty = zero entry). Used by lifted_product.
struct LiftedBase {
    std::size_t rows = 0, cols = 0;
    std::size_t L = 1;
    std::vector<std::vector<std::vector<std::size_t>>> cell;  // [r][c] -> exponents

    static LiftedBase zero(std::size_t rows, std::size_t cols, std::size_t L);
    static LiftedBase from_binary(const BitMat& m);  // L = 1 collapse
};

// Lifted product over the circulant ring; with L = 1 this degenerates to the
// plain hypergraph product of the collapsed binary bases.
CssCode lifted_product(const LiftedBase& a, const LiftedBase& b, std::string name = "");

// The [[882, 24]] lifted-product code: L = 63, a 7x7 block-circulant base
// with monomial entries x^27, x^54, x^0 and scalar base 1 + x + x^6.
CssCode b1_code();

struct RegularLdpcOptions {
    bool require_full_rank = true;
    bool forbid_four_cycles = true;  // no two columns sharing two checks
    int max_attempts = 2000;
};

// Random (col_w, row_w)-biregular check matrix via repeated socket matching,
// resampled until the structural constraints hold. Deterministic in `seed`.
BitMat random_regular_ldpc(std::size_t checks, std::size_t vars, std::size_t col_w,
                           std::size_t row_w, std::uint64_t seed,
                           const RegularLdpcOptions& opts = {});

}  // namespace qldpc
