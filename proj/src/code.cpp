#include "qldpc/code.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qldpc/rng.hpp"

namespace qldpc {

TannerGraph TannerGraph::from_check_matrix(const BitMat& h) {
    TannerGraph g;
    g.n_vars = h.cols();
    g.n_checks = h.rows();
    g.chk_off.assign(g.n_checks + 1, 0);
    std::vector<std::vector<std::uint32_t>> per_var(g.n_vars);

    for (std::size_t c = 0; c < g.n_checks; ++c) {
        g.chk_off[c] = g.var_of.size();
        const std::uint64_t* p = h.row_words(c);
        for (std::size_t k = 0; k < h.words_per_row(); ++k) {
            std::uint64_t w = p[k];
            while (w) {
                std::size_t v = k * 64 + std::countr_zero(w);
                per_var[v].push_back(std::uint32_t(g.var_of.size()));
                g.var_of.push_back(std::uint32_t(v));
                g.chk_of.push_back(std::uint32_t(c));
                w &= w - 1;
            }
        }
    }
    g.chk_off[g.n_checks] = g.var_of.size();
    g.n_edges = g.var_of.size();

    g.var_off.assign(g.n_vars + 1, 0);
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        g.var_off[v] = g.edges_of_var.size();
        for (std::uint32_t e : per_var[v]) g.edges_of_var.push_back(e);
    }
    g.var_off[g.n_vars] = g.edges_of_var.size();
    return g;
}

CssCode::CssCode(BitMat h_x, BitMat h_z, std::string name)
    : h_x_(std::move(h_x)), h_z_(std::move(h_z)), name_(std::move(name)) {
    if (h_x_.cols() != h_z_.cols())
        throw std::invalid_argument("CssCode: H_X and H_Z must have the same column count");
    n_ = h_x_.cols();
    rank_x_ = h_x_.rank();
    rank_z_ = h_z_.rank();
    k_ = long(n_) - long(rank_x_) - long(rank_z_);
    tanner_x_ = TannerGraph::from_check_matrix(h_x_);
    tanner_z_ = TannerGraph::from_check_matrix(h_z_);
}

std::vector<std::string> validate(const CssCode& code, std::size_t max_reports) {
    std::vector<std::string> out;
    const BitMat& hx = code.h_x();
    const BitMat& hz = code.h_z();
    for (std::size_t i = 0; i < hx.rows() && out.size() < max_reports; ++i) {
        for (std::size_t j = 0; j < hz.rows() && out.size() < max_reports; ++j) {
            std::uint64_t acc = 0;
            const std::uint64_t* a = hx.row_words(i);
            const std::uint64_t* b = hz.row_words(j);
            for (std::size_t k = 0; k < hx.words_per_row(); ++k) acc ^= a[k] & b[k];
            if (std::popcount(acc) & 1)
                out.push_back("H_X row " + std::to_string(i) + " and H_Z row " +
                              std::to_string(j) + " overlap oddly");
        }
    }
    if (code.k() < 0)
        out.push_back("negative logical count k = " + std::to_string(code.k()));
    return out;
}

CssCode hgp(const BitMat& h1, const BitMat& h2, std::string name) {
    std::size_t m1 = h1.rows(), n1 = h1.cols();
    std::size_t m2 = h2.rows(), n2 = h2.cols();
    BitMat hx = concat_h(kron(h1, BitMat::identity(n2)), kron(BitMat::identity(m1), h2.transpose()));
    BitMat hz = concat_h(kron(BitMat::identity(n1), h2), kron(h1.transpose(), BitMat::identity(m2)));
    return CssCode(std::move(hx), std::move(hz), std::move(name));
}

CssCode hgp(const BitMat& h, std::string name) { return hgp(h, h, std::move(name)); }

LiftedBase LiftedBase::zero(std::size_t rows, std::size_t cols, std::size_t L) {
    LiftedBase b;
    b.rows = rows;
    b.cols = cols;
    b.L = L;
    b.cell.assign(rows, std::vector<std::vector<std::size_t>>(cols));
    return b;
}

LiftedBase LiftedBase::from_binary(const BitMat& m) {
    LiftedBase b = zero(m.rows(), m.cols(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) b.cell[r][c] = {0};
    return b;
}

namespace {

// Entry-wise polynomial helpers over F2[x]/(x^L - 1), exponents kept sorted
// and deduplicated (a pair of equal exponents cancels).
std::vector<std::size_t> poly_normalize(std::vector<std::size_t> e, std::size_t L) {
    for (std::size_t& x : e) x %= L;
    std::sort(e.begin(), e.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.size();) {
        std::size_t j = i;
        while (j < e.size() && e[j] == e[i]) ++j;
        if ((j - i) & 1) out.push_back(e[i]);
        i = j;
    }
    return out;
}

std::vector<std::size_t> poly_mul(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b, std::size_t L) {
    std::vector<std::size_t> out;
    out.reserve(a.size() * b.size());
    for (std::size_t x : a)
        for (std::size_t y : b) out.push_back((x + y) % L);
    return poly_normalize(std::move(out), L);
}

std::vector<std::size_t> poly_conj(const std::vector<std::size_t>& a, std::size_t L) {
    std::vector<std::size_t> out;
    out.reserve(a.size());
    for (std::size_t x : a) out.push_back((L - x % L) % L);
    return poly_normalize(std::move(out), L);
}

LiftedBase ring_kron(const LiftedBase& a, const LiftedBase& b) {
    LiftedBase out = LiftedBase::zero(a.rows * b.rows, a.cols * b.cols, a.L);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (a.cell[i][j].empty()) continue;
            for (std::size_t r = 0; r < b.rows; ++r)
                for (std::size_t c = 0; c < b.cols; ++c) {
                    if (b.cell[r][c].empty()) continue;
                    out.cell[i * b.rows + r][j * b.cols + c] =
                        poly_mul(a.cell[i][j], b.cell[r][c], a.L);
                }
        }
    return out;
}

LiftedBase ring_conj_transpose(const LiftedBase& a) {
    LiftedBase out = LiftedBase::zero(a.cols, a.rows, a.L);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            out.cell[j][i] = poly_conj(a.cell[i][j], a.L);
    return out;
}

LiftedBase ring_identity(std::size_t n, std::size_t L) {
    LiftedBase out = LiftedBase::zero(n, n, L);
    for (std::size_t i = 0; i < n; ++i) out.cell[i][i] = {0};
    return out;
}

LiftedBase ring_concat_h(const LiftedBase& a, const LiftedBase& b) {
    LiftedBase out = LiftedBase::zero(a.rows, a.cols + b.cols, a.L);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) out.cell[i][j] = a.cell[i][j];
        for (std::size_t j = 0; j < b.cols; ++j) out.cell[i][a.cols + j] = b.cell[i][j];
    }
    return out;
}

BitMat expand(const LiftedBase& a) {
    BitMat out(a.rows * a.L, a.cols * a.L);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            for (std::size_t e : a.cell[i][j])
                for (std::size_t r = 0; r < a.L; ++r)
                    out.set(i * a.L + r, j * a.L + (r + e) % a.L, true);
    return out;
}

}  // namespace

CssCode lifted_product(const LiftedBase& a, const LiftedBase& b, std::string name) {
    if (a.L != b.L) throw std::invalid_argument("lifted_product: circulant sizes differ");
    LiftedBase bt = ring_conj_transpose(b);
    LiftedBase at = ring_conj_transpose(a);
    LiftedBase hx = ring_concat_h(ring_kron(a, ring_identity(b.cols, a.L)),
                                  ring_kron(ring_identity(a.rows, a.L), bt));
    LiftedBase hz = ring_concat_h(ring_kron(ring_identity(a.cols, a.L), b),
                                  ring_kron(at, ring_identity(b.rows, a.L)));
    CssCode code(expand(hx), expand(hz), std::move(name));
    // Any ring bases commute by construction, so a violation here can only
    // mean the expansion itself is broken.
    if (!validate(code, 1).empty())
        throw std::logic_error("lifted_product: stabilizer commutativity violated");
    return code;
}

CssCode b1_code() {
    const std::size_t L = 63;
    LiftedBase a = LiftedBase::zero(7, 7, L);
    // First row (x^27, 0, 0, 0, 0, x^54, 1), shifted cyclically. Other
    // placements of the same three monomials land on [[882,12]] instead.
    for (std::size_t i = 0; i < 7; ++i) {
        a.cell[i][i] = {27};
        a.cell[i][(i + 5) % 7] = {54};
        a.cell[i][(i + 6) % 7] = {0};
    }
    LiftedBase b = LiftedBase::zero(1, 1, L);
    b.cell[0][0] = {0, 1, 6};
    return lifted_product(a, b, "b1_882_24");
}

BitMat random_regular_ldpc(std::size_t checks, std::size_t vars, std::size_t col_w,
                           std::size_t row_w, std::uint64_t seed,
                           const RegularLdpcOptions& opts) {
    if (vars * col_w != checks * row_w)
        throw std::invalid_argument("random_regular_ldpc: socket counts differ");
    TrialRng rng(seed, 0);
    const std::size_t n_edges = vars * col_w;

    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        // Configuration model: check endpoints are fixed blocks of row_w
        // slots, variable endpoints come from a shuffled socket list. The
        // raw matching usually has duplicate edges and short cycles, which
        // are then repaired by degree-preserving swaps of var endpoints.
        std::vector<std::uint32_t> var(n_edges);
        for (std::size_t i = 0; i < n_edges; ++i) var[i] = std::uint32_t(i / col_w);
        for (std::size_t i = n_edges; i > 1; --i)
            std::swap(var[i - 1], var[rng.next_u64() % i]);
        auto chk_of_edge = [row_w](std::size_t e) { return e / row_w; };

        std::vector<std::uint32_t> mult(checks * vars, 0);
        for (std::size_t e = 0; e < n_edges; ++e) ++mult[chk_of_edge(e) * vars + var[e]];

        // Swapping edges e and f exchanges their variable endpoints; legal
        // only when the two new pairs are currently absent.
        auto try_swap = [&](std::size_t e, std::size_t f) {
            std::size_t ce = chk_of_edge(e), cf = chk_of_edge(f);
            std::uint32_t ve = var[e], vf = var[f];
            if (ce == cf || ve == vf) return false;
            if (mult[ce * vars + vf] || mult[cf * vars + ve]) return false;
            --mult[ce * vars + ve];
            --mult[cf * vars + vf];
            ++mult[ce * vars + vf];
            ++mult[cf * vars + ve];
            var[e] = vf;
            var[f] = ve;
            return true;
        };

        long budget = 200 * long(n_edges);
        bool ok = true;

        // Pass 1: clear duplicate edges.
        while (ok) {
            std::size_t dup = n_edges;
            for (std::size_t e = 0; e < n_edges && dup == n_edges; ++e)
                if (mult[chk_of_edge(e) * vars + var[e]] > 1) dup = e;
            if (dup == n_edges) break;
            bool moved = false;
            while (budget-- > 0) {
                if (try_swap(dup, rng.next_u64() % n_edges)) {
                    moved = true;
                    break;
                }
            }
            if (!moved) ok = false;
        }

        // Pass 2: break 4-cycles (two checks sharing two variables) the same
        // way. A swap can create new ones elsewhere, so rescan until clean.
        while (ok && opts.forbid_four_cycles) {
            std::size_t bad_edge = n_edges;
            for (std::size_t c1 = 0; c1 < checks && bad_edge == n_edges; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < checks && bad_edge == n_edges; ++c2) {
                    int shared = 0;
                    std::uint32_t w = 0;
                    const std::uint32_t* m1 = &mult[c1 * vars];
                    const std::uint32_t* m2 = &mult[c2 * vars];
                    for (std::size_t v = 0; v < vars; ++v)
                        if (m1[v] && m2[v] && ++shared == 2) {
                            w = std::uint32_t(v);
                            break;
                        }
                    if (shared < 2) continue;
                    for (std::size_t e = c2 * row_w; e < (c2 + 1) * row_w; ++e)
                        if (var[e] == w) {
                            bad_edge = e;
                            break;
                        }
                }
            if (bad_edge == n_edges) break;
            bool moved = false;
            while (budget-- > 0) {
                if (try_swap(bad_edge, rng.next_u64() % n_edges)) {
                    moved = true;
                    break;
                }
            }
            if (!moved) ok = false;
        }

        if (!ok) continue;
        BitMat h(checks, vars);
        for (std::size_t e = 0; e < n_edges; ++e) h.set(chk_of_edge(e), var[e], true);
        if (opts.require_full_rank && h.rank() != checks) continue;
        return h;
    }
    throw std::runtime_error("random_regular_ldpc: no valid matrix found within attempt budget");
}

}  // namespace qldpc
