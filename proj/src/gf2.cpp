#include "qldpc/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace qldpc {

namespace {
std::size_t g_bit_limit = std::size_t(1) << 26;

void check_alloc(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > g_bit_limit / rows)
        throw std::invalid_argument("BitMat: rows*cols exceeds configured bit limit");
}
}  // namespace

BitVec BitVec::from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
    BitVec v(n);
    for (std::size_t i : idx) {
        if (i >= n) throw std::out_of_range("BitVec::from_indices: index past size");
        v.set(i, true);
    }
    return v;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::none() const {
    for (std::uint64_t w : w_)
        if (w) return false;
    return true;
}

std::vector<std::size_t> BitVec::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        std::uint64_t w = w_[k];
        while (w) {
            out.push_back(k * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
}

BitVec& BitVec::operator|=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
}

bool BitVec::subset_of(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & ~o.w_[k]) return false;
    return true;
}

int BitVec::parity_and(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("BitVec: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1;
}

BitMat::BitMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    check_alloc(rows, cols);
    w_.assign(rows_ * wpr_, 0);
}

BitMat BitMat::identity(std::size_t n) {
    BitMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMat BitMat::from_dense(const std::vector<std::vector<int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    BitMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("BitMat::from_dense: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            if (rows[i][j] & 1) m.set(i, j, true);
    }
    return m;
}

BitMat BitMat::from_rows(const std::vector<BitVec>& rows, std::size_t cols) {
    BitMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

std::size_t BitMat::bit_limit() { return g_bit_limit; }
void BitMat::set_bit_limit(std::size_t bits) { g_bit_limit = bits; }

BitVec BitMat::row(std::size_t r) const {
    BitVec v(cols_);
    for (std::size_t k = 0; k < wpr_; ++k) v.w_[k] = w_[r * wpr_ + k];
    return v;
}

void BitMat::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMat::set_row: size mismatch");
    for (std::size_t k = 0; k < wpr_; ++k) w_[r * wpr_ + k] = v.w_[k];
}

void BitMat::xor_row_into(std::size_t src, std::size_t dst) {
    const std::uint64_t* s = row_words(src);
    std::uint64_t* d = row_words(dst);
    for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
}

std::size_t BitMat::row_weight(std::size_t r) const {
    std::size_t c = 0;
    const std::uint64_t* p = row_words(r);
    for (std::size_t k = 0; k < wpr_; ++k) c += std::popcount(p[k]);
    return c;
}

std::size_t BitMat::col_weight(std::size_t c) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) n += get(r, c);
    return n;
}

BitMat BitMat::transpose() const {
    BitMat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_words(r);
        for (std::size_t k = 0; k < wpr_; ++k) {
            std::uint64_t w = p[k];
            while (w) {
                std::size_t c = k * 64 + std::countr_zero(w);
                t.set(c, r, true);
                w &= w - 1;
            }
        }
    }
    return t;
}

BitMat BitMat::mul(const BitMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("BitMat::mul: shape mismatch");
    BitMat out(rows_, o.cols_);
    // Row-by-row accumulation: out[r] = XOR of o's rows picked by this[r].
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_words(r);
        std::uint64_t* dst = out.row_words(r);
        for (std::size_t k = 0; k < wpr_; ++k) {
            std::uint64_t w = p[k];
            while (w) {
                std::size_t c = k * 64 + std::countr_zero(w);
                const std::uint64_t* src = o.row_words(c);
                for (std::size_t j = 0; j < o.wpr_; ++j) dst[j] ^= src[j];
                w &= w - 1;
            }
        }
    }
    return out;
}

BitVec BitMat::mat_vec(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("BitMat::mat_vec: size mismatch");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_words(r);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < wpr_; ++k) acc ^= p[k] & v.w_[k];
        // Parity of the total overlap equals the popcount parity of the
        // XOR-fold: each bit position contributes its count mod 2.
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

RrefResult BitMat::rref() const {
    RrefResult res{*this, {}};
    BitMat& m = res.mat;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && !m.get(piv, c)) ++piv;
        if (piv == rows_) continue;
        if (piv != r) {
            std::uint64_t* a = m.row_words(piv);
            std::uint64_t* b = m.row_words(r);
            for (std::size_t k = 0; k < wpr_; ++k) std::swap(a[k], b[k]);
        }
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && m.get(i, c)) m.xor_row_into(r, i);
        res.pivots.push_back(c);
        ++r;
    }
    return res;
}

std::size_t BitMat::rank() const { return rref().pivots.size(); }

std::optional<BitVec> BitMat::solve(const BitVec& b) const {
    if (b.size() != rows_) throw std::invalid_argument("BitMat::solve: rhs size mismatch");
    // Eliminate on the augmented matrix [A | b].
    BitMat aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_words(r);
        std::uint64_t* q = aug.row_words(r);
        for (std::size_t k = 0; k < wpr_; ++k) q[k] = p[k];
        aug.set(r, cols_, b.get(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < cols_ && rr < rows_; ++c) {
        std::size_t piv = rr;
        while (piv < rows_ && !aug.get(piv, c)) ++piv;
        if (piv == rows_) continue;
        if (piv != rr) {
            std::uint64_t* a = aug.row_words(piv);
            std::uint64_t* q = aug.row_words(rr);
            for (std::size_t k = 0; k < aug.wpr_; ++k) std::swap(a[k], q[k]);
        }
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != rr && aug.get(i, c)) aug.xor_row_into(rr, i);
        pivots.push_back(c);
        ++rr;
    }
    for (std::size_t i = rr; i < rows_; ++i)
        if (aug.get(i, cols_)) return std::nullopt;
    // Free variables are zero, so each pivot variable equals its row's rhs.
    BitVec x(cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, cols_)) x.set(pivots[i], true);
    return x;
}

BitMat BitMat::nullspace_basis() const {
    RrefResult rr = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    std::size_t dim = cols_ - rr.pivots.size();
    BitMat basis(dim, cols_);
    std::size_t out = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        basis.set(out, f, true);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (rr.mat.get(i, f)) basis.set(out, rr.pivots[i], true);
        ++out;
    }
    return basis;
}

bool BitMat::in_rowspace(const BitVec& v) const { return RowSpace(*this).contains(v); }

BitMat BitMat::select_columns(const std::vector<std::size_t>& cols) const {
    BitMat out(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_) throw std::out_of_range("BitMat::select_columns: column index");
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, cols[j])) out.set(r, j, true);
    }
    return out;
}

RowSpace::RowSpace(const BitMat& m) {
    RrefResult rr = m.rref();
    std::vector<BitVec> rows;
    rows.reserve(rr.pivots.size());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) rows.push_back(rr.mat.row(i));
    basis_ = BitMat::from_rows(rows, m.cols());
    pivots_ = rr.pivots;
}

bool RowSpace::contains(const BitVec& v) const {
    if (v.size() != basis_.cols()) throw std::invalid_argument("RowSpace: size mismatch");
    BitVec r = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        if (r.get(pivots_[i])) {
            const std::uint64_t* p = basis_.row_words(i);
            for (std::size_t k = 0; k < r.word_count(); ++k) r.word_data()[k] ^= p[k];
        }
    }
    return r.none();
}

BitMat kron(const BitMat& a, const BitMat& b) {
    check_alloc(a.rows() * b.rows(), a.cols() * b.cols());
    BitMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                const std::uint64_t* src = b.row_words(r);
                for (std::size_t k = 0; k < b.words_per_row(); ++k) {
                    std::uint64_t w = src[k];
                    while (w) {
                        std::size_t c = k * 64 + std::countr_zero(w);
                        out.set(i * b.rows() + r, j * b.cols() + c, true);
                        w &= w - 1;
                    }
                }
            }
        }
    return out;
}

BitMat circulant(std::size_t L, const std::vector<std::size_t>& exponents) {
    if (L == 0) throw std::invalid_argument("circulant: L must be positive");
    BitMat m(L, L);
    for (std::size_t e : exponents) {
        std::size_t off = e % L;
        // x^off has a one at column (i + off) mod L in row i.
        for (std::size_t i = 0; i < L; ++i) m.set(i, (i + off) % L, !m.get(i, (i + off) % L));
    }
    return m;
}

BitMat concat_h(const BitMat& a, const BitMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("concat_h: row mismatch");
    BitMat out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (b.get(r, c)) out.set(r, a.cols() + c, true);
    }
    return out;
}

BitMat concat_v(const BitMat& a, const BitMat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("concat_v: col mismatch");
    BitMat out(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) out.set(r, c, true);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (b.get(r, c)) out.set(a.rows() + r, c, true);
    return out;
}

}  // namespace qldpc
