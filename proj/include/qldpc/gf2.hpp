#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qldpc {

// Dense bit-packed vector over GF(2). Bit i lives in word i/64 at position
// i%64; bits past size() in the last word are kept zero so that equality and
// popcount can work on whole words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_indices(std::size_t n, const std::vector<std::size_t>& idx);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    std::size_t popcount() const;
    bool none() const;
    std::vector<std::size_t> indices() const;

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    BitVec& operator|=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    bool operator==(const BitVec&) const = default;

    // True when every set bit of *this is also set in `o`.
    bool subset_of(const BitVec& o) const;

    // Parity of the AND of two vectors, i.e. <a, b> over GF(2).
    static int parity_and(const BitVec& a, const BitVec& b);

    std::size_t word_count() const { return w_.size(); }
    std::uint64_t word(std::size_t k) const { return w_[k]; }
    std::uint64_t* word_data() { return w_.data(); }
    const std::uint64_t* word_data() const { return w_.data(); }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
    friend class BitMat;
};

struct RrefResult;

// Dense bit-packed matrix over GF(2), row major. Rows are independently
// word-aligned; trailing bits of each row's last word stay zero.
class BitMat {
public:
    BitMat() = default;
    BitMat(std::size_t rows, std::size_t cols);

    static BitMat identity(std::size_t n);
    static BitMat from_dense(const std::vector<std::vector<int>>& rows);
    // One row per entry; every BitVec must have length `cols`.
    static BitMat from_rows(const std::vector<BitVec>& rows, std::size_t cols);

    // Guard against runaway allocations in code built from user input.
    static std::size_t bit_limit();
    static void set_bit_limit(std::size_t bits);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        if (v) w_[r * wpr_ + (c >> 6)] |= m; else w_[r * wpr_ + (c >> 6)] &= ~m;
    }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void xor_row_into(std::size_t src, std::size_t dst);  // dst ^= src
    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;

    bool operator==(const BitMat&) const = default;

    BitMat transpose() const;
    BitMat mul(const BitMat& o) const;
    BitVec mat_vec(const BitVec& v) const;

    RrefResult rref() const;
    std::size_t rank() const;
    // Solves A x = b; free variables are fixed to zero. Empty on inconsistency.
    std::optional<BitVec> solve(const BitVec& b) const;
    // Rows of the returned matrix form a basis of { x : A x = 0 }.
    BitMat nullspace_basis() const;
    bool in_rowspace(const BitVec& v) const;

    // Columns picked by `cols`, in the given order.
    BitMat select_columns(const std::vector<std::size_t>& cols) const;

    std::size_t words_per_row() const { return wpr_; }
    std::uint64_t* row_words(std::size_t r) { return w_.data() + r * wpr_; }
    const std::uint64_t* row_words(std::size_t r) const { return w_.data() + r * wpr_; }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

struct RrefResult {
    BitMat mat;                        // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column per pivot row
    std::size_t rank() const { return pivots.size(); }
};

// Precomputed reduced basis for repeated membership queries against a fixed
// row space.
class RowSpace {
public:
    explicit RowSpace(const BitMat& m);
    bool contains(const BitVec& v) const;
    std::size_t rank() const { return basis_.rows(); }

private:
    BitMat basis_;                     // RREF rows, zero rows dropped
    std::vector<std::size_t> pivots_;
};

BitMat kron(const BitMat& a, const BitMat& b);
// L x L circulant with ones at column offsets `exponents` (mod L) in row 0;
// row i is row 0 rotated right by i. Represents multiplication by the
// polynomial with the given exponents in F2[x]/(x^L - 1).
BitMat circulant(std::size_t L, const std::vector<std::size_t>& exponents);
BitMat concat_h(const BitMat& a, const BitMat& b);
BitMat concat_v(const BitMat& a, const BitMat& b);

}  // namespace qldpc
