#include "qldpc/peeling.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace qldpc {

namespace {

std::uint64_t hash_words(const BitVec& v) {
    std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
    for (std::size_t k = 0; k < v.word_count(); ++k) {
        h ^= v.word(k);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

PeelingDecoder::PeelingDecoder(const CssCode& code, Side side, int prune_depth)
    : code_(&code), side_(side), depth_(prune_depth),
      g_(&check_graph(code, side)), stab_(&stabilizer_matrix(code, side)) {
    if (prune_depth < 0) throw std::invalid_argument("prune_depth must be non-negative");
}

// Looks for <= depth_ stabilizer rows whose XOR has nonempty support inside
// `residual`. Combinations are visited smallest-size first, then in
// lexicographic row order, skipping ones already spent; the first hit wins so
// the decoder stays deterministic.
bool PeelingDecoder::find_cover_combo(const BitVec& residual, std::vector<std::size_t>& combo_out) {
    std::size_t rows = stab_->rows();
    std::vector<BitVec> outside;
    outside.reserve(rows);
    BitVec not_res = residual;
    for (std::size_t k = 0; k < not_res.word_count(); ++k)
        not_res.word_data()[k] = ~not_res.word(k);
    // Trailing bits of the last word must stay zero after complement.
    std::size_t tail = residual.size() & 63;
    if (tail) not_res.word_data()[not_res.word_count() - 1] &= (std::uint64_t(1) << tail) - 1;
    for (std::size_t r = 0; r < rows; ++r) outside.push_back(stab_->row(r) & not_res);

    auto is_used = [&](const std::vector<std::size_t>& combo) {
        return std::find(used_.begin(), used_.end(), combo) != used_.end();
    };

    for (int size = 1; size <= depth_; ++size) {
        if (size == 1) {
            for (std::size_t r = 0; r < rows; ++r) {
                if (!outside[r].none()) continue;
                if (stab_->row_weight(r) == 0) continue;
                std::vector<std::size_t> combo{r};
                if (is_used(combo)) continue;
                combo_out = std::move(combo);
                return true;
            }
            continue;
        }
        // For larger sizes the outside parts of the chosen rows must cancel;
        // bucket rows by outside part and complete each lexicographic prefix
        // through a hash lookup.
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
        for (std::size_t r = 0; r < rows; ++r) buckets[hash_words(outside[r])].push_back(r);

        std::vector<std::size_t> prefix;
        BitVec acc_out(residual.size()), acc_row(residual.size());
        std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
            if (prefix.size() + 1 == std::size_t(size)) {
                auto it = buckets.find(hash_words(acc_out));
                if (it == buckets.end()) return false;
                for (std::size_t j : it->second) {
                    if (j <= prefix.back()) continue;
                    if (!(outside[j] == acc_out)) continue;  // hash collision guard
                    BitVec support = acc_row ^ stab_->row(j);
                    if (support.none()) continue;
                    std::vector<std::size_t> combo = prefix;
                    combo.push_back(j);
                    if (is_used(combo)) continue;
                    combo_out = std::move(combo);
                    return true;
                }
                return false;
            }
            for (std::size_t i = start; i + (size - prefix.size() - 1) < rows; ++i) {
                prefix.push_back(i);
                acc_out ^= outside[i];
                BitVec row = stab_->row(i);
                acc_row ^= row;
                if (dfs(i + 1)) return true;
                acc_row ^= row;
                acc_out ^= outside[i];
                prefix.pop_back();
            }
            return false;
        };
        if (dfs(0)) return true;
    }
    return false;
}

DecodeResult PeelingDecoder::decode(const ErasureInstance& inst) {
    const TannerGraph& g = *g_;
    std::size_t n = g.n_vars, m = g.n_checks;
    if (inst.mask.size() != n || inst.syndrome.size() != m)
        throw std::invalid_argument("PeelingDecoder: instance shape mismatch");

    BitVec residual = inst.mask;
    std::vector<std::uint8_t> syn(m);
    std::vector<std::uint32_t> count(m, 0);
    for (std::size_t c = 0; c < m; ++c) {
        syn[c] = inst.syndrome.get(c);
        for (std::size_t e = g.chk_off[c]; e < g.chk_off[c + 1]; ++e)
            count[c] += residual.get(g.var_of[e]);
    }

    // Lowest check index first among currently dangling checks. Entries go
    // stale when a count moves past 1, so each pop is re-validated.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> q;
    for (std::size_t c = 0; c < m; ++c)
        if (count[c] == 1) q.push(c);

    DecodeResult res;
    res.estimate = BitVec(n);
    used_.clear();

    auto settle = [&](std::size_t v, bool value) {
        residual.set(v, false);
        if (value) res.estimate.set(v, true);
        for (std::size_t k = g.var_off[v]; k < g.var_off[v + 1]; ++k) {
            std::size_t c2 = g.chk_of[g.edges_of_var[k]];
            if (value) syn[c2] ^= 1;
            if (--count[c2] == 1) q.push(c2);
        }
        ++res.rounds_used;
    };

    while (true) {
        while (!q.empty()) {
            std::size_t c = q.top();
            q.pop();
            if (count[c] != 1) continue;
            std::size_t v = n;
            for (std::size_t e = g.chk_off[c]; e < g.chk_off[c + 1]; ++e)
                if (residual.get(g.var_of[e])) {
                    v = g.var_of[e];
                    break;
                }
            settle(v, syn[c]);
        }
        if (residual.none()) break;
        if (depth_ == 0) break;
        std::vector<std::size_t> combo;
        if (!find_cover_combo(residual, combo)) break;
        used_.push_back(std::move(combo));
        // Pin the lowest supported bit of the found stabilizer to zero. That
        // uses up the element's freedom, hence the memoization above.
        BitVec support(n);
        for (std::size_t r : used_.back()) support ^= stab_->row(r);
        settle(support.indices().front(), false);
    }

    bool done = residual.none();
    if (done) {
        // A full peel implies the syndrome is met on consistent instances;
        // re-check so corrupted replays surface as failures, not successes.
        BitVec s = check_matrix(*code_, side_).mat_vec(res.estimate);
        done = (s == inst.syndrome);
    }
    res.status = done ? DecodeStatus::Converged : DecodeStatus::NonConvergence;
    return res;
}

DecodeResult peel_decode(const CssCode& code, Side side, const ErasureInstance& inst) {
    return PeelingDecoder(code, side, 0).decode(inst);
}

DecodeResult pruned_peel_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                                int prune_depth) {
    return PeelingDecoder(code, side, prune_depth).decode(inst);
}

}  // namespace qldpc
