#pragma once

#include <array>
#include <cstdint>

namespace qldpc {

// Philox 4x32 with 10 rounds. Counter-based: every 128-bit output block is a
// pure function of (key, counter), so per-trial streams are cheap to derive
// and results never depend on which thread consumed which trial.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            std::array<std::uint32_t, 4> next{
                std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
                std::uint32_t(p1),
                std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
                std::uint32_t(p0),
            };
            ctr = next;
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// Stream of uniform values for one Monte Carlo trial, keyed by
// (master_seed, trial_index). Identical draws regardless of worker count or
// call site ordering across trials.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
        : key_{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)},
          trial_(trial_index) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }
    bool coin() { return next_u32() & 1u; }

private:
    void refill() {
        buf_ = Philox4x32::block({std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                  std::uint32_t(trial_), std::uint32_t(trial_ >> 32)},
                                 key_);
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t trial_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace qldpc
