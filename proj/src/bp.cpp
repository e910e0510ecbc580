#include "qldpc/bp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace qldpc {

double channel_llr(double p, double llr_max) {
    static std::atomic<bool> warned{false};
    if (!(p > 0.0 && p < 1.0)) {
        if (!warned.exchange(true))
            std::cerr << "channel_llr: probability " << p << " outside (0,1); saturating\n";
        return p <= 0.0 ? llr_max : -llr_max;
    }
    return std::clamp(std::log((1.0 - p) / p), -llr_max, llr_max);
}

std::vector<double> init_priors(const BitVec& mask, std::size_t n, const BpConfig& cfg) {
    if (mask.size() != n) throw std::invalid_argument("init_priors: mask length mismatch");
    std::vector<double> mu(n);
    for (std::size_t v = 0; v < n; ++v)
        mu[v] = mask.get(v) ? cfg.llr_min : cfg.c_opt * cfg.llr_max;
    return mu;
}

BpEngine::BpEngine(const TannerGraph& g, const BpConfig& cfg) : g_(&g), cfg_(cfg) {
    if (cfg_.iters < 1) throw std::invalid_argument("BpConfig: iters must be positive");
    if (!(cfg_.llr_max > 0.0)) throw std::invalid_argument("BpConfig: llr_max must be positive");
    if (!(cfg_.gamma > 0.0 && cfg_.gamma <= 1.0))
        throw std::invalid_argument("BpConfig: gamma must lie in (0, 1]");
    sat_tanh_ = std::tanh(0.5 * cfg_.llr_max);
    std::size_t max_deg = 0;
    for (std::size_t c = 0; c < g.n_checks; ++c) max_deg = std::max(max_deg, g.check_degree(c));
    // sat_msg_[k]: magnitude of a check message whose k contributing inputs
    // all sit exactly at saturation. k = 0 covers dangling checks, where the
    // empty product is 1 and atanh diverges; the clamp turns that into the
    // full-confidence value.
    sat_msg_.resize(max_deg + 1);
    for (std::size_t k = 0; k <= max_deg; ++k)
        sat_msg_[k] = std::clamp(2.0 * std::atanh(std::pow(sat_tanh_, double(k))),
                                 -cfg_.llr_max, cfg_.llr_max);
    msg_vc_.resize(g.n_edges);
    msg_cv_.resize(g.n_edges);
    prior_.resize(g.n_vars);
    belief_.resize(g.n_vars);
    tb_.resize(max_deg);
    pre_.resize(max_deg + 1);
    suf_.resize(max_deg + 1);
    syn_.resize(g.n_checks);
}

void BpEngine::reset(const std::vector<double>& priors, const BitVec& syndrome) {
    if (priors.size() != g_->n_vars || syndrome.size() != g_->n_checks)
        throw std::invalid_argument("BpEngine::reset: size mismatch");
    prior_ = priors;
    belief_ = priors;
    for (std::size_t e = 0; e < g_->n_edges; ++e) msg_vc_[e] = prior_[g_->var_of[e]];
    std::fill(msg_cv_.begin(), msg_cv_.end(), 0.0);
    for (std::size_t c = 0; c < g_->n_checks; ++c) syn_[c] = syndrome.get(c);
    fixed_point_ = false;
}

void BpEngine::set_prior(std::size_t v, double value) {
    prior_[v] = value;
    fixed_point_ = false;
}

bool BpEngine::iterate() {
    const TannerGraph& g = *g_;
    bool changed = false;

    // Check pass.
    for (std::size_t c = 0; c < g.n_checks; ++c) {
        std::size_t b = g.chk_off[c], d = g.chk_off[c + 1] - b;
        if (d == 0) continue;
        int zeros = 0, sats = 0, negs = 0;
        std::size_t zero_at = 0;
        for (std::size_t k = 0; k < d; ++k) {
            double m = msg_vc_[b + k];
            double t;
            if (m == 0.0) {
                t = 0.0;
                ++zeros;
                zero_at = k;
            } else if (m == cfg_.llr_max) {
                t = sat_tanh_;
                ++sats;
            } else if (m == -cfg_.llr_max) {
                t = -sat_tanh_;
                ++sats;
                ++negs;
            } else {
                t = std::tanh(0.5 * m);
                if (t < 0.0) ++negs;
            }
            tb_[k] = t;
        }
        bool syn_neg = syn_[c];
        auto store = [&](std::size_t k, double val) {
            double& slot = msg_cv_[b + k];
            if (slot != val) {
                slot = val;
                changed = true;
            }
        };
        if (zeros >= 2) {
            for (std::size_t k = 0; k < d; ++k) store(k, 0.0);
        } else if (zeros == 1) {
            // Only the edge that sent the zero receives information.
            double out;
            if (sats == int(d) - 1) {
                out = ((negs & 1) ^ int(syn_neg)) ? -sat_msg_[d - 1] : sat_msg_[d - 1];
            } else {
                double prod = 1.0;
                for (std::size_t k = 0; k < d; ++k)
                    if (k != zero_at) prod *= tb_[k];
                if (syn_neg) prod = -prod;
                out = std::clamp(2.0 * std::atanh(prod), -cfg_.llr_max, cfg_.llr_max);
            }
            for (std::size_t k = 0; k < d; ++k) store(k, k == zero_at ? out : 0.0);
        } else if (sats == int(d)) {
            // All inputs saturated: every leave-one-out product has the same
            // magnitude and only signs differ.
            double mag = sat_msg_[d - 1];
            for (std::size_t k = 0; k < d; ++k) {
                int neg = (negs - (tb_[k] < 0.0 ? 1 : 0)) & 1;
                store(k, (neg ^ int(syn_neg)) ? -mag : mag);
            }
        } else {
            pre_[0] = 1.0;
            for (std::size_t k = 0; k < d; ++k) pre_[k + 1] = pre_[k] * tb_[k];
            suf_[d] = 1.0;
            for (std::size_t k = d; k-- > 0;) suf_[k] = suf_[k + 1] * tb_[k];
            for (std::size_t k = 0; k < d; ++k) {
                double prod = pre_[k] * suf_[k + 1];
                if (syn_neg) prod = -prod;
                store(k, std::clamp(2.0 * std::atanh(prod), -cfg_.llr_max, cfg_.llr_max));
            }
        }
    }

    // Variable pass.
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        std::size_t b = g.var_off[v], d = g.var_off[v + 1] - b;
        double sum = prior_[v];
        for (std::size_t k = 0; k < d; ++k) sum += msg_cv_[g.edges_of_var[b + k]];
        belief_[v] = sum;
        for (std::size_t k = 0; k < d; ++k) {
            std::size_t e = g.edges_of_var[b + k];
            double raw = sum - msg_cv_[e];
            double& slot = msg_vc_[e];
            double out;
            if (cfg_.gamma == 1.0) {
                out = std::clamp(raw, -cfg_.llr_max, cfg_.llr_max);
            } else {
                // Written as old + gamma*(raw - old) rather than the textbook
                // (1-gamma)*old + gamma*raw so that a settled message stays
                // bit-identical and fixed points remain exact.
                out = std::clamp(slot + cfg_.gamma * (raw - slot), -cfg_.llr_max, cfg_.llr_max);
            }
            if (slot != out) {
                slot = out;
                changed = true;
            }
        }
    }
    return changed;
}

int BpEngine::run(int max_iters) {
    int it = 0;
    while (it < max_iters) {
        bool ch = iterate();
        ++it;
        if (!ch) {
            fixed_point_ = true;
            return it;
        }
    }
    fixed_point_ = false;
    return it;
}

BitVec BpEngine::hard_decision() const {
    BitVec x(g_->n_vars);
    for (std::size_t v = 0; v < g_->n_vars; ++v)
        if (belief_[v] < 0.0) x.set(v, true);
    return x;
}

bool BpEngine::syndrome_matches(const BitVec& hard) const {
    const TannerGraph& g = *g_;
    for (std::size_t c = 0; c < g.n_checks; ++c) {
        int par = 0;
        for (std::size_t e = g.chk_off[c]; e < g.chk_off[c + 1]; ++e)
            par ^= int(hard.get(g.var_of[e]));
        if (par != int(syn_[c])) return false;
    }
    return true;
}

BpRunResult bp_run(const TannerGraph& g, const std::vector<double>& priors,
                   const BitVec& syndrome, const BpConfig& cfg) {
    BpEngine engine(g, cfg);
    engine.reset(priors, syndrome);
    BpRunResult res;
    res.iters_run = engine.run(cfg.iters);
    res.beliefs = engine.beliefs();
    res.hard = engine.hard_decision();
    res.matched = engine.syndrome_matches(res.hard);
    return res;
}

BpgdDecoder::BpgdDecoder(const CssCode& code, Side side, const BpConfig& cfg)
    : g_(&check_graph(code, side)), cfg_(cfg), engine_(*g_, cfg), undecimated_(g_->n_vars) {}

DecodeResult BpgdDecoder::decode(const ErasureInstance& inst) {
    std::size_t n = g_->n_vars;
    engine_.reset(init_priors(inst.mask, n, cfg_), inst.syndrome);
    std::fill(undecimated_.begin(), undecimated_.end(), std::uint8_t(1));

    DecodeResult res;
    bool dirty = true;
    bool matched = false;
    const std::vector<double>& belief = engine_.beliefs();

    // Every variable is a decimation candidate, erased or not, so the loop
    // runs at most n rounds. A round whose pin turned out to be a no-op
    // leaves the engine state untouched; BP and the syndrome check are then
    // skipped because rerunning them would reproduce the same fixed point.
    for (std::size_t r = 1; r <= n; ++r) {
        res.rounds_used = int(r);
        if (dirty) {
            res.bp_iterations_total += engine_.run(cfg_.iters);
            res.estimate = engine_.hard_decision();
            matched = engine_.syndrome_matches(res.estimate);
            dirty = false;
        }
        if (matched) {
            res.status = DecodeStatus::Converged;
            return res;
        }
        std::size_t best = n;
        double best_mag = -1.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!undecimated_[v]) continue;
            double mag = std::fabs(belief[v]);
            if (mag > best_mag) {
                best_mag = mag;
                best = v;
            }
        }
        if (best == n) break;  // nothing left to pin
        undecimated_[best] = 0;
        double pinned = belief[best] >= 0.0 ? cfg_.llr_max : -cfg_.llr_max;
        if (engine_.prior(best) != pinned) {
            engine_.set_prior(best, pinned);
            dirty = true;
        }
    }
    res.status = DecodeStatus::NonConvergence;
    return res;
}

DecodeResult bpgd_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                         const BpConfig& cfg) {
    return BpgdDecoder(code, side, cfg).decode(inst);
}

DecodeResult bp_decode(const CssCode& code, Side side, const ErasureInstance& inst,
                       const BpConfig& cfg) {
    const TannerGraph& g = check_graph(code, side);
    BpRunResult r = bp_run(g, init_priors(inst.mask, g.n_vars, cfg), inst.syndrome, cfg);
    DecodeResult res;
    res.status = r.matched ? DecodeStatus::Converged : DecodeStatus::NonConvergence;
    res.estimate = std::move(r.hard);
    res.rounds_used = 1;
    res.bp_iterations_total = r.iters_run;
    return res;
}

}  // namespace qldpc
