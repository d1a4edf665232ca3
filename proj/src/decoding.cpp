#include "boa/decoding.hpp"

#include "boa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace boa {

void RawDistribution::validate() const {
    if (entries.empty()) {
        throw std::invalid_argument("RawDistribution: empty support");
    }
    std::unordered_set<TokenId> seen;
    double mass = 0.0;
    for (const auto& e : entries) {
        if (e.token < 0) {
            throw std::invalid_argument("RawDistribution: negative token id");
        }
        if (!seen.insert(e.token).second) {
            throw std::invalid_argument("RawDistribution: duplicate token id");
        }
        mass += std::exp(e.logprob);
    }
    if (mass > 1.0 + 1e-6) {
        throw std::invalid_argument("RawDistribution: probability mass exceeds 1");
    }
}

void DecodingStrategy::validate() const {
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("DecodingStrategy: temperature must be > 0");
    }
    if (top_k && *top_k < 1) {
        throw std::invalid_argument("DecodingStrategy: top_k must be >= 1");
    }
    if (top_p && !(*top_p > 0.0 && *top_p <= 1.0)) {
        throw std::invalid_argument("DecodingStrategy: top_p must be in (0, 1]");
    }
    if (candidate_pool < 1) {
        throw std::invalid_argument("DecodingStrategy: candidate_pool must be >= 1");
    }
    if (top_k && candidate_pool < *top_k) {
        throw std::invalid_argument("DecodingStrategy: candidate_pool must cover top_k");
    }
}

namespace {

double mass_of(const std::vector<CandidateEntry>& entries) {
    double total = 0.0;
    for (const auto& e : entries) total += e.prob;
    return total;
}

void truncate_top_k(std::vector<CandidateEntry>& entries, int k) {
    if (static_cast<int>(entries.size()) > k) {
        entries.resize(static_cast<std::size_t>(k));
    }
}

// Smallest prefix of the descending-sorted list whose cumulative probability
// reaches p, at least one token. `denominator` is the survivor mass of the
// previous stage: pool-truncated lists keep the full pre-pool mass, so the
// cutoff index matches an exact full-sort whenever the nucleus fits the pool.
void truncate_top_p(std::vector<CandidateEntry>& entries, double p, double denominator) {
    double cum = 0.0;
    std::size_t keep = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        cum += entries[i].prob / denominator;
        if (cum >= p - 1e-12) {
            keep = i + 1;
            break;
        }
    }
    entries.resize(std::max<std::size_t>(keep, 1));
}

}  // namespace

CandidateDistribution apply_decoder(const RawDistribution& raw, const DecodingStrategy& strategy) {
    strategy.validate();
    if (raw.empty()) {
        throw EmptySupportError("apply_decoder: empty raw distribution");
    }

    double max_lp = -std::numeric_limits<double>::infinity();
    for (const auto& e : raw.entries) {
        if (std::isfinite(e.logprob) && e.logprob > max_lp) max_lp = e.logprob;
    }
    if (!std::isfinite(max_lp)) {
        throw EmptySupportError("apply_decoder: all candidates have zero probability");
    }

    std::vector<CandidateEntry> entries;
    entries.reserve(raw.entries.size());
    for (const auto& e : raw.entries) {
        if (!std::isfinite(e.logprob)) continue;
        entries.push_back({e.token, std::exp((e.logprob - max_lp) / strategy.temperature)});
    }

    std::sort(entries.begin(), entries.end(), [](const CandidateEntry& a, const CandidateEntry& b) {
        if (a.prob != b.prob) return a.prob > b.prob;
        return a.token < b.token;
    });

    const double full_mass = mass_of(entries);
    if (entries.size() > static_cast<std::size_t>(strategy.candidate_pool)) {
        entries.resize(static_cast<std::size_t>(strategy.candidate_pool));
    }

    if (strategy.order == TruncationOrder::top_k_then_top_p) {
        if (strategy.top_k) truncate_top_k(entries, *strategy.top_k);
        if (strategy.top_p) {
            truncate_top_p(entries, *strategy.top_p, strategy.top_k ? mass_of(entries) : full_mass);
        }
    } else {
        if (strategy.top_p) truncate_top_p(entries, *strategy.top_p, full_mass);
        if (strategy.top_k) truncate_top_k(entries, *strategy.top_k);
    }

    const double survivor_mass = mass_of(entries);
    for (auto& e : entries) e.prob /= survivor_mass;
    return CandidateDistribution{std::move(entries)};
}

double chunk_logprob(double prefix_logprob, std::span<const double> token_probs) {
    double lp = prefix_logprob;
    for (double p : token_probs) lp += std::log(p);
    return lp;
}

std::size_t sample_index(const CandidateDistribution& dist, double unit) {
    double cum = 0.0;
    for (std::size_t i = 0; i < dist.entries.size(); ++i) {
        cum += dist.entries[i].prob;
        if (unit < cum) return i;
    }
    return dist.entries.size() - 1;  // rounding tail
}

double sample_unit(std::mt19937_64& rng) { return next_unit(rng); }

std::size_t sample_index(const CandidateDistribution& dist, std::mt19937_64& rng) {
    return sample_index(dist, next_unit(rng));
}

}  // namespace boa
