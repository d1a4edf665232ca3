#include "boa/toy_model.hpp"

#include "boa/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace boa {

namespace {

bool has_whitespace(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

// Tokens emitted since (and excluding) the last eos. Tool-result tokens
// count too: the flat stream carries no turn structure beyond eos markers.
int tokens_since_last_eos(const TokenSeq& flat, TokenId eos) {
    int n = 0;
    for (auto it = flat.rbegin(); it != flat.rend() && *it != eos; ++it) ++n;
    return n;
}

}  // namespace

std::vector<RawDistribution> ModelBackend::next_distribution_batch(const std::vector<ModelPrefix>& prefixes) {
    std::vector<RawDistribution> out;
    out.reserve(prefixes.size());
    for (const auto& p : prefixes) out.push_back(next_distribution(p));
    return out;
}

ToyModel::ToyModel(ToyModelSpec spec) : spec_(std::move(spec)) {
    if (spec_.vocab.empty()) throw std::invalid_argument("ToyModelSpec: empty vocab");
    if (spec_.eos_token < 0 || spec_.eos_token >= static_cast<TokenId>(spec_.vocab.size())) {
        throw std::invalid_argument("ToyModelSpec: eos token out of range");
    }
    if (spec_.max_length < 1) throw std::invalid_argument("ToyModelSpec: max_length must be >= 1");

    for (std::size_t i = 0; i < spec_.vocab.size(); ++i) {
        const auto& s = spec_.vocab[i];
        if (s.empty() || has_whitespace(s)) {
            throw std::invalid_argument("ToyModelSpec: vocab surfaces must be non-empty and whitespace-free");
        }
        if (!surface_to_id_.emplace(s, static_cast<TokenId>(i)).second) {
            throw std::invalid_argument("ToyModelSpec: duplicate vocab surface '" + s + "'");
        }
    }

    std::set<TokenSeq> seen_contexts;
    for (const auto& t : spec_.transitions) {
        t.dist.validate();
        for (const auto& e : t.dist.entries) {
            if (e.token >= static_cast<TokenId>(spec_.vocab.size())) {
                throw std::invalid_argument("ToyModelSpec: transition token out of range");
            }
        }
        if (!seen_contexts.insert(t.context).second) {
            throw std::invalid_argument("ToyModelSpec: duplicate transition context");
        }
    }

    handle_.backend_kind = BackendKind::toy;
    handle_.vocab_size = static_cast<int>(spec_.vocab.size());
    handle_.eos_token = spec_.eos_token;
    handle_.tokenizer_mode = TokenizerMode::identity_integer;
}

TokenSeq ToyModel::tokenize(const std::string& text) const {
    TokenSeq out;
    for (const auto& w : split_words(text)) {
        auto it = surface_to_id_.find(w);
        if (it == surface_to_id_.end()) {
            throw std::invalid_argument("ToyModel: word not in vocab: '" + w + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

std::string ToyModel::surface(TokenId token) const {
    if (token < 0 || token >= static_cast<TokenId>(spec_.vocab.size())) {
        throw std::invalid_argument("ToyModel: token id out of range");
    }
    return spec_.vocab[static_cast<std::size_t>(token)];
}

RawDistribution ToyModel::default_rule(const TokenSeq& flat) const {
    std::uint64_t h = spec_.default_seed;
    for (TokenId t : flat) h = splitmix64(h ^ static_cast<std::uint64_t>(t));

    const int vocab = handle_.vocab_size;
    const int depth = tokens_since_last_eos(flat, spec_.eos_token);

    // eos weight grows with turn depth so random walks wind down early.
    double eos_weight = std::max(0.1, static_cast<double>(depth) / spec_.max_length);

    std::vector<std::pair<TokenId, double>> picks;
    picks.emplace_back(spec_.eos_token, eos_weight);
    const int support = 2 + static_cast<int>(splitmix64(h) % 2);
    std::uint64_t cursor = h;
    for (int i = 0; i < support && static_cast<int>(picks.size()) < vocab; ++i) {
        cursor = splitmix64(cursor);
        auto tok = static_cast<TokenId>(cursor % static_cast<std::uint64_t>(vocab));
        while (std::any_of(picks.begin(), picks.end(), [&](const auto& p) { return p.first == tok; })) {
            tok = (tok + 1) % vocab;
        }
        cursor = splitmix64(cursor);
        double w = 0.25 + 0.75 * (static_cast<double>(cursor >> 11) * 0x1.0p-53);
        picks.emplace_back(tok, w);
    }

    double total = 0.0;
    for (const auto& p : picks) total += p.second;
    RawDistribution raw;
    for (const auto& p : picks) raw.entries.push_back({p.first, std::log(p.second / total)});
    return raw;
}

RawDistribution ToyModel::next_distribution(const ModelPrefix& prefix) {
    TokenSeq flat = tokenize(prefix.text);
    flat.insert(flat.end(), prefix.turn_tokens.begin(), prefix.turn_tokens.end());
    if (static_cast<int>(flat.size()) >= spec_.context_limit) {
        throw ContextOverflowError("ToyModel: prefix exceeds context limit");
    }

    if (tokens_since_last_eos(flat, spec_.eos_token) >= spec_.max_length) {
        return RawDistribution{{{spec_.eos_token, 0.0}}};
    }

    const ToyTransition* best = nullptr;
    for (const auto& t : spec_.transitions) {
        if (t.context.size() > flat.size()) continue;
        if (!std::equal(t.context.rbegin(), t.context.rend(), flat.rbegin())) continue;
        if (!best || t.context.size() > best->context.size()) best = &t;
    }
    if (best) return best->dist;
    return default_rule(flat);
}

namespace {

ToyModelSpec spec_from_json(const nlohmann::json& j) {
    ToyModelSpec spec;
    spec.vocab = j.at("vocab").get<std::vector<std::string>>();

    std::unordered_map<std::string, TokenId> ids;
    for (std::size_t i = 0; i < spec.vocab.size(); ++i) ids[spec.vocab[i]] = static_cast<TokenId>(i);
    auto resolve = [&](const std::string& s) -> TokenId {
        auto it = ids.find(s);
        if (it == ids.end()) throw std::invalid_argument("toy spec: unknown surface '" + s + "'");
        return it->second;
    };

    spec.eos_token = resolve(j.at("eos").get<std::string>());
    spec.max_length = j.value("max_length", 32);
    spec.context_limit = j.value("context_limit", 4096);
    spec.default_seed = j.value("default_seed", std::uint64_t{0});

    for (const auto& t : j.value("transitions", nlohmann::json::array())) {
        ToyTransition tr;
        for (const auto& w : split_words(t.at("context").get<std::string>())) {
            tr.context.push_back(resolve(w));
        }
        for (const auto& entry : t.at("dist")) {
            const double p = entry.at(1).get<double>();
            if (!(p > 0.0)) throw std::invalid_argument("toy spec: transition prob must be > 0");
            tr.dist.entries.push_back({resolve(entry.at(0).get<std::string>()), std::log(p)});
        }
        spec.transitions.push_back(std::move(tr));
    }
    return spec;
}

}  // namespace

ToyModel ToyModel::from_json_text(const std::string& text) {
    return ToyModel(spec_from_json(nlohmann::json::parse(text)));
}

ToyModel ToyModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ToyModel: cannot open spec file: " + path);
    nlohmann::json j;
    in >> j;
    return ToyModel(spec_from_json(j));
}

}  // namespace boa
