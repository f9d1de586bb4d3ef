#include <cmath>
#include <numeric>

#include "keymine/error.hpp"
#include "keymine/synthetic.hpp"

namespace keymine {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t sample_index(std::mt19937_64& rng, const std::vector<double>& weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("sampling weights must have a positive sum");
    double u = unit_uniform(rng) * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    // Rounding can leave u just above the last weight.
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0) return i;
    }
    return weights.size() - 1;
}

MarkovTextModel random_markov_model(const std::vector<CodePoint>& symbols, std::uint64_t seed) {
    if (symbols.empty()) throw DomainError("Markov model needs at least one symbol");
    std::mt19937_64 rng(seed);
    const std::size_t n = symbols.size();

    // Random permutation of Zipf ranks so the frequency order is seed-dependent.
    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(rank[i - 1], rank[static_cast<std::size_t>(rng() % i)]);

    MarkovTextModel m;
    m.symbols = symbols;
    m.initial.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.initial[i] = 1.0 / static_cast<double>(rank[i] + 1);
    m.transition.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Popularity of the target times a random affinity; squaring the
            // uniform makes some transitions clearly preferred.
            const double u = unit_uniform(rng);
            m.transition[i][j] = m.initial[j] * (0.05 + u * u);
        }
    }
    return m;
}

MarkovTextModel two_group_model(const std::vector<CodePoint>& group_a, const std::vector<double>& weights_a,
                                const std::vector<CodePoint>& group_b, const std::vector<double>& weights_b,
                                double cross_probability) {
    if (group_a.size() != weights_a.size() || group_b.size() != weights_b.size()) {
        throw DomainError("each group needs one weight per symbol");
    }
    if (group_a.empty() || group_b.empty()) throw DomainError("both groups must be non-empty");
    if (!(cross_probability >= 0.0 && cross_probability <= 1.0)) {
        throw DomainError("cross_probability must lie in [0, 1]");
    }
    const double sum_a = std::accumulate(weights_a.begin(), weights_a.end(), 0.0);
    const double sum_b = std::accumulate(weights_b.begin(), weights_b.end(), 0.0);

    MarkovTextModel m;
    m.symbols = group_a;
    m.symbols.insert(m.symbols.end(), group_b.begin(), group_b.end());
    const std::size_t na = group_a.size();
    const std::size_t n = m.symbols.size();
    std::vector<double> norm(n);
    for (std::size_t i = 0; i < na; ++i) norm[i] = weights_a[i] / sum_a;
    for (std::size_t i = na; i < n; ++i) norm[i] = weights_b[i - na] / sum_b;

    m.initial.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.initial[i] = 0.5 * norm[i];
    m.transition.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const bool from_a = i < na;
        for (std::size_t j = 0; j < n; ++j) {
            const bool to_a = j < na;
            m.transition[i][j] = norm[j] * (from_a == to_a ? 1.0 - cross_probability : cross_probability);
        }
    }
    return m;
}

std::string generate_text(const MarkovTextModel& model, const GenerationOptions& options, std::uint64_t seed) {
    if (model.symbols.empty() || model.initial.size() != model.symbols.size() ||
        model.transition.size() != model.symbols.size()) {
        throw DomainError("malformed Markov model");
    }
    std::mt19937_64 rng(seed);
    std::string out;
    std::size_t state = sample_index(rng, model.initial);
    for (std::size_t emitted = 0; emitted < options.symbol_count; ++emitted) {
        if (!options.noise.empty() && unit_uniform(rng) < options.noise_probability) {
            out += encode_utf8(options.noise[static_cast<std::size_t>(rng() % options.noise.size())]);
        } else {
            out += encode_utf8(model.symbols[state]);
            state = sample_index(rng, model.transition[state]);
        }
        if (unit_uniform(rng) < options.space_probability) out.push_back(' ');
    }
    out.push_back('\n');
    return out;
}

}  // namespace keymine
