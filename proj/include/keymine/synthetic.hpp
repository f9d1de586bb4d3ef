#pragma once

// Seeded synthetic corpora. Output depends only on the model and the seed:
// sampling uses raw mt19937_64 words, never std::*_distribution, so text is
// identical across standard libraries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "keymine/corpus.hpp"

namespace keymine {

/// First-order Markov chain over code points.
struct MarkovTextModel {
    std::vector<CodePoint> symbols;
    std::vector<double> initial;                  ///< size = symbols
    std::vector<std::vector<double>> transition;  ///< row-stochastic up to scale
};

/// Uniform double in [0, 1) from the top 53 bits of one engine word.
double unit_uniform(std::mt19937_64& rng);
/// Index drawn proportionally to non-negative `weights`.
std::size_t sample_index(std::mt19937_64& rng, const std::vector<double>& weights);

/// Zipf-like initial weights and random transition rows.
MarkovTextModel random_markov_model(const std::vector<CodePoint>& symbols, std::uint64_t seed);

/// Two disjoint groups; the next symbol comes from the other group with
/// probability `cross_probability`, chosen within a group by the group's weights.
MarkovTextModel two_group_model(const std::vector<CodePoint>& group_a, const std::vector<double>& weights_a,
                                const std::vector<CodePoint>& group_b, const std::vector<double>& weights_b,
                                double cross_probability);

struct GenerationOptions {
    std::size_t symbol_count = 1000;
    /// Probability of emitting a space after a symbol (spaces are not counted).
    double space_probability = 0.15;
    /// Probability of emitting one of `noise` instead of a model symbol.
    double noise_probability = 0.0;
    std::vector<CodePoint> noise;
};

/// UTF-8 text with exactly `symbol_count` non-space code points.
std::string generate_text(const MarkovTextModel& model, const GenerationOptions& options, std::uint64_t seed);

}  // namespace keymine
