#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace advsat {

// An epsilon-fraction of variables revealed with their ground-truth bits.
// Noise is persistent: generated eagerly at construction, a pure function of
// (ground truth, epsilon, seed) with one counter-based draw per index, so the
// sets are nested across epsilon for a fixed seed.
struct SubsetAdvice {
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<int, bool>> revealed;  // (variable index, true bit), ascending

    bool contains(int v) const;
    // value for a revealed variable; caller must check contains() first
    bool value(int v) const;
};

// A full 0/1 vector; each bit matches the ground truth independently with
// probability (1+epsilon)/2. Persistent, counter-based per index.
struct LabelAdvice {
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::vector<bool> labels;  // labels[i] is the advised value of variable i+1
};

SubsetAdvice gen_subset_advice(const std::vector<bool>& x_star, double epsilon,
                               std::uint64_t seed);

LabelAdvice gen_label_advice(const std::vector<bool>& x_star, double epsilon,
                             std::uint64_t seed);

// Fills unrevealed indices with fair coins: correct w.p. eps + (1-eps)/2 = (1+eps)/2,
// i.e. distributed as label advice at the same epsilon.
LabelAdvice subset_to_label(const SubsetAdvice& sub, int num_vars, std::uint64_t seed);

// JSON advice files: {model: "subset"|"label", epsilon, seed, entries}.
// Subset entries are [index, bit] pairs; label entries a 0/1 string.
std::string serialize_subset_advice(const SubsetAdvice& a);
std::string serialize_label_advice(const LabelAdvice& a);
void write_advice_file(const SubsetAdvice& a, const std::string& path);
void write_advice_file(const LabelAdvice& a, const std::string& path);

enum class AdviceModel { Subset, Label };

struct ParsedAdvice {
    AdviceModel model;
    SubsetAdvice subset;  // valid when model == Subset
    LabelAdvice label;    // valid when model == Label
};

ParsedAdvice parse_advice(const std::string& json_text);
ParsedAdvice read_advice_file(const std::string& path);

}  // namespace advsat
