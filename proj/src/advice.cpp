#include "advsat/advice.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "advsat/rng.hpp"
#include "json.hpp"

namespace advsat {

namespace {
constexpr std::uint64_t kSubsetTag = 0x5355425345541ULL;
constexpr std::uint64_t kLabelTag = 0x4c4142454cULL;
constexpr std::uint64_t kFillTag = 0x46494c4cULL;
}  // namespace

bool SubsetAdvice::contains(int v) const {
    auto it = std::lower_bound(revealed.begin(), revealed.end(), v,
                               [](const std::pair<int, bool>& e, int x) { return e.first < x; });
    return it != revealed.end() && it->first == v;
}

bool SubsetAdvice::value(int v) const {
    auto it = std::lower_bound(revealed.begin(), revealed.end(), v,
                               [](const std::pair<int, bool>& e, int x) { return e.first < x; });
    if (it == revealed.end() || it->first != v) {
        throw std::out_of_range("variable not revealed by advice");
    }
    return it->second;
}

SubsetAdvice gen_subset_advice(const std::vector<bool>& x_star, double epsilon,
                               std::uint64_t seed) {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of [0,1]");
    SubsetAdvice a;
    a.epsilon = epsilon;
    a.seed = seed;
    for (size_t i = 0; i < x_star.size(); ++i) {
        if (counter_uniform(seed, kSubsetTag, i) < epsilon) {
            a.revealed.emplace_back(static_cast<int>(i) + 1, x_star[i]);
        }
    }
    return a;
}

LabelAdvice gen_label_advice(const std::vector<bool>& x_star, double epsilon,
                             std::uint64_t seed) {
    if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of [0,1]");
    LabelAdvice a;
    a.epsilon = epsilon;
    a.seed = seed;
    a.labels.resize(x_star.size());
    double p_correct = (1.0 + epsilon) / 2.0;
    for (size_t i = 0; i < x_star.size(); ++i) {
        bool correct = counter_uniform(seed, kLabelTag, i) < p_correct;
        a.labels[i] = correct ? x_star[i] : !x_star[i];
    }
    return a;
}

LabelAdvice subset_to_label(const SubsetAdvice& sub, int num_vars, std::uint64_t seed) {
    LabelAdvice a;
    a.epsilon = sub.epsilon;
    a.seed = seed;
    a.labels.resize(static_cast<size_t>(num_vars));
    for (int v = 1; v <= num_vars; ++v) {
        if (sub.contains(v)) {
            a.labels[static_cast<size_t>(v) - 1] = sub.value(v);
        } else {
            a.labels[static_cast<size_t>(v) - 1] =
                counter_uniform(seed, kFillTag, static_cast<std::uint64_t>(v)) < 0.5;
        }
    }
    return a;
}

std::string serialize_subset_advice(const SubsetAdvice& a) {
    nlohmann::json j;
    j["model"] = "subset";
    j["epsilon"] = a.epsilon;
    j["seed"] = a.seed;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [idx, bit] : a.revealed) {
        entries.push_back({idx, bit ? 1 : 0});
    }
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

std::string serialize_label_advice(const LabelAdvice& a) {
    nlohmann::json j;
    j["model"] = "label";
    j["epsilon"] = a.epsilon;
    j["seed"] = a.seed;
    std::string bits;
    bits.reserve(a.labels.size());
    for (bool b : a.labels) bits.push_back(b ? '1' : '0');
    j["entries"] = bits;
    return j.dump(2) + "\n";
}

void write_advice_file(const SubsetAdvice& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_subset_advice(a);
}

void write_advice_file(const LabelAdvice& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_label_advice(a);
}

ParsedAdvice parse_advice(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    ParsedAdvice out;
    std::string model = j.at("model").get<std::string>();
    if (model == "subset") {
        out.model = AdviceModel::Subset;
        out.subset.epsilon = j.at("epsilon").get<double>();
        out.subset.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& e : j.at("entries")) {
            int idx = e.at(0).get<int>();
            int bit = e.at(1).get<int>();
            if (idx < 1 || (bit != 0 && bit != 1)) {
                throw std::runtime_error("bad subset advice entry");
            }
            out.subset.revealed.emplace_back(idx, bit == 1);
        }
        std::sort(out.subset.revealed.begin(), out.subset.revealed.end());
    } else if (model == "label") {
        out.model = AdviceModel::Label;
        out.label.epsilon = j.at("epsilon").get<double>();
        out.label.seed = j.at("seed").get<std::uint64_t>();
        std::string bits = j.at("entries").get<std::string>();
        out.label.labels.reserve(bits.size());
        for (char c : bits) {
            if (c != '0' && c != '1') throw std::runtime_error("bad label advice bit");
            out.label.labels.push_back(c == '1');
        }
    } else {
        throw std::runtime_error("unknown advice model: " + model);
    }
    return out;
}

ParsedAdvice read_advice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_advice(ss.str());
}

}  // namespace advsat
