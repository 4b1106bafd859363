#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "advsat/advice.hpp"

using namespace advsat;

namespace {

std::vector<bool> random_truth(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<bool> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (rng() & 1) != 0;
    return x;
}

double agreement(const std::vector<bool>& a, const std::vector<bool>& b) {
    int same = 0;
    for (size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
    return static_cast<double>(same) / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("subset advice at the endpoints") {
    std::vector<bool> x = random_truth(50, 1);
    CHECK(gen_subset_advice(x, 0.0, 9).revealed.empty());

    SubsetAdvice full = gen_subset_advice(x, 1.0, 9);
    REQUIRE(full.revealed.size() == 50);
    for (int v = 1; v <= 50; ++v) {
        CHECK(full.contains(v));
        CHECK(full.value(v) == x[static_cast<size_t>(v) - 1]);
    }
}

TEST_CASE("persistence: identical arguments, identical advice") {
    std::vector<bool> x = random_truth(200, 2);
    SubsetAdvice a = gen_subset_advice(x, 0.37, 123);
    SubsetAdvice b = gen_subset_advice(x, 0.37, 123);
    CHECK(a.revealed == b.revealed);

    LabelAdvice la = gen_label_advice(x, 0.6, 77);
    LabelAdvice lb = gen_label_advice(x, 0.6, 77);
    CHECK(la.labels == lb.labels);

    CHECK(subset_to_label(a, 200, 5).labels == subset_to_label(a, 200, 5).labels);
}

TEST_CASE("subset sizes concentrate around eps * n") {
    std::vector<bool> x = random_truth(10000, 3);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        size_t s = gen_subset_advice(x, 0.3, seed).revealed.size();
        CHECK(s >= 2800);
        CHECK(s <= 3200);
    }
}

TEST_CASE("subset sets are nested across eps for a fixed seed") {
    std::vector<bool> x = random_truth(500, 4);
    SubsetAdvice lo = gen_subset_advice(x, 0.2, 42);
    SubsetAdvice mid = gen_subset_advice(x, 0.5, 42);
    SubsetAdvice hi = gen_subset_advice(x, 0.9, 42);
    for (const auto& [v, bit] : lo.revealed) {
        CHECK(mid.contains(v));
        (void)bit;
    }
    for (const auto& [v, bit] : mid.revealed) {
        CHECK(hi.contains(v));
        (void)bit;
    }
}

TEST_CASE("label advice endpoints and agreement rates") {
    std::vector<bool> x = random_truth(10000, 5);
    CHECK(gen_label_advice(x, 1.0, 8).labels == x);

    double mean0 = 0.0, mean5 = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        mean0 += agreement(gen_label_advice(x, 0.0, seed).labels, x);
        mean5 += agreement(gen_label_advice(x, 0.5, seed).labels, x);
    }
    mean0 /= 100.0;
    mean5 /= 100.0;
    CHECK(std::abs(mean0 - 0.5) < 0.02);
    CHECK(std::abs(mean5 - 0.75) < 0.02);
}

TEST_CASE("per-index inclusion frequency converges to eps") {
    int n = 50;
    std::vector<bool> x = random_truth(n, 6);
    std::vector<int> hits(static_cast<size_t>(n), 0);
    int seeds = 2000;
    for (int s = 1; s <= seeds; ++s) {
        SubsetAdvice a = gen_subset_advice(x, 0.35, static_cast<std::uint64_t>(s));
        for (const auto& [v, bit] : a.revealed) {
            ++hits[static_cast<size_t>(v) - 1];
            (void)bit;
        }
    }
    for (int i = 0; i < n; ++i) {
        double freq = static_cast<double>(hits[static_cast<size_t>(i)]) / seeds;
        CHECK(std::abs(freq - 0.35) < 0.05);
    }
}

TEST_CASE("subset_to_label simulates label advice") {
    int n = 2000;
    std::vector<bool> x = random_truth(n, 7);
    double eps = 0.4;
    double sim = 0.0, direct = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        SubsetAdvice sub = gen_subset_advice(x, eps, seed);
        LabelAdvice filled = subset_to_label(sub, n, seed + 1000);
        for (const auto& [v, bit] : sub.revealed) {
            CHECK(filled.labels[static_cast<size_t>(v) - 1] == bit);
        }
        sim += agreement(filled.labels, x);
        direct += agreement(gen_label_advice(x, eps, seed).labels, x);
    }
    sim /= 200.0;
    direct /= 200.0;
    CHECK(std::abs(sim - 0.7) < 0.02);
    CHECK(std::abs(sim - direct) < 0.01);
}

TEST_CASE("subset_to_label endpoints") {
    int n = 400;
    std::vector<bool> x = random_truth(n, 8);
    SubsetAdvice full = gen_subset_advice(x, 1.0, 3);
    CHECK(subset_to_label(full, n, 4).labels == x);

    SubsetAdvice empty = gen_subset_advice(x, 0.0, 3);
    double agr = agreement(subset_to_label(empty, n, 4).labels, x);
    CHECK(agr > 0.4);
    CHECK(agr < 0.6);
}

TEST_CASE("advice JSON round trip") {
    std::vector<bool> x = random_truth(40, 9);
    SubsetAdvice sub = gen_subset_advice(x, 0.45, 17);
    ParsedAdvice ps = parse_advice(serialize_subset_advice(sub));
    REQUIRE(ps.model == AdviceModel::Subset);
    CHECK(ps.subset.epsilon == sub.epsilon);
    CHECK(ps.subset.seed == sub.seed);
    CHECK(ps.subset.revealed == sub.revealed);

    LabelAdvice lab = gen_label_advice(x, 0.45, 17);
    ParsedAdvice pl = parse_advice(serialize_label_advice(lab));
    REQUIRE(pl.model == AdviceModel::Label);
    CHECK(pl.label.epsilon == lab.epsilon);
    CHECK(pl.label.seed == lab.seed);
    CHECK(pl.label.labels == lab.labels);
}

TEST_CASE("advice JSON rejects junk") {
    CHECK_THROWS(parse_advice("not json"));
    CHECK_THROWS(parse_advice(R"({"model":"votes","epsilon":0.5,"seed":1,"entries":[]})"));
    CHECK_THROWS(parse_advice(R"({"model":"label","epsilon":0.5,"seed":1,"entries":"012"})"));
}
