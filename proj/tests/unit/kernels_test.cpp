// Parallel kernels against the serial reference implementations.

#include <omp.h>

#include <gtest/gtest.h>

#include "keymine/reference.hpp"
#include "test_support.hpp"

namespace keymine {
namespace {

class Kernels : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(GetParam());
    }
    void TearDown() override { omp_set_num_threads(saved_); }

private:
    int saved_ = 1;
};

TEST_P(Kernels, NgraphCounting) {
    const auto alphabet = testing::alphabet_of(testing::kLatin12);
    for (std::size_t size : {0u, 1u, 2u, 7u, 100u, 50000u}) {
        const auto s = tokenize(testing::synthetic_text(testing::kLatin12, size, size + 1, 0.02), alphabet);
        for (int n = 1; n <= 3; ++n) EXPECT_EQ(count_ngraphs(s, n), reference::count_ngraphs_serial(s, n));
    }
}

TEST_P(Kernels, SupportCounting) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto db = testing::random_db(seed, 10, 2000);
        std::vector<Itemset> candidates;
        for (ItemId a = 0; a < 10; ++a) {
            candidates.push_back({a});
            for (ItemId b = a + 1; b < 10; ++b) {
                candidates.push_back({a, b});
                if (b + 1 < 10) candidates.push_back({a, b, static_cast<ItemId>(b + 1)});
            }
        }
        EXPECT_EQ(count_supports(db, candidates), reference::count_supports_serial(db, candidates));
    }
}

TEST_P(Kernels, Evaluation) {
    const auto alphabet = testing::alphabet_of(testing::kLatin12);
    std::map<CodePoint, Hand> hands;
    for (std::size_t i = 0; i < 10; ++i) hands[testing::kLatin12[i]] = i % 3 == 0 ? Hand::Left : Hand::Right;
    const auto layout = testing::hand_layout(hands);
    for (std::size_t size : {0u, 1u, 3u, 1000u, 80000u}) {
        const auto s = tokenize(testing::synthetic_text(testing::kLatin12, size, size, 0.03), alphabet);
        EXPECT_EQ(evaluate(s, layout), reference::evaluate_serial(s, layout));
    }
}

INSTANTIATE_TEST_SUITE_P(Threads, Kernels, ::testing::Values(1, 2, 4, 7));

}  // namespace
}  // namespace keymine
