#include <sstream>

#include <gtest/gtest.h>

#include "keymine/error.hpp"
#include "keymine/evaluation.hpp"
#include "test_support.hpp"

namespace keymine {
namespace {

using testing::alphabet_of;
using testing::hand_layout;

// Linear-scan oracle, written independently of evaluate().
EvalReport oracle_scan(const std::u32string& tokens, const std::map<CodePoint, Hand>& hands) {
    EvalReport r;
    int prev = -1;  // -1: chain broken, 0: left, 1: right
    for (char32_t c : tokens) {
        ++r.total_chars;
        const auto it = hands.find(c);
        if (it == hands.end()) {
            ++r.undetermined;
            prev = -1;
            continue;
        }
        const int h = it->second == Hand::Left ? 0 : 1;
        (h == 0 ? r.left_load : r.right_load)++;
        if (prev >= 0 && prev != h) ++r.hand_switching;
        prev = h;
    }
    return r;
}

std::map<CodePoint, Hand> swap_hands(std::map<CodePoint, Hand> m) {
    for (auto& [c, h] : m) h = opposite(h);
    return m;
}

EvalReport report(std::string name, std::uint64_t sw, std::uint64_t left, std::uint64_t right, std::uint64_t und) {
    EvalReport r;
    r.layout_name = std::move(name);
    r.hand_switching = sw;
    r.left_load = left;
    r.right_load = right;
    r.undetermined = und;
    r.total_chars = left + right + und;
    return r;
}

TEST(Evaluate, SingleToken) {
    const auto r = evaluate(tokenize("a", alphabet_of(U"ab")), hand_layout({{U'a', Hand::Left}}));
    EXPECT_EQ(r.hand_switching, 0u);
    EXPECT_EQ(r.left_load + r.right_load, 1u);
    EXPECT_EQ(r.total_chars, 1u);
}

TEST(Evaluate, PerfectAlternation) {
    const auto r = evaluate(tokenize("abab", alphabet_of(U"ab")),
                            hand_layout({{U'a', Hand::Left}, {U'b', Hand::Right}}, "alt"));
    EXPECT_EQ(r.layout_name, "alt");
    EXPECT_EQ(r.hand_switching, 3u);
    EXPECT_EQ(r.left_load, 2u);
    EXPECT_EQ(r.right_load, 2u);
    EXPECT_EQ(r.undetermined, 0u);
    EXPECT_EQ(r.total_chars, 4u);
}

TEST(Evaluate, UnmappedTokensBreakTheChain) {
    const auto alphabet = alphabet_of(U"abc");
    const auto layout = hand_layout({{U'a', Hand::Left}, {U'b', Hand::Right}});
    // c is a letter the layout does not map; 7 is not a letter.
    const auto r = evaluate(tokenize("acb a7b ab", alphabet), layout);
    EXPECT_EQ(r.hand_switching, 3u);  // b>a, b>a, a>b
    EXPECT_EQ(r.undetermined, 2u);
    EXPECT_EQ(r.total_chars, 8u);
}

TEST(Evaluate, MatchesOracleOnSeededStream) {
    const std::u32string letters = U"abcdefghij";
    const std::map<CodePoint, Hand> hands{{U'a', Hand::Left},  {U'b', Hand::Right}, {U'c', Hand::Left},
                                          {U'd', Hand::Right}, {U'e', Hand::Right}, {U'f', Hand::Left},
                                          {U'g', Hand::Left},  {U'h', Hand::Right}};  // i, j unmapped
    const auto text = testing::synthetic_text(letters, 1000, 42, 0.05);
    const auto stream = tokenize(text, alphabet_of(letters));
    ASSERT_EQ(stream.tokens.size(), 1000u);
    std::u32string tokens;
    for (const auto& t : stream.tokens) tokens.push_back(t.code_point);
    auto expected = oracle_scan(tokens, hands);
    expected.layout_name = "fixture";
    EXPECT_EQ(evaluate(stream, hand_layout(hands)), expected);
}

TEST(Evaluate, IdentitiesOverSeeds) {
    const auto alphabet = alphabet_of(testing::kLatin12);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        std::mt19937_64 rng(seed);
        std::map<CodePoint, Hand> hands;
        for (char32_t c : testing::kLatin12) {
            const auto u = unit_uniform(rng);
            if (u < 0.9) hands[c] = u < 0.45 ? Hand::Left : Hand::Right;
        }
        const auto stream = tokenize(testing::synthetic_text(testing::kLatin12, 2000, seed, 0.05), alphabet);
        const auto r = evaluate(stream, hand_layout(hands));
        EXPECT_EQ(r.left_load + r.right_load + r.undetermined, r.total_chars);
        EXPECT_EQ(r.total_chars, stream.tokens.size());
        EXPECT_LE(r.hand_switching, std::max<std::uint64_t>(1, r.left_load + r.right_load) - 1);

        const auto s = evaluate(stream, hand_layout(swap_hands(hands)));
        EXPECT_EQ(s.left_load, r.right_load);
        EXPECT_EQ(s.right_load, r.left_load);
        EXPECT_EQ(s.hand_switching, r.hand_switching);
        EXPECT_EQ(s.undetermined, r.undetermined);

        EXPECT_EQ(evaluate(stream, hand_layout(hands)), r);
    }
}

TEST(Evaluate, OneHandHasNoSwitches) {
    std::map<CodePoint, Hand> hands;
    for (char32_t c : testing::kLatin12) hands[c] = Hand::Right;
    const auto stream = tokenize(testing::synthetic_text(testing::kLatin12, 3000, 9), alphabet_of(testing::kLatin12));
    const auto r = evaluate(stream, hand_layout(hands));
    EXPECT_EQ(r.hand_switching, 0u);
    EXPECT_EQ(r.right_load, 3000u);
}

TEST(Evaluate, StreamsDoNotPairAcrossSources) {
    const auto ab = alphabet_of(U"ab");
    const auto layout = hand_layout({{U'a', Hand::Left}, {U'b', Hand::Right}});
    const std::vector<LetterStream> streams{tokenize("a", ab), tokenize("b", ab)};
    const auto r = evaluate(streams, layout);
    EXPECT_EQ(r.hand_switching, 0u);
    EXPECT_EQ(r.total_chars, 2u);
}

TEST(Compare, ReferenceSwitchingOrder) {
    // Switching counts of the proposed layout and two others; loads are
    // placeholders sharing one total.
    const std::vector<EvalReport> in{report("layout-3", 358672, 400000, 400000, 56725),
                                     report("proposed", 410113, 400000, 400000, 56725),
                                     report("bijoy", 358873, 400000, 400000, 56725)};
    const auto table = compare(in);
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_EQ(table.rows[0].report.layout_name, "proposed");
    EXPECT_EQ(table.rows[1].report.layout_name, "bijoy");
    EXPECT_EQ(table.rows[2].report.layout_name, "layout-3");
}

TEST(Compare, RatiosAndTies) {
    const std::vector<EvalReport> one{report("x", 30, 60, 40, 0)};
    const auto t = compare(one);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_DOUBLE_EQ(t.rows[0].switching_ratio, 0.3);
    EXPECT_DOUBLE_EQ(t.rows[0].load_imbalance, 0.2);

    const std::vector<EvalReport> twins{report("first", 5, 5, 5, 0), report("second", 5, 5, 5, 0)};
    const auto tt = compare(twins);
    EXPECT_EQ(tt.rows[0].report.layout_name, "first");
    EXPECT_EQ(tt.rows[1].report.layout_name, "second");
}

TEST(Compare, Errors) {
    EXPECT_THROW(compare(std::vector<EvalReport>{}), DomainError);
    const std::vector<EvalReport> mismatched{report("a", 1, 2, 2, 0), report("b", 1, 2, 3, 0)};
    EXPECT_THROW(compare(mismatched), IncomparableReportsError);
}

TEST(Reports, JsonRoundTripAndIdentityCheck) {
    const auto r = report("x", 3, 4, 5, 6);
    EXPECT_EQ(EvalReport::from_json(r.to_json()), r);
    auto broken = r.to_json();
    broken["total_chars"] = 99;
    EXPECT_THROW(EvalReport::from_json(broken), ParseError);
    auto missing = r.to_json();
    missing.erase("left_load");
    try {
        EvalReport::from_json(missing);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field_path(), "left_load");
    }
}

TEST(Reports, TsvColumns) {
    const std::vector<EvalReport> in{report("x", 3, 4, 5, 6)};
    std::ostringstream a;
    write_reports_tsv(a, in);
    EXPECT_EQ(a.str(), "name\thand_switching\tleft_load\tright_load\tundetermined\ttotal_chars\nx\t3\t4\t5\t6\t15\n");
    std::ostringstream b;
    write_comparison_tsv(b, compare(in));
    EXPECT_EQ(b.str().substr(0, b.str().find('\n')),
              "name\thand_switching\tleft_load\tright_load\tundetermined\tswitching_ratio\tload_imbalance");
}

}  // namespace
}  // namespace keymine
