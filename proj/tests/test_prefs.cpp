#include <gtest/gtest.h>

#include <set>

#include "scs/prefs.hpp"
#include "support/oracles.hpp"

using namespace scs;

namespace {

WeakOrder R(const char* s, int m = -1) { return parse_ranking(s, m); }

std::set<std::pair<int, int>> cells(const Relation& r) {
    std::set<std::pair<int, int>> out;
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            if (r.holds(x, y)) out.insert({x, y});
    return out;
}

}  // namespace

TEST(WeakOrderEnumeration, CountsFollowOrderedBellRecurrence) {
    const std::uint64_t expected[] = {1, 3, 13, 75, 541};
    for (int m = 1; m <= 5; ++m) {
        EXPECT_EQ(oracle::fubini(m), expected[m - 1]);
        EXPECT_EQ(enumerate_weak_orders(m).size(), oracle::fubini(m)) << "m=" << m;
    }
}

TEST(WeakOrderEnumeration, MatchesBruteForceSetAndCanonicalOrder) {
    for (int m = 1; m <= 4; ++m) {
        const auto brute = oracle::brute_weak_orders(m);
        const auto& lib = enumerate_weak_orders(m);
        ASSERT_EQ(lib.size(), brute.size()) << "m=" << m;
        for (std::size_t k = 0; k < brute.size(); ++k) EXPECT_EQ(oracle::of(lib[k]), brute[k]) << "m=" << m << " k=" << k;
    }
}

TEST(WeakOrderEnumeration, TwoAlternativesListsTheThreeOrders) {
    const auto& orders = enumerate_weak_orders(2);
    std::set<std::string> names;
    for (const auto& w : orders) names.insert(to_ranking(w));
    EXPECT_EQ(names, (std::set<std::string>{"a>b", "b>a", "a~b"}));
}

TEST(WeakOrderEnumeration, DeterministicAcrossCalls) {
    const std::vector<WeakOrder> first = enumerate_weak_orders(4);
    EXPECT_EQ(first, enumerate_weak_orders(4));
}

TEST(WeakOrderEnumeration, RefusesUniverseOutsideCap) {
    EXPECT_THROW(enumerate_weak_orders(6), CapExceeded);
    EXPECT_THROW(enumerate_weak_orders(0), CapExceeded);
    try {
        enumerate_linear_orders(7);
        FAIL();
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.required(), 7u);
        EXPECT_EQ(e.allowed(), 5u);
    }
}

TEST(LinearOrderEnumeration, FactorialCountsAndSubsetOfWeak) {
    for (int m = 1; m <= 5; ++m) {
        const auto& lin = enumerate_linear_orders(m);
        EXPECT_EQ(lin.size(), oracle::factorial(m));
        const auto& weak = enumerate_weak_orders(m);
        for (const auto& w : lin) EXPECT_NE(std::find(weak.begin(), weak.end(), w), weak.end());
    }
    for (int m = 1; m <= 4; ++m) {
        const auto brute = oracle::brute_linear_orders(m);
        const auto& lin = enumerate_linear_orders(m);
        ASSERT_EQ(lin.size(), brute.size());
        for (std::size_t k = 0; k < brute.size(); ++k) EXPECT_EQ(oracle::of(lin[k]), brute[k]);
    }
}

TEST(LinearOrderEnumeration, ThreeAlternativeOrder) {
    std::vector<std::string> names;
    for (const auto& w : enumerate_linear_orders(3)) names.push_back(to_ranking(w));
    EXPECT_EQ(names, (std::vector<std::string>{"a>b>c", "a>c>b", "c>a>b", "b>a>c", "b>c>a", "c>b>a"}));
}

TEST(StrictPart, Examples) {
    EXPECT_TRUE(cells(strict_of(WeakOrder::indifference(2)).relation()).empty());
    EXPECT_EQ(cells(strict_of(R("a>b")).relation()), (std::set<std::pair<int, int>>{{0, 1}}));
    EXPECT_EQ(cells(strict_of(R("a>b~c")).relation()), (std::set<std::pair<int, int>>{{0, 1}, {0, 2}}));
}

TEST(StrictPart, RejectsNonWeakOrderRelation) {
    Relation cyclic(3);
    for (int x = 0; x < 3; ++x) cyclic.set(x, x);
    cyclic.set(0, 1);
    cyclic.set(1, 2);
    cyclic.set(2, 0);
    EXPECT_THROW(strict_of(cyclic), ClassificationError);
    EXPECT_THROW(indiff_of(Relation(2)), ClassificationError);
}

TEST(IndifferencePart, Examples) {
    EXPECT_EQ(cells(indiff_of(R("a>b")).relation()), (std::set<std::pair<int, int>>{{0, 0}, {1, 1}}));
    EXPECT_EQ(cells(indiff_of(WeakOrder::indifference(2)).relation()).size(), 4u);
    EXPECT_EQ(cells(indiff_of(R("a>b~c")).relation()),
              (std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}, {1, 2}, {2, 1}}));
}

TEST(Reconstruction, Examples) {
    EXPECT_EQ(weak_of(strict_of(R("a>b")), indiff_of(R("a>b"))), R("a>b"));
    EXPECT_EQ(weak_of(strict_of(WeakOrder::indifference(2)), indiff_of(WeakOrder::indifference(2))),
              WeakOrder::indifference(2));
}

TEST(Reconstruction, RejectsPartsFromDifferentOrders) {
    // b and c end up unrelated.
    EXPECT_THROW(weak_of(strict_of(R("a>b~c")), indiff_of(R("a>b>c"))), ReconstructionError);
}

TEST(Reconstruction, ExhaustiveRoundTripAndPartProperties) {
    for (int m = 1; m <= 4; ++m)
        for (const auto& r : enumerate_weak_orders(m)) {
            const StrictPart p = strict_of(r);
            const IndiffPart i = indiff_of(r);
            EXPECT_EQ(weak_of(p, i), r);
            EXPECT_TRUE(p.relation().is_asymmetric());
            EXPECT_TRUE(p.relation().is_transitive());
            EXPECT_TRUE(i.relation().is_reflexive());
            EXPECT_TRUE(i.relation().is_symmetric());
            EXPECT_TRUE(i.relation().is_transitive());
        }
}

TEST(Trichotomy, ExactlyOneVerdictPerPairExhaustive) {
    for (int m = 1; m <= 4; ++m)
        for (const auto& r : enumerate_weak_orders(m))
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y) {
                    if (x == y) continue;
                    const int verdicts = int(r.strictly_prefers(x, y)) + int(r.strictly_prefers(y, x)) +
                                         int(r.indifferent(x, y));
                    EXPECT_EQ(verdicts, 1);
                }
}

TEST(ChoiceSet, Examples) {
    const AltSet all = AltSet::universe(3);
    EXPECT_EQ(choice_set(all, R("a>b~c")), AltSet::of({0}));
    EXPECT_EQ(choice_set(all, WeakOrder::indifference(3)), all);
    Relation cyclic(3);
    for (int x = 0; x < 3; ++x) cyclic.set(x, x);
    cyclic.set(0, 1);
    cyclic.set(1, 2);
    cyclic.set(2, 0);
    EXPECT_TRUE(choice_set(all, cyclic).empty());
}

TEST(ChoiceSet, NonEmptyForEveryWeakOrderAndMenu) {
    for (int m = 1; m <= 4; ++m)
        for (const auto& r : enumerate_weak_orders(m))
            for (std::uint32_t menu = 1; menu < (1u << m); ++menu) {
                const AltSet best = choice_set(AltSet(menu), r);
                EXPECT_FALSE(best.empty());
                EXPECT_EQ(best.bits() & ~menu, 0u);
            }
}

TEST(ChoiceSet, EmptyOrForeignMenuIsUsageError) {
    EXPECT_THROW(choice_set(AltSet(), R("a>b")), UsageError);
    EXPECT_THROW(choice_set(AltSet::of({2}), R("a>b")), UsageError);
}

TEST(RankingString, RoundTripsEveryOrder) {
    for (int m = 1; m <= 5; ++m)
        for (const auto& r : enumerate_weak_orders(m)) {
            EXPECT_EQ(parse_ranking(to_ranking(r)), r);
            EXPECT_EQ(parse_ranking(to_ranking(r), m), r);
        }
    EXPECT_EQ(to_ranking(R("c~a>b")), "a~c>b");
}

TEST(RankingString, RejectsMalformedText) {
    EXPECT_THROW(parse_ranking("a>z"), ParseError);
    EXPECT_THROW(parse_ranking("a>b>a"), ParseError);
    EXPECT_THROW(parse_ranking("a>"), ParseError);
    EXPECT_THROW(parse_ranking("a b"), ParseError);
    EXPECT_THROW(parse_ranking("a>c"), ParseError);       // gap in the universe
    EXPECT_THROW(parse_ranking("a>b", 3), ParseError);    // misses c
    EXPECT_THROW(parse_ranking(""), ParseError);
}

TEST(WeakOrder, ConstructionValidates) {
    EXPECT_THROW(WeakOrder(Relation(2)), ClassificationError);
    EXPECT_THROW(WeakOrder::from_classes(3, {AltSet::of({0}), AltSet::of({0, 1})}), ClassificationError);
    EXPECT_THROW(WeakOrder::from_classes(3, {AltSet::of({0, 1})}), ClassificationError);
    EXPECT_TRUE(WeakOrder::from_sequence(3, {2, 0, 1}).is_linear());
    EXPECT_EQ(to_ranking(WeakOrder::from_sequence(3, {2, 0, 1})), "c>a>b");
}

TEST(CanonicalIndex, InverseOfEnumeration) {
    for (int m = 1; m <= 4; ++m) {
        const auto& weak = enumerate_weak_orders(m);
        for (std::size_t k = 0; k < weak.size(); ++k) EXPECT_EQ(canonical_index(OrderClass::Weak, weak[k]), int(k));
        EXPECT_EQ(canonical_index(OrderClass::Linear, WeakOrder::indifference(m)), m == 1 ? 0 : -1);
    }
}
