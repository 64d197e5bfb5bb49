#include <gtest/gtest.h>

#include <map>
#include <set>

#include "scs/profiles.hpp"
#include "support/oracles.hpp"

using namespace scs;

namespace {

const Alternative a(0), b(1), c(2);

std::uint64_t power(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

TEST(ProfileEnumeration, SpecCardinalities) {
    EXPECT_EQ(enumerate_profiles({3, 2, OrderClass::Linear}).size(), 36u);
    EXPECT_EQ(enumerate_profiles({3, 2, OrderClass::Weak}).size(), 169u);
    EXPECT_EQ(enumerate_profiles({2, 1, OrderClass::Weak}).size(), 3u);
}

TEST(ProfileEnumeration, CardinalityIsClassSizeToTheVoters) {
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n)
            for (auto cls : {OrderClass::Linear, OrderClass::Weak}) {
                const std::uint64_t k = cls == OrderClass::Weak ? oracle::fubini(m) : oracle::factorial(m);
                const ProfileSpace space{m, n, cls};
                EXPECT_EQ(space.size(), power(k, n));
                if (power(k, n) <= 40'000) {
                    EXPECT_EQ(enumerate_profiles(space).size(), power(k, n));
                }
            }
}

TEST(ProfileEnumeration, LexicographicProductOfOrderOracle) {
    for (auto cls : {OrderClass::Linear, OrderClass::Weak})
        for (int n = 1; n <= 3; ++n) {
            const ProfileSpace space{3, n, cls};
            const auto orders = cls == OrderClass::Weak ? oracle::brute_weak_orders(3) : oracle::brute_linear_orders(3);
            const auto expected = oracle::product(orders, n);
            const auto got = enumerate_profiles(space);
            ASSERT_EQ(got.size(), expected.size());
            for (std::size_t id = 0; id < got.size(); ++id) {
                EXPECT_EQ(oracle::of(got[id]), expected[id]);
                EXPECT_EQ(profile_id(space, got[id]), id);
            }
        }
}

TEST(ProfileEnumeration, RefusesBeyondMaterializationCap) {
    EXPECT_THROW(enumerate_profiles({5, 3, OrderClass::Weak}), CapExceeded);
    EXPECT_THROW(enumerate_profiles({3, 0, OrderClass::Weak}), UsageError);
}

TEST(ProfileString, RoundTripAndClassInference) {
    const Profile p = parse_profile("a>b>c;c>b>a");
    EXPECT_EQ(p.voters(), 2);
    EXPECT_EQ(p.order_class(), OrderClass::Linear);
    EXPECT_EQ(to_string(p), "a>b>c;c>b>a");
    EXPECT_EQ(parse_profile("a~b>c;c>a>b").order_class(), OrderClass::Weak);
    EXPECT_EQ(parse_profile("a>b>c", OrderClass::Weak).order_class(), OrderClass::Weak);
    EXPECT_THROW(parse_profile("a~b>c", OrderClass::Linear), ClassificationError);
    EXPECT_THROW(parse_profile("a>b>c;a>b"), ParseError);
    EXPECT_THROW(parse_profile("a>b>c;"), ParseError);
    for (const auto& q : enumerate_profiles({3, 2, OrderClass::Weak})) EXPECT_EQ(parse_profile(to_string(q), OrderClass::Weak), q);
}

TEST(ProfileId, RejectsForeignProfiles) {
    const ProfileSpace lin{3, 2, OrderClass::Linear};
    EXPECT_THROW(profile_id(lin, parse_profile("a~b>c;a>b>c")), ClassificationError);
    EXPECT_THROW(profile_id(lin, parse_profile("a>b>c")), UsageError);
    EXPECT_EQ(profile_id(lin, parse_profile("a>b>c;c>b>a")), 5u);
}

TEST(PairRestriction, Examples) {
    const auto r1 = restrict_to_pair(parse_profile("a>b>c;c>b>a"), a, c);
    EXPECT_EQ(r1.verdicts, (std::vector<PairVerdict>{PairVerdict::XOverY, PairVerdict::YOverX}));
    const auto r2 = restrict_to_pair(parse_profile("a~b>c;a~b>c"), a, b);
    EXPECT_EQ(r2.verdicts, (std::vector<PairVerdict>{PairVerdict::Indifferent, PairVerdict::Indifferent}));
    EXPECT_THROW(restrict_to_pair(parse_profile("a>b>c"), a, a), UsageError);
}

TEST(PairRestriction, MatchesTrichotomyOfEachComponent) {
    for (const auto& p : enumerate_profiles({3, 2, OrderClass::Weak}))
        for (auto [x, y] : unordered_pairs(3)) {
            const auto r = restrict_to_pair(p, Alternative(x), Alternative(y));
            ASSERT_EQ(r.verdicts.size(), 2u);
            for (int i = 0; i < 2; ++i) {
                const auto m = oracle::of(p.voter(i));
                const PairVerdict expected = oracle::P(m, x, y)   ? PairVerdict::XOverY
                                             : oracle::P(m, y, x) ? PairVerdict::YOverX
                                                                  : PairVerdict::Indifferent;
                EXPECT_EQ(r.verdicts[i], expected);
            }
        }
}

TEST(PairRestriction, InvariantUnderMovingTheThirdAlternative) {
    // Re-insert c at every position of each voter's order and check the
    // restriction to {a,b} never changes.
    const ProfileSpace space{3, 2, OrderClass::Linear};
    for (const auto& p : enumerate_profiles(space)) {
        const auto base = restrict_to_pair(p, a, b);
        for (const auto& q : enumerate_profiles(space)) {
            bool same_ab = true;
            for (int i = 0; i < 2; ++i)
                same_ab = same_ab && p.voter(i).strictly_prefers(0, 1) == q.voter(i).strictly_prefers(0, 1);
            if (same_ab) {
                EXPECT_EQ(restrict_to_pair(q, a, b), base);
            }
        }
    }
}

TEST(PairAgreement, Examples) {
    const Profile p1 = parse_profile("a>b>c;a>b>c");
    const Profile p2 = parse_profile("a>c>b;a>b>c");
    for (auto [x, y] : unordered_pairs(3)) EXPECT_TRUE(profiles_agree_on_pair(p1, p1, Alternative(x), Alternative(y)));
    EXPECT_TRUE(profiles_agree_on_pair(p1, p2, a, b));
    EXPECT_FALSE(profiles_agree_on_pair(p1, p2, b, c));
    EXPECT_THROW(profiles_agree_on_pair(p1, parse_profile("a>b>c"), a, b), UsageError);
}

TEST(PairAgreement, FourClassesPerPairInLinearBaseSpace) {
    const auto profiles = enumerate_profiles({3, 2, OrderClass::Linear});
    for (auto [x, y] : unordered_pairs(3)) {
        // Classes by explicit representative search, not by pattern codes.
        std::vector<std::size_t> reps;
        for (std::size_t k = 0; k < profiles.size(); ++k) {
            bool found = false;
            for (std::size_t r : reps) found = found || profiles_agree_on_pair(profiles[k], profiles[r], Alternative(x), Alternative(y));
            if (!found) reps.push_back(k);
        }
        EXPECT_EQ(reps.size(), 4u);
        // Symmetric and transitive: agreement with a representative is exclusive.
        for (const auto& p : profiles) {
            int hits = 0;
            for (std::size_t r : reps) hits += profiles_agree_on_pair(p, profiles[r], Alternative(x), Alternative(y));
            EXPECT_EQ(hits, 1);
        }
    }
}

TEST(PairPatternCode, EqualCodesIffAgreement) {
    const auto profiles = enumerate_profiles({3, 2, OrderClass::Weak});
    for (auto [x, y] : unordered_pairs(3))
        for (std::size_t i = 0; i < profiles.size(); i += 7)
            for (const auto& q : profiles)
                EXPECT_EQ(pair_pattern_code(profiles[i], x, y) == pair_pattern_code(q, x, y),
                          profiles_agree_on_pair(profiles[i], q, Alternative(x), Alternative(y)));
}

TEST(VoterSet, DisplayAndMembers) {
    EXPECT_EQ(VoterSet::all(3).to_string(), "{1,2,3}");
    EXPECT_EQ(VoterSet::single(1).to_string(), "{2}");
    EXPECT_EQ(VoterSet::all(3).members(), (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(VoterSet::all(2).contains(1));
    EXPECT_FALSE(VoterSet::single(0).contains(1));
}
