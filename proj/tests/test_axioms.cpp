#include <gtest/gtest.h>

#include <functional>

#include "scs/axioms.hpp"
#include "support/oracles.hpp"

using namespace scs;

namespace {

WeakOrder R(const char* s) { return parse_ranking(s); }
Profile Pr(const char* s) { return parse_profile(s); }

AxiomId ax(const char* token) { return parse_axiom(token); }

struct OracleAxiom {
    const char* token;
    std::function<bool(const oracle::Prof&, const oracle::Matrix&)> fn;
};

const std::vector<OracleAxiom>& oracle_axioms() {
    static const std::vector<OracleAxiom> all = {
        {"SP", oracle::sp},   {"SD", oracle::sd},   {"SWD", oracle::swd}, {"SV", oracle::sv},
        {"SL", oracle::sl},   {"SLP", oracle::slp}, {"SSP", oracle::ssp}, {"SSD", oracle::ssd},
    };
    return all;
}

// Calls f(profile, social) for every instance of the space.
void for_each_instance(const ProfileSpace& space, const std::function<void(const Profile&, const WeakOrder&)>& f) {
    for (const auto& p : enumerate_profiles(space))
        for (const auto& s : enumerate_weak_orders(space.alts)) f(p, s);
}

}  // namespace

// ---- agreement with the formula oracle

TEST(Evaluators, AgreeWithFormulaOracleExhaustively) {
    for (const ProfileSpace space : {ProfileSpace{3, 2, OrderClass::Weak}, ProfileSpace{2, 3, OrderClass::Weak},
                                     ProfileSpace{3, 3, OrderClass::Linear}, ProfileSpace{4, 2, OrderClass::Linear}}) {
        std::size_t checked = 0;
        for_each_instance(space, [&](const Profile& p, const WeakOrder& s) {
            const auto op = oracle::of(p);
            const auto os = oracle::of(s);
            for (const auto& o : oracle_axioms()) {
                ASSERT_EQ(evaluate(ax(o.token), p, s), o.fn(op, os))
                    << o.token << " at " << to_string(p) << " => " << to_ranking(s);
            }
            for (std::uint32_t g = 1; g < (1u << p.voters()); ++g)
                ASSERT_EQ(eval_decisive(p, s, VoterSet(g)), oracle::decisive(op, os, g));
            ++checked;
        });
        EXPECT_EQ(checked, space.size() * enumerate_weak_orders(space.alts).size());
    }
}

// ---- examples per axiom

TEST(Pareto, Examples) {
    EXPECT_TRUE(eval_SP(Pr("a>b>c;a>b>c"), R("a>b>c")));
    EXPECT_FALSE(eval_SP(Pr("a>b>c;a>b>c"), R("b>a>c")));
    for (const auto& s : enumerate_weak_orders(3)) EXPECT_TRUE(eval_SP(Pr("a>b>c;c>b>a"), s));
}

TEST(Dictatorship, Examples) {
    EXPECT_TRUE(eval_SD(Pr("a>b>c;c>b>a"), R("a>b>c")));
    EXPECT_FALSE(eval_SD(Pr("a>b>c;c>b>a"), R("a~b~c")));
    for (const auto& w : enumerate_weak_orders(3)) EXPECT_TRUE(eval_SD(Profile({w}, OrderClass::Weak), w));
}

TEST(WeakDictatorship, Examples) {
    EXPECT_TRUE(eval_SWD(Pr("a>b;b>a"), R("a~b")));
    EXPECT_TRUE(eval_SWD(Pr("a>b;b>a"), R("b>a")));
    bool found_false = false;
    for_each_instance({3, 2, OrderClass::Linear}, [&](const Profile& p, const WeakOrder& s) {
        if (!eval_SWD(p, s)) {
            found_false = true;
            EXPECT_FALSE(oracle::swd(oracle::of(p), oracle::of(s)));
        }
    });
    EXPECT_TRUE(found_false);
    EXPECT_FALSE(eval_SWD(Pr("a>b>c;b>a>c"), R("c>a~b")));
}

TEST(Vetoer, Examples) {
    EXPECT_TRUE(eval_SV(Pr("a>b;b>a"), R("a~b")));
    EXPECT_TRUE(eval_SV(Pr("a>b;b>a"), R("b>a")));
    // A voter with a tie can never witness.
    for (const auto& s : enumerate_weak_orders(3)) EXPECT_FALSE(eval_SV(Pr("a~b>c"), s));
}

TEST(Liberalism, Examples) {
    EXPECT_TRUE(eval_SL(Pr("a>b>c;a>b>c"), R("a>b>c")));
    EXPECT_FALSE(eval_SL(Pr("a>b>c;c>b>a"), R("a>b>c")));
    EXPECT_FALSE(eval_SL(Pr("a>b>c;c>b>a"), R("a~b~c")));
}

TEST(LiberalismPrime, MirrorsLiberalismExamples) {
    EXPECT_TRUE(eval_SLP(Pr("a>b>c;a>b>c"), R("a>b>c")));
    EXPECT_FALSE(eval_SLP(Pr("a>b>c;c>b>a"), R("a>b>c")));
    EXPECT_FALSE(eval_SLP(Pr("a>b>c;c>b>a"), R("a~b~c")));
}

TEST(StrongPareto, Examples) {
    EXPECT_TRUE(eval_SSP(Pr("a~b;a>b"), R("a>b")));
    EXPECT_FALSE(eval_SSP(Pr("a~b;a>b"), R("a~b")));
}

TEST(StrongPareto, CoincidesWithParetoOnLinearProfiles) {
    for_each_instance({3, 2, OrderClass::Linear},
                      [](const Profile& p, const WeakOrder& s) { EXPECT_EQ(eval_SSP(p, s), eval_SP(p, s)); });
}

TEST(StrongDictatorship, LiteralFormHoldsEverywhereInBaseSpace) {
    for_each_instance({3, 2, OrderClass::Weak}, [](const Profile& p, const WeakOrder& s) {
        EXPECT_TRUE(eval_SSD(p, s));
        EXPECT_FALSE(evaluate(ax("NSD"), p, s));
    });
    EXPECT_TRUE(eval_SSD(Pr("a>b>c"), R("a>b>c")));
}

// ---- equivalences and entailments across instances

TEST(Equivalences, LiberalismMatchesPrimeExhaustively) {
    for (const ProfileSpace space :
         {ProfileSpace{3, 2, OrderClass::Weak}, ProfileSpace{3, 3, OrderClass::Weak}, ProfileSpace{4, 2, OrderClass::Weak}}) {
        std::size_t disagreements = 0;
        for_each_instance(space, [&](const Profile& p, const WeakOrder& s) { disagreements += eval_SL(p, s) != eval_SLP(p, s); });
        EXPECT_EQ(disagreements, 0u) << space.describe();
    }
}

TEST(Equivalences, VetoMatchesWeakDictatorOnLinearProfiles) {
    for (const ProfileSpace space : {ProfileSpace{3, 2, OrderClass::Linear}, ProfileSpace{3, 3, OrderClass::Linear}}) {
        std::size_t disagreements = 0;
        for_each_instance(space, [&](const Profile& p, const WeakOrder& s) { disagreements += eval_SV(p, s) != eval_SWD(p, s); });
        EXPECT_EQ(disagreements, 0u);
    }
    // With ties the equivalence breaks: SWD can hold where SV cannot.
    EXPECT_TRUE(eval_SWD(Pr("a~b>c;a~b>c"), R("a~b>c")));
    EXPECT_FALSE(eval_SV(Pr("a~b>c;a~b>c"), R("a~b>c")));
}

TEST(Entailments, InstanceLevelExhaustive) {
    std::size_t sd_not_sp = 0, ssp_not_sp = 0, sd_not_sv_linear = 0, sp_not_sd = 0;
    for_each_instance({3, 2, OrderClass::Weak}, [&](const Profile& p, const WeakOrder& s) {
        sd_not_sp += eval_SD(p, s) && !eval_SP(p, s);
        ssp_not_sp += eval_SSP(p, s) && !eval_SP(p, s);
        sp_not_sd += eval_SP(p, s) && !eval_SD(p, s);
        if (p.voter(0).is_linear() && p.voter(1).is_linear()) sd_not_sv_linear += eval_SD(p, s) && !eval_SV(p, s);
    });
    EXPECT_EQ(sd_not_sp, 0u);
    EXPECT_EQ(ssp_not_sp, 0u);
    EXPECT_EQ(sd_not_sv_linear, 0u);
    EXPECT_GT(sp_not_sd, 0u);
    EXPECT_TRUE(eval_SP(Pr("a>b>c;c>b>a"), R("a~b~c")));
    EXPECT_FALSE(eval_SD(Pr("a>b>c;c>b>a"), R("a~b~c")));
}

// ---- decisive groups

TEST(Decisive, WholeElectorateIsParetoAndSingletonIsDictatorAtInstance) {
    for (const ProfileSpace space : {ProfileSpace{3, 2, OrderClass::Weak}, ProfileSpace{3, 3, OrderClass::Linear}}) {
        for_each_instance(space, [&](const Profile& p, const WeakOrder& s) {
            EXPECT_EQ(eval_decisive(p, s, VoterSet::all(p.voters())), eval_SP(p, s));
            bool some_singleton = false;
            for (int i = 0; i < p.voters(); ++i) {
                const bool single = eval_decisive(p, s, VoterSet::single(i));
                bool respects = true;
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        if (p.voter(i).strictly_prefers(x, y) && !s.strictly_prefers(x, y)) respects = false;
                EXPECT_EQ(single, respects);
                some_singleton = some_singleton || single;
            }
            EXPECT_EQ(some_singleton, eval_SD(p, s));
        });
    }
}

TEST(Decisive, UpwardClosedButNotDownwardClosed) {
    // A superset has a stronger unanimity antecedent, so decisiveness passes
    // upward; the converse fails and the search finds a countermodel.
    std::size_t upward_failures = 0, downward_failures = 0;
    for_each_instance({3, 3, OrderClass::Linear}, [&](const Profile& p, const WeakOrder& s) {
        for (std::uint32_t g = 1; g < 8; ++g)
            for (std::uint32_t h = 1; h < 8; ++h) {
                if ((g & ~h) != 0 || g == h) continue;  // g strictly inside h
                const bool dg = eval_decisive(p, s, VoterSet(g)), dh = eval_decisive(p, s, VoterSet(h));
                upward_failures += dg && !dh;
                downward_failures += dh && !dg;
            }
    });
    EXPECT_EQ(upward_failures, 0u);
    EXPECT_GT(downward_failures, 0u);
}

TEST(DecisiveOver, Examples) {
    const Alternative a(0), b(1);
    // Whole electorate over {a,b} is Pareto on that pair.
    for_each_instance({3, 2, OrderClass::Linear}, [&](const Profile& p, const WeakOrder& s) {
        bool pareto_ab = true;
        for (auto [x, y] : {std::pair{0, 1}, std::pair{1, 0}})
            if (p.voter(0).strictly_prefers(x, y) && p.voter(1).strictly_prefers(x, y) && !s.strictly_prefers(x, y))
                pareto_ab = false;
        EXPECT_EQ(eval_decisive_over(p, s, VoterSet::all(2), a, b), pareto_ab);
    });
    EXPECT_TRUE(eval_decisive_over(Pr("b>a>c;a>b>c"), R("b>a>c"), VoterSet::single(0), a, b));
    EXPECT_FALSE(eval_decisive_over(Pr("a>b>c;a>b>c"), R("b>a>c"), VoterSet::all(2), a, b));
    EXPECT_THROW(eval_decisive_over(Pr("a>b>c"), R("a>b>c"), VoterSet::single(0), a, a), UsageError);
    EXPECT_THROW(eval_decisive(Pr("a>b>c"), R("a>b>c"), VoterSet()), UsageError);
    EXPECT_THROW(eval_decisive(Pr("a>b>c"), R("a>b>c"), VoterSet::single(1)), UsageError);
}

// ---- rights

TEST(Rights, Examples) {
    RightsAssignment ab;
    ab.assign(0, 0, 1);
    EXPECT_TRUE(eval_rights(Pr("a>c>b;b>c>a"), R("a>b>c"), ab));
    EXPECT_FALSE(eval_rights(Pr("a>c>b;b>c>a"), R("b>a>c"), ab));
    EXPECT_TRUE(eval_rights(Pr("a>b>c;c>b>a"), R("a~b~c"), RightsAssignment{}));
}

TEST(Rights, ConstructionProfileForcesTheCycleHalves) {
    const RightsAssignment ra = parse_rights("1:{a,c};2:{b,c}");
    const Profile p = Pr("c>a>b;a>b>c");
    const auto admissible = admissible_social_set({AxiomId::with_rights(ra)}, p);
    ASSERT_FALSE(admissible.empty());
    for (const auto& s : admissible) {
        EXPECT_TRUE(s.strictly_prefers(2, 0));  // c P a
        EXPECT_TRUE(s.strictly_prefers(1, 2));  // b P c
    }
    // Adding Pareto (a P b, unanimous) closes the cycle.
    EXPECT_TRUE(admissible_social_set({AxiomId::with_rights(ra), ax("SP")}, p).empty());
}

TEST(Rights, AgreeWithOracle) {
    const RightsAssignment ra = parse_rights("1:{a,b};2:{b,c}");
    const std::vector<oracle::Right> ora = {{0, 0, 1}, {1, 1, 2}};
    for_each_instance({3, 2, OrderClass::Weak}, [&](const Profile& p, const WeakOrder& s) {
        EXPECT_EQ(eval_rights(p, s, ra), oracle::rights(oracle::of(p), oracle::of(s), ora));
    });
}

TEST(Rights, ParseAndPrint) {
    EXPECT_EQ(parse_rights("1:{a,b};2:{b,c}").to_string(), "1:{a,b};2:{b,c}");
    EXPECT_EQ(parse_rights("2:{c,b};1:{b,a}").to_string(), "1:{a,b};2:{b,c}");
    for (const char* bad : {"", "1:{a,a}", "0:{a,b}", "1{a,b}", "1:{a,b};", "1:{a,z}", "x:{a,b}", "1:{a,b}2:{b,c}"})
        EXPECT_THROW(parse_rights(bad), ParseError) << bad;
    EXPECT_THROW(eval_rights(Pr("a>b>c"), R("a>b>c"), parse_rights("2:{a,b}")), UsageError);
}

// ---- negation and tokens

TEST(Negation, ComplementAndInvolution) {
    const std::vector<AxiomId> all = {ax("SP"), ax("SD"), ax("SWD"), ax("SV"), ax("SL"), ax("SLP"), ax("SSP"), ax("SSD"),
                                      ax("DEC(1)"), ax("DEC(1,2)"), ax("DEC(2:a,c)"), ax("RIGHTS(1:{a,b};2:{b,c})")};
    for_each_instance({3, 2, OrderClass::Weak}, [&](const Profile& p, const WeakOrder& s) {
        for (const auto& a : all) {
            EXPECT_EQ(evaluate(negate(a), p, s), !evaluate(a, p, s));
            EXPECT_EQ(evaluate(negate(negate(a)), p, s), evaluate(a, p, s));
        }
    });
    EXPECT_EQ(negate(ax("SD")), ax("ND"));
    EXPECT_EQ(negate(negate(ax("SV"))), ax("SV"));
    EXPECT_FALSE(evaluate(ax("ND"), Pr("a>b>c;c>b>a"), R("a>b>c")));
}

TEST(Tokens, RoundTrip) {
    for (const char* t : {"SP", "SD", "SWD", "SV", "SL", "SLP", "SSP", "SSD", "NP", "ND", "NWD", "NV", "NL", "NLP", "NSP",
                          "NSD", "DEC(1)", "DEC(1,3)", "NDEC(2)", "DEC(1:a,b)", "DEC(1,2:c,a)", "RIGHTS(1:{a,b};2:{b,c})",
                          "NRIGHTS(1:{a,c})"})
        EXPECT_EQ(to_token(parse_axiom(t)), t);
    EXPECT_EQ(to_token(ax("DEC(2,1)")), "DEC(1,2)");
}

TEST(Tokens, ListsKeepParenthesizedCommas) {
    const AxiomSet s = parse_axiom_list("SP,DEC(1,2),RIGHTS(1:{a,b};2:{b,c}),SL");
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(to_token_list(s), "SP,DEC(1,2),RIGHTS(1:{a,b};2:{b,c}),SL");
    EXPECT_EQ(to_token_list({}), "-");
    EXPECT_TRUE(parse_axiom_list("").empty());
}

TEST(Tokens, RejectsUnknownOrMalformed) {
    for (const char* bad : {"XX", "S", "DEC()", "DEC(0)", "DEC(1:a,a)", "DEC(1:a)", "DEC(x)", "RIGHTS()", "sp", "DEC(1"})
        EXPECT_THROW(parse_axiom(bad), ParseError) << bad;
}

// ---- admissible sets

TEST(AdmissibleSet, Examples) {
    const auto unanimous = admissible_social_set({ax("SP")}, Pr("a>b>c;a>b>c"));
    ASSERT_EQ(unanimous.size(), 1u);
    EXPECT_EQ(unanimous.front(), R("a>b>c"));
    EXPECT_EQ(admissible_social_set({}, Pr("a>b>c;c>b>a")), enumerate_weak_orders(3));
    EXPECT_TRUE(admissible_social_set({ax("SD"), ax("SL")}, Pr("a>b>c;c>b>a")).empty());
}

TEST(AdmissibleSet, EqualsFilteredOracleAndIsCanonical) {
    const AxiomSet set = {ax("SP"), ax("SV")};
    for (const auto& p : enumerate_profiles({3, 2, OrderClass::Weak})) {
        std::vector<WeakOrder> expected;
        for (const auto& m : oracle::brute_weak_orders(3))
            if (oracle::sp(oracle::of(p), m) && oracle::sv(oracle::of(p), m)) expected.push_back(oracle::to_weak(m));
        EXPECT_EQ(admissible_social_set(set, p), expected);
    }
}

TEST(Instance, RejectsMixedUniverses) {
    EXPECT_THROW(Instance(Pr("a>b>c"), R("a>b")), UsageError);
    const Instance i(Pr("a>b>c;a>b>c"), R("a>b>c"));
    EXPECT_TRUE(eval_SP(i));
    EXPECT_TRUE(evaluate(ax("SD"), i));
}
