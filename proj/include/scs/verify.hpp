#ifndef SCS_VERIFY_HPP_
#define SCS_VERIFY_HPP_

// Certificate re-checking. Three independent layers:
//   1. the digest matches the canonical body;
//   2. every witness is re-evaluated through the public evaluators;
//   3. the query is run again and must reproduce the body byte for byte.

#include <string>
#include <vector>

#include "scs/axioms.hpp"
#include "scs/certificate.hpp"
#include "scs/engine.hpp"
#include "scs/rules.hpp"

namespace scs {

struct VerifyReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

namespace detail {

inline bool in_class(const WeakOrder& w, OrderClass c) { return c == OrderClass::Weak || w.is_linear(); }

inline bool rule_in_class(const AggregationRule& r, OrderClass c) {
    for (const auto& w : r.table())
        if (!in_class(w, c)) return false;
    return true;
}

inline bool rule_satisfies_all(const AggregationRule& r, const AxiomSet& axioms) {
    for (const auto& ax : axioms)
        if (!satisfies_schema(r, ax).holds) return false;
    return true;
}

inline void check_witnesses(const Certificate& c, std::vector<std::string>& problems) {
    const Query& q = c.query;
    auto fail = [&](const std::string& s) { problems.push_back(s); };
    AxiomSet premises = q.premises;
    if (q.kind == QueryKind::RightsConsistent && q.rights) premises.push_back(AxiomId::with_rights(*q.rights));

    auto check_profile_in_space = [&](const Profile& p) {
        try {
            (void)profile_id(q.space, p);
            return true;
        } catch (const Error& e) {
            fail(std::string("witness profile outside the space: ") + e.what());
            return false;
        }
    };
    auto check_rule_space = [&](const AggregationRule& r) {
        if (!(r.space() == q.space)) {
            fail("witness rule is over a different space");
            return false;
        }
        return true;
    };

    std::size_t instances = 0, profiles = 0, rules = 0, traces = 0;
    for (const auto& w : c.witnesses) {
        if (std::holds_alternative<InstanceWitness>(w)) ++instances;
        if (std::holds_alternative<ProfileWitness>(w)) ++profiles;
        if (std::holds_alternative<RuleWitness>(w)) ++rules;
        if (std::holds_alternative<TraceWitness>(w)) ++traces;
    }

    for (const auto& w : c.witnesses) {
        if (const auto* i = std::get_if<InstanceWitness>(&w)) {
            if (!check_profile_in_space(i->profile)) continue;
            if (!in_class(i->social, q.social)) fail("instance witness social order outside the social class");
            if (!evaluate_all(q.premises, i->profile, i->social)) fail("instance witness violates a premise");
            if (q.conclusion && evaluate(*q.conclusion, i->profile, i->social))
                fail("instance witness satisfies the conclusion");
        } else if (const auto* p = std::get_if<ProfileWitness>(&w)) {
            if (!check_profile_in_space(p->profile)) continue;
            if (!admissible_social_set(premises, p->profile, q.social).empty())
                fail("witness profile " + to_string(p->profile) + " admits a social order");
        } else if (const auto* r = std::get_if<RuleWitness>(&w)) {
            if (!check_rule_space(r->rule)) continue;
            if (!rule_in_class(r->rule, q.social)) fail("witness rule leaves the social class");
            if (!rule_satisfies_all(r->rule, premises)) fail("witness rule '" + r->rule.name() + "' violates a premise");
            if (q.kind == QueryKind::SchemaEntailsIia || q.kind == QueryKind::FindDictator)
                if (!satisfies_iia(r->rule).holds) fail("witness rule '" + r->rule.name() + "' violates IIA");
            if (q.conclusion) {
                const bool holds = satisfies_schema(r->rule, *q.conclusion).holds;
                if (r->role == "countermodel" && holds) fail("countermodel rule satisfies the conclusion");
                if ((r->role == "member" || r->role == "subject") && !holds)
                    fail("rule '" + r->rule.name() + "' fails the conclusion");
            }
        } else if (const auto* t = std::get_if<TraceWitness>(&w)) {
            const AggregationRule* subject = nullptr;
            for (const auto& v : c.witnesses)
                if (const auto* rw = std::get_if<RuleWitness>(&v); rw && rw->role == "subject") subject = &rw->rule;
            if (!subject) {
                fail("trace without a subject rule");
                continue;
            }
            if (!t->trace.well_formed(q.space.voters)) fail("trace is not well formed");
            for (const auto& s : t->trace.steps) {
                if (s.tag == TraceTag::GroupContraction) {
                    if (!satisfies_schema(*subject, AxiomId::decisive_over(s.group, Alternative(s.pair.first),
                                                                           Alternative(s.pair.second)))
                             .holds)
                        fail("contraction group " + s.group.to_string() + " is not decisive over its pair");
                } else if (!satisfies_schema(*subject, AxiomId::decisive(s.group)).holds) {
                    fail("trace group " + s.group.to_string() + " is not decisive");
                }
                for (const auto& d : s.derivations)
                    if (!(*subject)(d.profile).strictly_prefers(d.to.first, d.to.second))
                        fail("expansion profile " + to_string(d.profile) + " does not give " + pair_name(d.to));
            }
            if (!is_uniform_dictator(*subject, t->trace.dictator)) fail("traced voter is not a dictator");
        }
    }

    switch (c.verdict) {
        case Verdict::Countermodel:
            if (q.kind == QueryKind::InstanceEntails && instances != 1) fail("countermodel needs one instance witness");
            if (q.kind == QueryKind::SchemaEntails && (instances != 1 || rules != 1))
                fail("schema countermodel needs an instance and a rule");
            if (q.kind == QueryKind::SchemaEntailsIia && rules != 1) fail("countermodel needs one rule witness");
            break;
        case Verdict::Inconsistent:
            if (profiles != 1) fail("inconsistency needs one profile witness");
            break;
        case Verdict::Consistent:
            if (rules != 1) fail("consistency needs one assembled rule");
            break;
        case Verdict::Entails:
            if (q.kind == QueryKind::FindDictator && (traces != 1 || rules != 1)) fail("dictator needs rule and trace");
            break;
        case Verdict::Ruleset: break;
    }
}

}  // namespace detail

inline VerifyReport verify_certificate(const ParsedCertificate& pc, const Caps& caps = {}) {
    VerifyReport report;
    auto& problems = report.problems;
    const Certificate& c = pc.cert;

    if (pc.digest != "fnv1a64:" + hex64(fnv1a64(pc.body))) problems.push_back("digest does not match the body");
    if (!c.expect.empty() && c.flag != flag_for(c.expect, c.verdict))
        problems.push_back("flag " + c.flag + " disagrees with expectation " + c.expect);

    try {
        validate(c.query);
        detail::check_witnesses(c, problems);

        Certificate again;
        if (c.query.kind == QueryKind::FindDictator) {
            const AggregationRule* subject = nullptr;
            for (const auto& w : c.witnesses)
                if (const auto* rw = std::get_if<RuleWitness>(&w); rw && rw->role == "subject") subject = &rw->rule;
            if (!subject) {
                problems.push_back("dictator certificate without a subject rule");
                return report;
            }
            again = dictator_certificate(*subject);
        } else {
            again = run_query(c.query, caps);
        }
        if (!c.expect.empty()) again = with_claim(std::move(again), c.claim, c.expect);
        if (format_body(again) != pc.body) problems.push_back("re-running the query gives a different body");
    } catch (const Error& e) {
        problems.push_back(std::string("re-check failed: ") + e.what());
    }
    return report;
}

}  // namespace scs

#endif  // SCS_VERIFY_HPP_
