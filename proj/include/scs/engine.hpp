#ifndef SCS_ENGINE_HPP_
#define SCS_ENGINE_HPP_

// Verification core. Entailment and consistency are decided model-
// theoretically by exhausting a finite space:
//
//   instance    every (profile, social order) pair of the space
//   schema      every rule that satisfies the premises at every profile
//   schema+iia  the same, restricted to rules satisfying IIA
//   rights      schema consistency with fixed liberal rights
//
// Verdicts are therefore always relative to (alts, voters, class). Witnesses
// are the least canonical ids so certificates are reproducible.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "scs/axioms.hpp"
#include "scs/error.hpp"
#include "scs/prefs.hpp"
#include "scs/profiles.hpp"
#include "scs/rules.hpp"

namespace scs {

inline constexpr const char* kEngineVersion = "scs 1.0.0";

/// Hard defaults. The instance budget admits weak-class spaces up to
/// (3,3) and (4,2) and linear ones up to (4,3) at weak social range.
struct Caps {
    std::uint64_t instance_budget = 1'036'800;
    std::uint64_t search_nodes = 20'000'000;
    bool iia_space_whitelist = true;
    int threads = 1;

    /// SCS_MAX_BUDGET replaces both budgets and lifts the IIA space list.
    static Caps from_env() {
        Caps caps;
        if (const char* env = std::getenv("SCS_MAX_BUDGET"); env && *env) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') throw UsageError("SCS_MAX_BUDGET must be a non-negative integer");
            caps.instance_budget = v;
            caps.search_nodes = v;
            caps.iia_space_whitelist = false;
        }
        return caps;
    }
};

// ---- queries

enum class QueryKind { InstanceEntails, SchemaEntails, SchemaConsistent, SchemaEntailsIia, RightsConsistent, FindDictator };

inline std::string to_string(QueryKind k) {
    switch (k) {
        case QueryKind::InstanceEntails: return "instance-entails";
        case QueryKind::SchemaEntails: return "schema-entails";
        case QueryKind::SchemaConsistent: return "schema-consistent";
        case QueryKind::SchemaEntailsIia: return "schema-entails-iia";
        case QueryKind::RightsConsistent: return "rights-consistent";
        case QueryKind::FindDictator: return "find-dictator";
    }
    return "?";
}

inline QueryKind parse_query_kind(std::string_view s) {
    for (auto k : {QueryKind::InstanceEntails, QueryKind::SchemaEntails, QueryKind::SchemaConsistent,
                   QueryKind::SchemaEntailsIia, QueryKind::RightsConsistent, QueryKind::FindDictator})
        if (to_string(k) == s) return k;
    throw ParseError(0, "unknown query kind '" + std::string(s) + "'");
}

struct Query {
    QueryKind kind = QueryKind::InstanceEntails;
    ProfileSpace space;
    AxiomSet premises;
    std::optional<AxiomId> conclusion;
    std::optional<RightsAssignment> rights;
    OrderClass social = OrderClass::Weak;

    std::string semantics() const {
        switch (kind) {
            case QueryKind::InstanceEntails: return "instance";
            case QueryKind::SchemaEntails:
            case QueryKind::SchemaConsistent: return "schema";
            case QueryKind::SchemaEntailsIia:
            case QueryKind::FindDictator: return "schema+iia";
            case QueryKind::RightsConsistent: return "rights";
        }
        return "?";
    }

    friend bool operator==(const Query&, const Query&) = default;
};

inline void validate_axiom(const AxiomId& ax, const ProfileSpace& space) {
    if (ax.kind == AxiomKind::Decisive || ax.kind == AxiomKind::DecisiveOver) {
        if (ax.group.empty()) throw UsageError(to_token(ax) + ": decisive group must be nonempty");
        if ((ax.group.bits() & ~VoterSet::all(space.voters).bits()) != 0)
            throw UsageError(to_token(ax) + ": group names a voter outside 1.." + std::to_string(space.voters));
    }
    if (ax.kind == AxiomKind::DecisiveOver && (ax.a.index >= space.alts || ax.b.index >= space.alts))
        throw UsageError(to_token(ax) + ": pair outside the universe");
    if (ax.kind == AxiomKind::Rights) {
        if (ax.rights.max_voter() >= space.voters) throw UsageError(to_token(ax) + ": rights name a missing voter");
        if (ax.rights.max_alternative() >= space.alts)
            throw UsageError(to_token(ax) + ": rights name a missing alternative");
    }
}

inline void validate(const Query& q) {
    q.space.validate();
    for (const auto& ax : q.premises) validate_axiom(ax, q.space);
    if (q.conclusion) validate_axiom(*q.conclusion, q.space);
    const bool entailment = q.kind == QueryKind::InstanceEntails || q.kind == QueryKind::SchemaEntails;
    if (entailment && !q.conclusion) throw UsageError("entailment queries need a conclusion");
    if (q.kind == QueryKind::RightsConsistent) {
        if (!q.rights || q.rights->empty()) throw UsageError("rights queries need a rights assignment");
        validate_axiom(AxiomId::with_rights(*q.rights), q.space);
    }
}

// ---- certificates

enum class Verdict { Entails, Countermodel, Consistent, Inconsistent, Ruleset };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Entails: return "ENTAILS";
        case Verdict::Countermodel: return "COUNTERMODEL";
        case Verdict::Consistent: return "CONSISTENT";
        case Verdict::Inconsistent: return "INCONSISTENT";
        case Verdict::Ruleset: return "RULESET";
    }
    return "?";
}

inline Verdict parse_verdict(std::string_view s) {
    for (auto v : {Verdict::Entails, Verdict::Countermodel, Verdict::Consistent, Verdict::Inconsistent,
                   Verdict::Ruleset})
        if (to_string(v) == s) return v;
    throw ParseError(0, "unknown verdict '" + std::string(s) + "'");
}

enum class TraceTag { ParetoSeed, GroupContraction, FieldExpansion };

inline std::string to_string(TraceTag t) {
    switch (t) {
        case TraceTag::ParetoSeed: return "PARETO_SEED";
        case TraceTag::GroupContraction: return "GROUP_CONTRACTION";
        case TraceTag::FieldExpansion: return "FIELD_EXPANSION";
    }
    return "?";
}

using OrderedPair = std::pair<int, int>;

struct ExpansionDerivation {
    OrderedPair from;  // pair the group already wins
    OrderedPair to;    // pair won at `profile`
    Profile profile;

    friend bool operator==(const ExpansionDerivation&, const ExpansionDerivation&) = default;
};

struct TraceStep {
    TraceTag tag = TraceTag::ParetoSeed;
    VoterSet group;                        // shown decisive by this step
    VoterSet split_e, split_f;             // contraction partition
    std::array<int, 3> triple{};           // contraction x, y, z
    std::optional<Profile> profile;        // contraction test profile
    OrderedPair pair{};                    // pair the chosen side wins at the test profile
    std::vector<ExpansionDerivation> derivations;
    bool verified = false;                 // direct decisiveness check over all profiles

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct DecisivenessTrace {
    std::vector<TraceStep> steps;
    int dictator = 0;  // 0-based

    /// Seed first with the whole electorate; contractions strictly shrink the
    /// group; expansions keep it; ends at a singleton; every step verified.
    bool well_formed(int voters) const {
        if (steps.empty() || steps.front().tag != TraceTag::ParetoSeed) return false;
        if (steps.front().group != VoterSet::all(voters)) return false;
        VoterSet current = steps.front().group;
        for (std::size_t k = 0; k < steps.size(); ++k) {
            const auto& s = steps[k];
            if (!s.verified) return false;
            if (k == 0) continue;
            if (s.tag == TraceTag::ParetoSeed) return false;
            if (s.tag == TraceTag::GroupContraction) {
                if ((s.group.bits() & ~current.bits()) != 0 || s.group.size() >= current.size()) return false;
                if ((s.split_e.bits() | s.split_f.bits()) != current.bits() || (s.split_e.bits() & s.split_f.bits()))
                    return false;
            } else if (s.group != current) {
                return false;
            }
            current = s.group;
        }
        return current.size() == 1 && current.contains(dictator);
    }

    friend bool operator==(const DecisivenessTrace&, const DecisivenessTrace&) = default;
};

struct InstanceWitness {
    Profile profile;
    WeakOrder social;
};
struct ProfileWitness {
    Profile profile;
};
struct RuleWitness {
    std::string role;  // assembled | countermodel | member | subject
    AggregationRule rule;
};
struct TraceWitness {
    DecisivenessTrace trace;
};

using Witness = std::variant<InstanceWitness, ProfileWitness, RuleWitness, TraceWitness>;

struct Stats {
    std::uint64_t instances = 0;
    std::uint64_t branches = 0;
    double wall_ms = 0;
};

struct Certificate {
    Query query;
    Verdict verdict = Verdict::Entails;
    std::vector<std::pair<std::string, std::string>> details;
    std::vector<Witness> witnesses;
    Stats stats;
    std::string version = kEngineVersion;

    // Battery bookkeeping; empty outside the battery.
    std::string claim;
    std::string expect;  // a verdict name, or "report"
    std::string flag;    // PASS | FAIL | REPORT
};

inline std::string flag_for(const std::string& expect, Verdict v) {
    if (expect == "report") return "REPORT";
    return expect == to_string(v) ? "PASS" : "FAIL";
}

namespace detail {

class Stopwatch {
  public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline std::uint64_t instance_count(const ProfileSpace& space, OrderClass social) {
    return saturating_mul(space.size(), orders_of_class(social, space.alts).size());
}

inline void check_instance_budget(const ProfileSpace& space, OrderClass social, const Caps& caps) {
    const std::uint64_t need = instance_count(space, social);
    if (need > caps.instance_budget)
        throw CapExceeded("space " + space.describe() + " with " + to_string(social) + " social orders is over the cap",
                          need, caps.instance_budget);
}

/// Splits [0, total) into `threads` contiguous chunks, runs `fn(begin, end)`
/// on each and returns the least result. Chunk results are merged by value,
/// not by arrival, so the answer does not depend on the thread count.
template <class T, class Fn>
std::optional<T> parallel_least(std::uint64_t total, int threads, Fn fn) {
    if (threads <= 1 || total < 2) return fn(std::uint64_t{0}, total);
    const std::uint64_t parts = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total);
    std::vector<std::optional<T>> results(static_cast<std::size_t>(parts));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(parts));
    std::vector<std::thread> pool;
    for (std::uint64_t k = 0; k < parts; ++k) {
        const std::uint64_t begin = total * k / parts, end = total * (k + 1) / parts;
        pool.emplace_back([&, k, begin, end] {
            try {
                results[k] = fn(begin, end);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::optional<T> best;
    for (auto& r : results)
        if (r && (!best || *r < *best)) best = r;
    return best;
}

/// First admissible order per profile, with optional overrides.
inline AggregationRule assemble_rule(const ProfileSpace& space, const std::vector<std::vector<WeakOrder>>& admissible,
                                     std::string name, std::string provenance) {
    std::vector<WeakOrder> table;
    table.reserve(admissible.size());
    for (const auto& a : admissible) table.push_back(a.front());
    return AggregationRule(space, std::move(table), std::move(name), std::move(provenance));
}

inline std::vector<std::vector<WeakOrder>> admissible_table(const ProfileSpace& space, const AxiomSet& premises,
                                                            OrderClass social) {
    std::vector<std::vector<WeakOrder>> out;
    out.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t id = 0; id < space.size(); ++id)
        out.push_back(admissible_social_set(premises, profile_at(space, id), social));
    return out;
}

}  // namespace detail

// ---- instance level

/// Every instance satisfying all premises satisfies the conclusion.
inline Certificate instance_entails(const ProfileSpace& space, const AxiomSet& premises, const AxiomId& conclusion,
                                    OrderClass social = OrderClass::Weak, const Caps& caps = {}) {
    detail::Stopwatch clock;
    Query q{QueryKind::InstanceEntails, space, premises, conclusion, std::nullopt, social};
    validate(q);
    detail::check_instance_budget(space, social, caps);
    const auto& socials = orders_of_class(social, space.alts);

    using Hit = std::pair<std::uint64_t, std::size_t>;
    auto scan = [&](std::uint64_t begin, std::uint64_t end) -> std::optional<Hit> {
        for (std::uint64_t id = begin; id < end; ++id) {
            const Profile p = profile_at(space, id);
            for (std::size_t s = 0; s < socials.size(); ++s)
                if (evaluate_all(premises, p, socials[s]) && !evaluate(conclusion, p, socials[s])) return Hit{id, s};
        }
        return std::nullopt;
    };
    const auto hit = detail::parallel_least<Hit>(space.size(), caps.threads, scan);

    Certificate c;
    c.query = q;
    // Counts are the exhaustive space size, independent of early exit.
    c.stats.instances = detail::instance_count(space, social);
    if (hit) {
        c.verdict = Verdict::Countermodel;
        c.witnesses.push_back(InstanceWitness{profile_at(space, hit->first), socials[hit->second]});
    } else {
        c.verdict = Verdict::Entails;
    }
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

/// True iff some instance of the space satisfies every axiom.
inline bool instance_satisfiable(const ProfileSpace& space, const AxiomSet& axioms,
                                 OrderClass social = OrderClass::Weak) {
    for (std::uint64_t id = 0; id < space.size(); ++id) {
        const Profile p = profile_at(space, id);
        for (const auto& w : orders_of_class(social, space.alts))
            if (evaluate_all(axioms, p, w)) return true;
    }
    return false;
}

// ---- schema level without IIA

/// Inconsistent iff some profile admits no social order.
inline Certificate schema_consistent(const ProfileSpace& space, const AxiomSet& premises,
                                     OrderClass social = OrderClass::Weak, const Caps& caps = {}) {
    detail::Stopwatch clock;
    Query q{QueryKind::SchemaConsistent, space, premises, std::nullopt, std::nullopt, social};
    validate(q);
    detail::check_instance_budget(space, social, caps);

    auto scan = [&](std::uint64_t begin, std::uint64_t end) -> std::optional<std::uint64_t> {
        for (std::uint64_t id = begin; id < end; ++id)
            if (admissible_social_set(premises, profile_at(space, id), social).empty()) return id;
        return std::nullopt;
    };
    const auto empty_at = detail::parallel_least<std::uint64_t>(space.size(), caps.threads, scan);

    Certificate c;
    c.query = q;
    c.stats.instances = detail::instance_count(space, social);
    if (empty_at) {
        c.verdict = Verdict::Inconsistent;
        c.witnesses.push_back(ProfileWitness{profile_at(space, *empty_at)});
    } else {
        c.verdict = Verdict::Consistent;
        c.witnesses.push_back(RuleWitness{
            "assembled", detail::assemble_rule(space, detail::admissible_table(space, premises, social),
                                               "assembled", "schema_consistent")});
    }
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

/// Every rule satisfying the premises everywhere satisfies the conclusion
/// everywhere. Without IIA this reduces to a per-profile question.
inline Certificate schema_entails(const ProfileSpace& space, const AxiomSet& premises, const AxiomId& conclusion,
                                  OrderClass social = OrderClass::Weak, const Caps& caps = {}) {
    detail::Stopwatch clock;
    Query q{QueryKind::SchemaEntails, space, premises, conclusion, std::nullopt, social};
    validate(q);
    detail::check_instance_budget(space, social, caps);

    auto admissible = detail::admissible_table(space, premises, social);
    Certificate c;
    c.query = q;
    c.stats.instances = detail::instance_count(space, social);
    for (std::uint64_t id = 0; id < admissible.size(); ++id)
        if (admissible[id].empty()) {
            c.verdict = Verdict::Entails;
            c.details.emplace_back("vacuous", "premises admit no social order at some profile");
            c.witnesses.push_back(ProfileWitness{profile_at(space, id)});
            c.stats.wall_ms = clock.elapsed_ms();
            return c;
        }
    for (std::uint64_t id = 0; id < admissible.size(); ++id) {
        const Profile p = profile_at(space, id);
        for (const auto& w : admissible[id]) {
            if (evaluate(conclusion, p, w)) continue;
            c.verdict = Verdict::Countermodel;
            c.witnesses.push_back(InstanceWitness{p, w});
            auto table = admissible;
            table[id] = {w};
            c.witnesses.push_back(RuleWitness{
                "countermodel", detail::assemble_rule(space, table, "countermodel", "schema_entails")});
            c.stats.wall_ms = clock.elapsed_ms();
            return c;
        }
    }
    c.verdict = Verdict::Entails;
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

/// Schema consistency of fixed rights plus extra axioms.
inline Certificate rights_consistent(const ProfileSpace& space, const RightsAssignment& rights, const AxiomSet& extra,
                                     OrderClass social = OrderClass::Weak, const Caps& caps = {}) {
    detail::Stopwatch clock;
    Query q{QueryKind::RightsConsistent, space, extra, std::nullopt, rights, social};
    validate(q);
    AxiomSet all = extra;
    all.push_back(AxiomId::with_rights(rights));
    Certificate c = schema_consistent(space, all, social, caps);
    c.query = q;
    for (auto& w : c.witnesses)
        if (auto* r = std::get_if<RuleWitness>(&w))
            r->rule = AggregationRule(space, r->rule.table(), "assembled", "rights_consistent");
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

/// Every assignment of one pair to voter 1 and a different pair to voter 2.
inline std::vector<RightsAssignment> two_voter_rights_assignments(int alts) {
    std::vector<RightsAssignment> out;
    const auto pairs = unordered_pairs(alts);
    for (const auto& p1 : pairs)
        for (const auto& p2 : pairs) {
            if (p1 == p2) continue;
            RightsAssignment ra;
            ra.assign(0, p1.first, p1.second);
            ra.assign(1, p2.first, p2.second);
            out.push_back(ra);
        }
    return out;
}

inline std::vector<Certificate> rights_sweep(const ProfileSpace& space, const AxiomSet& extra,
                                             OrderClass social = OrderClass::Weak, const Caps& caps = {}) {
    if (space.voters < 2) throw UsageError("rights sweep needs at least two voters");
    std::vector<Certificate> out;
    for (const auto& ra : two_voter_rights_assignments(space.alts))
        out.push_back(rights_consistent(space, ra, extra, social, caps));
    return out;
}

// ---- schema level with IIA

struct IiaRuleSet {
    std::vector<AggregationRule> rules;  // canonical table order
    std::uint64_t branches = 0;
    std::uint64_t instances = 0;
};

inline bool iia_space_allowed(const ProfileSpace& space) {
    return space.alts <= 3 && (space.voters <= 2 || (space.voters == 3 && space.cls == OrderClass::Linear));
}

namespace detail {

// Pairwise decomposition. Under IIA the social verdict on {x,y} is a
// function of the profile's pattern on {x,y}; one variable per observed
// (pair, pattern). Profiles are visited in id order and branch over their
// admissible orders that agree with the variables fixed so far, so leaves
// come out in canonical table order.
class PairwiseSearch {
  public:
    PairwiseSearch(const ProfileSpace& space, const AxiomSet& premises, OrderClass social, const Caps& caps)
        : space_(space), social_(social), caps_(caps), pairs_(unordered_pairs(space.alts)) {
        const auto& socials = orders_of_class(social, space.alts);
        const std::size_t np = pairs_.size();
        std::vector<std::unordered_map<std::uint32_t, int>> var_of(np);
        for (std::uint64_t id = 0; id < space.size(); ++id) {
            const Profile p = profile_at(space, id);
            Row row;
            for (std::size_t k = 0; k < np; ++k) {
                const auto code = pair_pattern_code(p, pairs_[k].first, pairs_[k].second);
                auto [it, inserted] = var_of[k].try_emplace(code, static_cast<int>(domain_.size()));
                if (inserted) domain_.push_back(0b111);
                row.vars.push_back(it->second);
            }
            for (std::size_t s = 0; s < socials.size(); ++s) {
                instances_++;
                if (!evaluate_all(premises, p, socials[s])) continue;
                Option opt{static_cast<int>(s), {}};
                for (auto [x, y] : pairs_) opt.verdicts.push_back(pair_verdict(socials[s], x, y));
                row.options.push_back(std::move(opt));
            }
            rows_.push_back(std::move(row));
        }
        // Unary pruning: a variable can only take verdicts every profile
        // carrying it admits.
        for (const auto& row : rows_)
            for (std::size_t k = 0; k < np; ++k) {
                std::uint8_t proj = 0;
                for (const auto& opt : row.options) proj |= bit(opt.verdicts[k]);
                domain_[static_cast<std::size_t>(row.vars[k])] &= proj;
            }
        for (auto& row : rows_)
            std::erase_if(row.options, [&](const Option& opt) {
                for (std::size_t k = 0; k < np; ++k)
                    if (!(domain_[static_cast<std::size_t>(row.vars[k])] & bit(opt.verdicts[k]))) return true;
                return false;
            });
    }

    IiaRuleSet run() {
        assignment_.assign(domain_.size(), -1);
        chosen_.assign(rows_.size(), -1);
        result_ = {};
        result_.instances = instances_;
        descend(0);
        return std::move(result_);
    }

  private:
    struct Option {
        int order;  // index into the social class enumeration
        std::vector<PairVerdict> verdicts;
    };
    struct Row {
        std::vector<int> vars;
        std::vector<Option> options;
    };

    static std::uint8_t bit(PairVerdict v) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }

    void descend(std::size_t row) {
        if (row == rows_.size()) {
            emit();
            return;
        }
        const auto& r = rows_[row];
        std::vector<int> fixed;
        for (const auto& opt : r.options) {
            bool fits = true;
            for (std::size_t k = 0; k < pairs_.size() && fits; ++k) {
                const int cur = assignment_[static_cast<std::size_t>(r.vars[k])];
                fits = cur < 0 || cur == static_cast<int>(opt.verdicts[k]);
            }
            if (!fits) continue;
            if (++result_.branches > caps_.search_nodes)
                throw CapExceeded("IIA rule search over " + space_.describe() + " exceeded the node budget",
                                  result_.branches, caps_.search_nodes);
            fixed.clear();
            for (std::size_t k = 0; k < pairs_.size(); ++k) {
                auto& slot = assignment_[static_cast<std::size_t>(r.vars[k])];
                if (slot < 0) {
                    slot = static_cast<int>(opt.verdicts[k]);
                    fixed.push_back(r.vars[k]);
                }
            }
            chosen_[row] = opt.order;
            descend(row + 1);
            for (int v : fixed) assignment_[static_cast<std::size_t>(v)] = -1;
        }
    }

    void emit() {
        const auto& socials = orders_of_class(social_, space_.alts);
        std::vector<WeakOrder> table;
        table.reserve(chosen_.size());
        for (int s : chosen_) table.push_back(socials[static_cast<std::size_t>(s)]);
        result_.rules.emplace_back(space_, std::move(table), "iia-rule-" + std::to_string(result_.rules.size() + 1),
                                   "schema_entails_iia");
    }

    ProfileSpace space_;
    OrderClass social_;
    Caps caps_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<Row> rows_;
    std::vector<std::uint8_t> domain_;
    std::vector<int> assignment_;
    std::vector<int> chosen_;
    std::uint64_t instances_ = 0;
    IiaRuleSet result_;
};

inline std::uint64_t iia_search_estimate(const ProfileSpace& space, OrderClass social) {
    // Upper bound: every (pair, pattern) variable free over the verdict range.
    const std::uint64_t per_voter = space.cls == OrderClass::Linear ? 2 : 3;
    std::uint64_t patterns = 1;
    for (int i = 0; i < space.voters; ++i) patterns = saturating_mul(patterns, per_voter);
    const std::uint64_t vars = saturating_mul(patterns, unordered_pairs(space.alts).size());
    const std::uint64_t base = social == OrderClass::Linear ? 2 : 3;
    std::uint64_t total = 1;
    for (std::uint64_t v = 0; v < vars && total != UINT64_MAX; ++v) total = saturating_mul(total, base);
    return total;
}

}  // namespace detail

/// All rules over the space that satisfy every premise at every profile and
/// satisfy IIA, with social orders drawn from `social`.
inline IiaRuleSet enumerate_iia_rules(const ProfileSpace& space, const AxiomSet& premises, OrderClass social,
                                      const Caps& caps = {}) {
    space.validate();
    for (const auto& ax : premises) validate_axiom(ax, space);
    if (caps.iia_space_whitelist && !iia_space_allowed(space))
        throw CapExceeded("IIA rule search over " + space.describe() +
                              " is outside the default spaces (alts<=3 with voters<=2, or 3 linear voters)",
                          detail::iia_search_estimate(space, social), caps.search_nodes);
    return detail::PairwiseSearch(space, premises, social, caps).run();
}

inline constexpr std::size_t kInlineRuleLimit = 8;

/// Enumerates the IIA rules satisfying the premises and checks the
/// conclusion on each. Without a conclusion the verdict is RULESET.
inline Certificate schema_entails_iia(const ProfileSpace& space, const AxiomSet& premises,
                                      const std::optional<AxiomId>& conclusion, OrderClass social,
                                      const Caps& caps = {}) {
    detail::Stopwatch clock;
    Query q{QueryKind::SchemaEntailsIia, space, premises, conclusion, std::nullopt, social};
    validate(q);
    IiaRuleSet set = enumerate_iia_rules(space, premises, social, caps);

    Certificate c;
    c.query = q;
    c.stats.instances = set.instances;
    c.stats.branches = set.branches;

    std::uint64_t dictatorial = 0;
    for (const auto& r : set.rules) {
        for (int i = 0; i < space.voters; ++i)
            if (is_uniform_dictator(r, i)) {
                ++dictatorial;
                break;
            }
    }
    c.details.emplace_back("ruleset", "count=" + std::to_string(set.rules.size()) +
                                          " uniform-dictator=" + std::to_string(dictatorial));

    std::optional<std::size_t> failing;
    std::optional<std::uint64_t> failing_profile;
    if (conclusion)
        for (std::size_t k = 0; k < set.rules.size() && !failing; ++k) {
            const SchemaCheck sc = satisfies_schema(set.rules[k], *conclusion);
            if (!sc.holds) {
                failing = k;
                failing_profile = sc.failing_profile;
            }
        }

    if (failing) {
        c.verdict = Verdict::Countermodel;
        c.details.emplace_back("failing-profile", to_string(profile_at(space, *failing_profile)));
        c.witnesses.push_back(RuleWitness{"countermodel", set.rules[*failing]});
    } else {
        c.verdict = conclusion ? Verdict::Entails : Verdict::Ruleset;
        const std::size_t shown = std::min(set.rules.size(), kInlineRuleLimit);
        c.details.emplace_back("inline", std::to_string(shown) + " of " + std::to_string(set.rules.size()));
        for (std::size_t k = 0; k < shown; ++k) c.witnesses.push_back(RuleWitness{"member", set.rules[k]});
    }
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

// ---- dictator extraction

namespace detail {

/// Drops consecutive repeats; empty result if anything else repeats.
inline std::vector<int> collapse_chain(std::initializer_list<int> chain) {
    std::vector<int> out;
    for (int x : chain)
        if (out.empty() || out.back() != x) out.push_back(x);
    std::vector<int> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
    return out;
}

/// Each voter ranks its chain first (best first), then the rest by index.
inline Profile chain_profile(const ProfileSpace& space, const std::vector<std::vector<int>>& chains) {
    std::vector<WeakOrder> orders;
    for (const auto& chain : chains) {
        std::vector<int> seq = chain;
        for (int x = 0; x < space.alts; ++x)
            if (std::find(seq.begin(), seq.end(), x) == seq.end()) seq.push_back(x);
        orders.push_back(WeakOrder::from_sequence(space.alts, seq));
    }
    return Profile(std::move(orders), space.cls);
}

inline bool decisive_everywhere(const AggregationRule& rule, VoterSet g) {
    return satisfies_schema(rule, AxiomId::decisive(g)).holds;
}

inline std::string pair_name(OrderedPair p) {
    return std::string(1, Alternative(p.first).name()) + "," + Alternative(p.second).name();
}

// Field expansion: starting from a pair the group wins against unanimous
// opposition, derive every other ordered pair. From (s,t) to (u,v) the group
// ranks u > s > t > v and everyone else t > v > u > s (repeats collapsed), so
// Pareto gives u P s and t P v, the group gives s P t, and transitivity u P v.
// Overlapping cases that do not collapse cleanly are reached through
// intermediate pairs.
inline std::vector<ExpansionDerivation> expand_field(const AggregationRule& rule, VoterSet group, OrderedPair seed) {
    const auto& space = rule.space();
    const int m = space.alts;
    std::vector<OrderedPair> won{seed};
    std::vector<ExpansionDerivation> out;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v) {
                if (u == v || std::find(won.begin(), won.end(), OrderedPair{u, v}) != won.end()) continue;
                for (const auto& from : won) {
                    const auto [s, t] = from;
                    const auto inside = collapse_chain({u, s, t, v});
                    const auto outside = collapse_chain({t, v, u, s});
                    if (inside.empty() || outside.empty()) continue;
                    std::vector<std::vector<int>> chains;
                    for (int i = 0; i < space.voters; ++i) chains.push_back(group.contains(i) ? inside : outside);
                    Profile p = chain_profile(space, chains);
                    if (!rule(p).strictly_prefers(u, v))
                        throw InternalConsistencyError("field expansion for group " + group.to_string() + " from " +
                                                       pair_name(from) + " to " + pair_name({u, v}) +
                                                       " fails at profile " + to_string(p));
                    out.push_back({from, {u, v}, std::move(p)});
                    won.push_back({u, v});
                    progress = true;
                    break;
                }
            }
    }
    if (static_cast<int>(won.size()) != m * (m - 1))
        throw InternalConsistencyError("field expansion did not reach every pair for group " + group.to_string());
    return out;
}

}  // namespace detail

/// Traces a dictator of a rule satisfying the SP schema and IIA by repeated
/// bisection of a decisive group. Every decisiveness claim along the way is
/// re-checked directly over all profiles.
inline DecisivenessTrace find_dictator(const AggregationRule& rule) {
    const auto& space = rule.space();
    const SchemaCheck sp = satisfies_schema(rule, AxiomId::plain(AxiomKind::SP));
    if (!sp.holds)
        throw PreconditionError("rule '" + rule.name() + "' fails the SP schema at profile " +
                                to_string(profile_at(space, *sp.failing_profile)));
    const IiaCheck iia = satisfies_iia(rule);
    if (!iia.holds)
        throw PreconditionError("rule '" + rule.name() + "' fails IIA on {" +
                                detail::pair_name({iia.witness->x, iia.witness->y}) + "} between profiles " +
                                to_string(profile_at(space, iia.witness->first)) + " and " +
                                to_string(profile_at(space, iia.witness->second)));
    if (space.voters > 1 && space.alts < 3)
        throw PreconditionError("dictator extraction needs at least three alternatives");

    DecisivenessTrace trace;
    VoterSet group = VoterSet::all(space.voters);
    TraceStep seed;
    seed.tag = TraceTag::ParetoSeed;
    seed.group = group;
    seed.verified = detail::decisive_everywhere(rule, group);
    if (!seed.verified) throw InternalConsistencyError("the whole electorate is not decisive");
    trace.steps.push_back(seed);

    const int x = 0, y = 1, z = 2;
    while (group.size() > 1) {
        const auto members = group.members();
        VoterSet e, f;
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (k < members.size() / 2) e = VoterSet(e.bits() | (1u << members[k]));
            else f = VoterSet(f.bits() | (1u << members[k]));
        }
        std::vector<std::vector<int>> chains;
        for (int i = 0; i < space.voters; ++i) {
            if (e.contains(i)) chains.push_back({x, y, z});
            else if (f.contains(i)) chains.push_back({z, x, y});
            else chains.push_back({y, z, x});
        }
        Profile p = detail::chain_profile(space, chains);
        const WeakOrder& social = rule(p);

        TraceStep step;
        step.tag = TraceTag::GroupContraction;
        step.split_e = e;
        step.split_f = f;
        step.triple = {x, y, z};
        if (social.strictly_prefers(x, z)) {
            step.group = e;
            step.pair = {x, z};
        } else if (social.strictly_prefers(z, y)) {
            step.group = f;
            step.pair = {z, y};
        } else {
            throw InternalConsistencyError("neither side of " + e.to_string() + "|" + f.to_string() +
                                           " prevails at profile " + to_string(p));
        }
        step.profile = std::move(p);
        step.verified = satisfies_schema(rule, AxiomId::decisive_over(step.group, Alternative(step.pair.first),
                                                                      Alternative(step.pair.second)))
                            .holds;
        if (!step.verified)
            throw InternalConsistencyError("group " + step.group.to_string() + " is not decisive over " +
                                           detail::pair_name(step.pair) + " on direct check");
        trace.steps.push_back(step);

        TraceStep expansion;
        expansion.tag = TraceTag::FieldExpansion;
        expansion.group = step.group;
        expansion.pair = step.pair;
        expansion.derivations = detail::expand_field(rule, step.group, step.pair);
        expansion.verified = detail::decisive_everywhere(rule, step.group);
        if (!expansion.verified)
            throw InternalConsistencyError("group " + step.group.to_string() +
                                           " fails the direct decisiveness check after expansion");
        trace.steps.push_back(std::move(expansion));
        group = step.group;
    }
    trace.dictator = group.members().front();
    return trace;
}

inline Certificate dictator_certificate(const AggregationRule& rule) {
    detail::Stopwatch clock;
    Certificate c;
    c.query = Query{QueryKind::FindDictator, rule.space(), {AxiomId::plain(AxiomKind::SP)},
                    AxiomId::plain(AxiomKind::SD), std::nullopt, OrderClass::Weak};
    DecisivenessTrace trace = find_dictator(rule);
    c.verdict = Verdict::Entails;
    c.details.emplace_back("dictator", std::to_string(trace.dictator + 1));
    c.witnesses.push_back(RuleWitness{"subject", rule});
    c.witnesses.push_back(TraceWitness{std::move(trace)});
    c.stats.instances = rule.size();
    c.stats.wall_ms = clock.elapsed_ms();
    return c;
}

// ---- dispatch and the battery

inline Certificate run_query(const Query& q, const Caps& caps = {}) {
    switch (q.kind) {
        case QueryKind::InstanceEntails: return instance_entails(q.space, q.premises, *q.conclusion, q.social, caps);
        case QueryKind::SchemaEntails: return schema_entails(q.space, q.premises, *q.conclusion, q.social, caps);
        case QueryKind::SchemaConsistent: return schema_consistent(q.space, q.premises, q.social, caps);
        case QueryKind::SchemaEntailsIia: return schema_entails_iia(q.space, q.premises, q.conclusion, q.social, caps);
        case QueryKind::RightsConsistent:
            if (!q.rights) throw UsageError("rights queries need a rights assignment");
            return rights_consistent(q.space, *q.rights, q.premises, q.social, caps);
        case QueryKind::FindDictator: throw UsageError("find-dictator queries are run from a rule");
    }
    throw UsageError("unknown query kind");
}

inline Certificate with_claim(Certificate c, std::string claim, std::string expect) {
    c.claim = std::move(claim);
    c.expect = std::move(expect);
    c.flag = flag_for(c.expect, c.verdict);
    return c;
}

/// The fixed battery. Claims the source argument makes are expected to come
/// out as stated (PASS/FAIL); claims that depend on the literal reading of
/// SL or SSD are reported with whatever verdict the search gives (REPORT).
inline std::vector<Certificate> theorem_suite(const Caps& caps = {}) {
    const auto ax = [](std::string_view s) { return parse_axiom(s); };
    const auto set = [](std::string_view s) { return parse_axiom_list(s); };
    const ProfileSpace weak32{3, 2, OrderClass::Weak};
    const ProfileSpace lin32{3, 2, OrderClass::Linear};
    const ProfileSpace lin42{4, 2, OrderClass::Linear};
    const auto W = OrderClass::Weak;
    const auto L = OrderClass::Linear;

    std::vector<Certificate> out;
    auto add = [&](Certificate c, std::string claim, std::string expect) {
        out.push_back(with_claim(std::move(c), std::move(claim), std::move(expect)));
    };

    add(instance_entails(weak32, set("SD"), ax("SP"), W, caps), "SD |= SP", "ENTAILS");
    add(instance_entails(lin32, set("SD"), ax("SV"), W, caps), "SD |= SV", "ENTAILS");
    add(instance_entails(weak32, set("SSP"), ax("SP"), W, caps), "SSP |= SP", "ENTAILS");
    add(instance_entails(weak32, set("SD"), ax("SSD"), W, caps), "SD |= SSD", "ENTAILS");
    add(instance_entails(weak32, set("SL"), ax("SLP"), W, caps), "SL |= SLP", "ENTAILS");
    add(instance_entails(weak32, set("SLP"), ax("SL"), W, caps), "SLP |= SL", "ENTAILS");
    add(instance_entails(lin32, set("SV"), ax("SWD"), W, caps), "SV |= SWD", "ENTAILS");
    add(instance_entails(lin32, set("SWD"), ax("SV"), W, caps), "SWD |= SV", "ENTAILS");
    add(instance_entails(weak32, set("SP"), ax("SD"), W, caps), "SP |/= SD", "COUNTERMODEL");
    add(instance_entails(weak32, set("SSD"), ax("SD"), W, caps), "SSD |/= SD", "COUNTERMODEL");
    add(schema_entails_iia(lin32, set("SSD"), ax("SD"), L, caps), "SSD |/= SD", "COUNTERMODEL");
    add(instance_entails(weak32, set("SP"), ax("SSP"), W, caps), "SP |/= SSP", "COUNTERMODEL");
    add(schema_consistent(lin32, set("SD,SL"), W, caps), "SD,SL |-", "INCONSISTENT");
    add(schema_consistent(lin32, set("SL,SV"), W, caps), "SL,SV |-", "INCONSISTENT");
    for (const auto& ra : two_voter_rights_assignments(3))
        add(rights_consistent(lin32, ra, set("SP"), W, caps), "SP,RIGHTS(" + ra.to_string() + ") |-", "INCONSISTENT");
    add(schema_entails_iia(lin32, set("SP"), ax("SD"), L, caps), "SP |= SD", "ENTAILS");
    add(schema_entails_iia(lin32, set("SP"), ax("SV"), L, caps), "SP |= SV", "ENTAILS");
    add(schema_consistent(lin32, set("SP,SL"), W, caps), "SP,SL |-", "report");
    add(schema_consistent(lin42, set("SP,SL"), W, caps), "SP,SL |-", "report");
    add(schema_consistent(weak32, set("SSP,SD"), W, caps), "SSP,SD |-", "report");
    add(schema_consistent(weak32, set("SSP,SL"), W, caps), "SSP,SL |-", "report");
    add(instance_entails(weak32, set("SP"), ax("SSD"), W, caps), "SP |= SSD", "report");
    add(instance_entails(weak32, set("SSP"), ax("SSD"), W, caps), "SSP |= SSD", "report");
    return out;
}

}  // namespace scs

#endif  // SCS_ENGINE_HPP_
