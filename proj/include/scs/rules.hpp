#ifndef SCS_RULES_HPP_
#define SCS_RULES_HPP_

// Aggregation rules are explicit tables: one social weak order per profile
// id of a ProfileSpace.

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scs/axioms.hpp"
#include "scs/error.hpp"
#include "scs/prefs.hpp"
#include "scs/profiles.hpp"

namespace scs {

class AggregationRule {
  public:
    AggregationRule(ProfileSpace space, std::vector<WeakOrder> table, std::string name,
                    std::string provenance = {})
        : space_(space), table_(std::move(table)), name_(std::move(name)), provenance_(std::move(provenance)) {
        space_.validate();
        if (table_.size() != space_.size())
            throw UsageError("rule table has " + std::to_string(table_.size()) + " entries, space " +
                             space_.describe() + " has " + std::to_string(space_.size()) + " profiles");
        for (const auto& w : table_)
            if (w.size() != space_.alts) throw UsageError("rule table entry over the wrong universe");
    }

    const ProfileSpace& space() const { return space_; }
    const std::vector<WeakOrder>& table() const { return table_; }
    const WeakOrder& at(std::uint64_t id) const { return table_.at(static_cast<std::size_t>(id)); }
    const WeakOrder& operator()(const Profile& p) const { return at(profile_id(space_, p)); }
    std::uint64_t size() const { return table_.size(); }
    const std::string& name() const { return name_; }
    const std::string& provenance() const { return provenance_; }

    /// Tables and spaces equal; name and provenance are metadata.
    bool same_table(const AggregationRule& other) const {
        return space_ == other.space_ && table_ == other.table_;
    }

  private:
    ProfileSpace space_;
    std::vector<WeakOrder> table_;
    std::string name_;
    std::string provenance_;
};

/// Social order = voter `voter`'s order (0-based voter index).
inline AggregationRule dictatorship_rule(const ProfileSpace& space, int voter) {
    space.validate();
    if (voter < 0 || voter >= space.voters) throw UsageError("dictator is not a voter of the space");
    std::vector<WeakOrder> table;
    table.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t id = 0; id < space.size(); ++id) table.push_back(profile_at(space, id).voter(voter));
    return AggregationRule(space, std::move(table), "dictator-" + std::to_string(voter + 1), "dictatorship_rule");
}

inline AggregationRule constant_rule(const ProfileSpace& space, const WeakOrder& social) {
    space.validate();
    if (social.size() != space.alts) throw UsageError("constant order over the wrong universe");
    return AggregationRule(space, std::vector<WeakOrder>(static_cast<std::size_t>(space.size()), social),
                           "constant-" + to_ranking(social), "constant_rule");
}

inline AggregationRule constant_indifference_rule(const ProfileSpace& space) {
    return constant_rule(space, WeakOrder::indifference(space.alts));
}

/// x R y iff at least as many voters weakly prefer x to y as y to x. Not
/// necessarily transitive.
inline Relation pairwise_majority(const Profile& p) {
    const int m = p.alts();
    Relation r(m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int for_x = 0, for_y = 0;
            for (const auto& w : p.orders()) {
                for_x += w.weakly_prefers(x, y) ? 1 : 0;
                for_y += w.weakly_prefers(y, x) ? 1 : 0;
            }
            if (for_x >= for_y) r.set(x, y);
        }
    return r;
}

inline std::vector<Relation> pairwise_majority_raw(const ProfileSpace& space) {
    space.validate();
    std::vector<Relation> out;
    out.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t id = 0; id < space.size(); ++id) out.push_back(pairwise_majority(profile_at(space, id)));
    return out;
}

/// Borda score of each alternative: number of alternatives it strictly beats,
/// summed over voters.
inline std::vector<int> borda_scores(const Profile& p) {
    const int m = p.alts();
    std::vector<int> score(static_cast<std::size_t>(m), 0);
    for (const auto& w : p.orders())
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                if (w.strictly_prefers(x, y)) ++score[static_cast<std::size_t>(x)];
    return score;
}

inline WeakOrder borda(const Profile& p) {
    const auto score = borda_scores(p);
    Relation r(p.alts());
    for (int x = 0; x < p.alts(); ++x)
        for (int y = 0; y < p.alts(); ++y)
            if (score[static_cast<std::size_t>(x)] >= score[static_cast<std::size_t>(y)]) r.set(x, y);
    return WeakOrder(r);
}

inline AggregationRule borda_rule(const ProfileSpace& space) {
    space.validate();
    std::vector<WeakOrder> table;
    table.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t id = 0; id < space.size(); ++id) table.push_back(borda(profile_at(space, id)));
    return AggregationRule(space, std::move(table), "borda", "borda_rule");
}

// ---- schema checks

struct SchemaCheck {
    bool holds = true;
    std::optional<std::uint64_t> failing_profile;  // least id
};

inline SchemaCheck satisfies_schema(const AggregationRule& rule, const AxiomId& ax) {
    const auto& space = rule.space();
    for (std::uint64_t id = 0; id < rule.size(); ++id)
        if (!evaluate(ax, profile_at(space, id), rule.at(id))) return {false, id};
    return {};
}

struct IiaWitness {
    std::uint64_t first = 0;   // profile ids, first < second
    std::uint64_t second = 0;
    int x = 0;                 // the pair, x < y
    int y = 1;

    friend bool operator==(const IiaWitness&, const IiaWitness&) = default;
};

struct IiaCheck {
    bool holds = true;
    std::optional<IiaWitness> witness;
};

/// Two-element menus only: profiles agreeing on {x,y} must get the same
/// social verdict on {x,y}. The witness is the least (first, second, pair).
inline IiaCheck satisfies_iia(const AggregationRule& rule) {
    const auto& space = rule.space();
    std::vector<std::vector<std::uint32_t>> codes(static_cast<std::size_t>(rule.size()));
    const auto pairs = unordered_pairs(space.alts);
    for (std::uint64_t id = 0; id < rule.size(); ++id) {
        const Profile p = profile_at(space, id);
        for (auto [x, y] : pairs) codes[id].push_back(pair_pattern_code(p, x, y));
    }
    std::optional<IiaWitness> best;
    auto better = [](const IiaWitness& a, const IiaWitness& b) {
        return std::tie(a.first, a.second, a.x, a.y) < std::tie(b.first, b.second, b.x, b.y);
    };
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [x, y] = pairs[k];
        struct Group {
            std::uint64_t first;
            PairVerdict verdict;
            std::optional<std::uint64_t> conflict;
        };
        std::unordered_map<std::uint32_t, Group> groups;
        for (std::uint64_t id = 0; id < rule.size(); ++id) {
            const PairVerdict v = pair_verdict(rule.at(id), x, y);
            auto [it, inserted] = groups.try_emplace(codes[id][k], Group{id, v, std::nullopt});
            if (!inserted && !it->second.conflict && it->second.verdict != v) it->second.conflict = id;
        }
        for (const auto& [code, g] : groups) {
            if (!g.conflict) continue;
            IiaWitness w{g.first, *g.conflict, x, y};
            if (!best || better(w, *best)) best = w;
        }
    }
    if (best) return {false, best};
    return {};
}

/// Voter i (0-based) is decisive at every profile of the rule.
inline bool is_uniform_dictator(const AggregationRule& rule, int voter) {
    return satisfies_schema(rule, AxiomId::decisive(VoterSet::single(voter))).holds;
}

struct RuleClassification {
    bool satisfies_iia = false;
    std::optional<IiaWitness> iia_witness;
    std::vector<std::pair<AxiomId, SchemaCheck>> schema;  // one per standard axiom
    std::optional<int> uniform_dictator;                  // 0-based, least such voter
    bool per_profile_dictators = false;                   // SD schema
};

inline const AxiomSet& standard_axioms() {
    static const AxiomSet axioms = {
        AxiomId::plain(AxiomKind::SP),  AxiomId::plain(AxiomKind::SD),  AxiomId::plain(AxiomKind::SWD),
        AxiomId::plain(AxiomKind::SV),  AxiomId::plain(AxiomKind::SL),  AxiomId::plain(AxiomKind::SLP),
        AxiomId::plain(AxiomKind::SSP), AxiomId::plain(AxiomKind::SSD),
    };
    return axioms;
}

inline RuleClassification classify(const AggregationRule& rule) {
    RuleClassification c;
    const IiaCheck iia = satisfies_iia(rule);
    c.satisfies_iia = iia.holds;
    c.iia_witness = iia.witness;
    for (const auto& ax : standard_axioms()) {
        c.schema.emplace_back(ax, satisfies_schema(rule, ax));
        if (ax.kind == AxiomKind::SD) c.per_profile_dictators = c.schema.back().second.holds;
    }
    for (int i = 0; i < rule.space().voters && !c.uniform_dictator; ++i)
        if (is_uniform_dictator(rule, i)) c.uniform_dictator = i;
    return c;
}

}  // namespace scs

#endif  // SCS_RULES_HPP_
