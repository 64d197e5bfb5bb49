#ifndef SCS_AXIOMS_HPP_
#define SCS_AXIOMS_HPP_

// Instance-level evaluators. An instance is one profile together with one
// social weak order. Every quantifier over x,y ranges over ordered pairs of
// distinct alternatives.

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scs/error.hpp"
#include "scs/prefs.hpp"
#include "scs/profiles.hpp"

namespace scs {

struct Instance {
    Profile profile;
    WeakOrder social;

    Instance(Profile p, WeakOrder s) : profile(std::move(p)), social(std::move(s)) {
        if (profile.alts() != social.size()) throw UsageError("instance mixes universes of different size");
    }
};

/// Voter -> protected unordered pairs. Pairs are stored normalized (x < y).
class RightsAssignment {
  public:
    using Pair = std::pair<int, int>;

    void assign(int voter, int x, int y) {
        if (voter < 0 || voter >= kMaxVoters) throw UsageError("rights voter out of range");
        if (x == y) throw UsageError("rights pair needs two distinct alternatives");
        auto& pairs = rights_[voter];
        const Pair p = std::minmax(x, y);
        if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) {
            pairs.push_back(p);
            std::sort(pairs.begin(), pairs.end());
        }
    }

    const std::map<int, std::vector<Pair>>& entries() const { return rights_; }
    bool empty() const { return rights_.empty(); }
    int max_voter() const { return rights_.empty() ? -1 : rights_.rbegin()->first; }
    int max_alternative() const {
        int hi = -1;
        for (const auto& [v, pairs] : rights_)
            for (auto [x, y] : pairs) hi = std::max(hi, y);
        return hi;
    }

    /// "1:{a,b};2:{b,c}", voters 1-based.
    std::string to_string() const {
        std::string out;
        for (const auto& [v, pairs] : rights_)
            for (auto [x, y] : pairs) {
                if (!out.empty()) out += ';';
                out += std::to_string(v + 1) + ":{" + Alternative(x).name() + "," + Alternative(y).name() + "}";
            }
        return out;
    }

    friend bool operator==(const RightsAssignment&, const RightsAssignment&) = default;

  private:
    std::map<int, std::vector<Pair>> rights_;
};

inline RightsAssignment parse_rights(std::string_view text) {
    RightsAssignment ra;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError(0, "rights assignment '" + std::string(text) + "': " + why);
    };
    auto alt = [&](char c) {
        if (c < 'a' || c >= 'a' + kMaxAlternatives) fail("unknown alternative '" + std::string(1, c) + "'");
        return c - 'a';
    };
    while (pos < text.size()) {
        std::size_t colon = text.find(':', pos);
        if (colon == std::string_view::npos) fail("missing ':'");
        int voter = 0;
        const std::string_view num = text.substr(pos, colon - pos);
        if (num.empty()) fail("missing voter number");
        for (char c : num) {
            if (c < '0' || c > '9') fail("voter must be a positive integer");
            voter = voter * 10 + (c - '0');
            if (voter > kMaxVoters) fail("voter number too large");
        }
        if (voter < 1) fail("voters are numbered from 1");
        pos = colon + 1;
        if (text.size() < pos + 5 || text[pos] != '{' || text[pos + 2] != ',' || text[pos + 4] != '}')
            fail("expected {x,y} after voter " + std::to_string(voter));
        const int x = alt(text[pos + 1]);
        const int y = alt(text[pos + 3]);
        if (x == y) fail("pair {x,y} needs distinct alternatives");
        ra.assign(voter - 1, x, y);
        pos += 5;
        if (pos < text.size()) {
            if (text[pos] != ';') fail("expected ';' between entries");
            ++pos;
            if (pos == text.size()) fail("trailing ';'");
        }
    }
    if (ra.empty()) fail("no voter assigned");
    return ra;
}

// ---- the evaluators

namespace detail {

inline bool unanimous_strict(const Profile& p, VoterSet g, int x, int y) {
    for (int i : g.members())
        if (!p.voter(i).strictly_prefers(x, y)) return false;
    return true;
}

inline bool respects_strictly(const WeakOrder& individual, const WeakOrder& social) {
    const int m = social.size();
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (x != y && individual.strictly_prefers(x, y) && !social.strictly_prefers(x, y)) return false;
    return true;
}

}  // namespace detail

/// Unanimous strict preference is socially strict.
inline bool eval_SP(const Profile& p, const WeakOrder& s) {
    for (int x = 0; x < s.size(); ++x)
        for (int y = 0; y < s.size(); ++y)
            if (x != y && detail::unanimous_strict(p, VoterSet::all(p.voters()), x, y) && !s.strictly_prefers(x, y))
                return false;
    return true;
}

/// Some voter's strict preferences are all socially strict.
inline bool eval_SD(const Profile& p, const WeakOrder& s) {
    for (const auto& w : p.orders())
        if (detail::respects_strictly(w, s)) return true;
    return false;
}

inline bool eval_SWD(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (const auto& w : p.orders()) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            for (int y = 0; y < m && ok; ++y)
                if (x != y && w.strictly_prefers(x, y) && !s.weakly_prefers(x, y)) ok = false;
        if (ok) return true;
    }
    return false;
}

/// Some voter without indifference whose strict preferences are never
/// strictly reversed.
inline bool eval_SV(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (const auto& w : p.orders()) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            for (int y = 0; y < m && ok; ++y) {
                if (x == y) continue;
                if (w.indifferent(x, y)) ok = false;
                else if (w.strictly_prefers(x, y) && s.strictly_prefers(y, x)) ok = false;
            }
        if (ok) return true;
    }
    return false;
}

/// Every voter has a non-indifferent pair on which the social order follows
/// them in both directions.
inline bool eval_SL(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (const auto& w : p.orders()) {
        bool witnessed = false;
        for (int x = 0; x < m && !witnessed; ++x)
            for (int y = 0; y < m && !witnessed; ++y) {
                if (x == y || w.indifferent(x, y)) continue;
                const bool forward = !w.strictly_prefers(x, y) || s.strictly_prefers(x, y);
                const bool backward = !w.strictly_prefers(y, x) || s.strictly_prefers(y, x);
                witnessed = forward && backward;
            }
        if (!witnessed) return false;
    }
    return true;
}

/// Every voter has a pair with x P_i y and x P y.
inline bool eval_SLP(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (const auto& w : p.orders()) {
        bool witnessed = false;
        for (int x = 0; x < m && !witnessed; ++x)
            for (int y = 0; y < m && !witnessed; ++y)
                witnessed = x != y && w.strictly_prefers(x, y) && s.strictly_prefers(x, y);
        if (!witnessed) return false;
    }
    return true;
}

inline bool eval_SSP(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            bool all_weak = true;
            bool some_strict = false;
            for (const auto& w : p.orders()) {
                all_weak = all_weak && w.weakly_prefers(x, y);
                some_strict = some_strict || w.strictly_prefers(x, y);
            }
            if (all_weak && some_strict && !s.strictly_prefers(x, y)) return false;
        }
    return true;
}

/// Literal reading: both existentials may be met by pairs where the
/// antecedent fails.
inline bool eval_SSD(const Profile& p, const WeakOrder& s) {
    const int m = s.size();
    for (const auto& w : p.orders()) {
        bool strict_clause = false;
        bool weak_clause = false;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                if (x == y) continue;
                strict_clause = strict_clause || !w.strictly_prefers(x, y) || s.strictly_prefers(x, y);
                weak_clause = weak_clause || !w.weakly_prefers(x, y) || s.weakly_prefers(x, y);
            }
        if (strict_clause && weak_clause) return true;
    }
    return false;
}

inline void check_group(const Profile& p, VoterSet g) {
    if (g.empty()) throw UsageError("decisive group must be nonempty");
    if ((g.bits() & ~VoterSet::all(p.voters()).bits()) != 0) throw UsageError("decisive group names a missing voter");
}

inline bool eval_decisive_over(const Profile& p, const WeakOrder& s, VoterSet g, Alternative a, Alternative b) {
    check_group(p, g);
    if (a == b) throw UsageError("decisiveness pair needs distinct alternatives");
    if (a.index >= s.size() || b.index >= s.size()) throw UsageError("decisiveness pair outside the universe");
    const int x = a.index, y = b.index;
    if (detail::unanimous_strict(p, g, x, y) && !s.strictly_prefers(x, y)) return false;
    if (detail::unanimous_strict(p, g, y, x) && !s.strictly_prefers(y, x)) return false;
    return true;
}

inline bool eval_decisive(const Profile& p, const WeakOrder& s, VoterSet g) {
    check_group(p, g);
    for (int x = 0; x < s.size(); ++x)
        for (int y = 0; y < s.size(); ++y)
            if (x != y && detail::unanimous_strict(p, g, x, y) && !s.strictly_prefers(x, y)) return false;
    return true;
}

inline bool eval_rights(const Profile& p, const WeakOrder& s, const RightsAssignment& ra) {
    if (ra.max_voter() >= p.voters()) throw UsageError("rights assignment names a missing voter");
    if (ra.max_alternative() >= s.size()) throw UsageError("rights assignment names a missing alternative");
    for (const auto& [i, pairs] : ra.entries()) {
        const WeakOrder& w = p.voter(i);
        for (auto [x, y] : pairs) {
            if (w.strictly_prefers(x, y) && !s.strictly_prefers(x, y)) return false;
            if (w.strictly_prefers(y, x) && !s.strictly_prefers(y, x)) return false;
        }
    }
    return true;
}

inline bool eval_SP(const Instance& i) { return eval_SP(i.profile, i.social); }
inline bool eval_SD(const Instance& i) { return eval_SD(i.profile, i.social); }
inline bool eval_SWD(const Instance& i) { return eval_SWD(i.profile, i.social); }
inline bool eval_SV(const Instance& i) { return eval_SV(i.profile, i.social); }
inline bool eval_SL(const Instance& i) { return eval_SL(i.profile, i.social); }
inline bool eval_SLP(const Instance& i) { return eval_SLP(i.profile, i.social); }
inline bool eval_SSP(const Instance& i) { return eval_SSP(i.profile, i.social); }
inline bool eval_SSD(const Instance& i) { return eval_SSD(i.profile, i.social); }
inline bool eval_decisive(const Instance& i, VoterSet g) { return eval_decisive(i.profile, i.social, g); }
inline bool eval_decisive_over(const Instance& i, VoterSet g, Alternative a, Alternative b) {
    return eval_decisive_over(i.profile, i.social, g, a, b);
}
inline bool eval_rights(const Instance& i, const RightsAssignment& ra) { return eval_rights(i.profile, i.social, ra); }

// ---- axiom identifiers

enum class AxiomKind { SP, SD, SWD, SV, SL, SLP, SSP, SSD, Decisive, DecisiveOver, Rights };

struct AxiomId {
    AxiomKind kind = AxiomKind::SP;
    bool negated = false;
    VoterSet group;           // Decisive, DecisiveOver
    Alternative a, b;         // DecisiveOver
    RightsAssignment rights;  // Rights

    static AxiomId plain(AxiomKind k) { return AxiomId{k, false, {}, {}, {}, {}}; }
    static AxiomId decisive(VoterSet g) { return AxiomId{AxiomKind::Decisive, false, g, {}, {}, {}}; }
    static AxiomId decisive_over(VoterSet g, Alternative a, Alternative b) {
        return AxiomId{AxiomKind::DecisiveOver, false, g, a, b, {}};
    }
    static AxiomId with_rights(RightsAssignment ra) {
        return AxiomId{AxiomKind::Rights, false, {}, {}, {}, std::move(ra)};
    }

    friend bool operator==(const AxiomId&, const AxiomId&) = default;
};

using AxiomSet = std::vector<AxiomId>;

inline AxiomId negate(AxiomId ax) {
    ax.negated = !ax.negated;
    return ax;
}

namespace detail {

struct NamedAxiom {
    const char* name;
    const char* negated_name;
    AxiomKind kind;
};

inline constexpr NamedAxiom kNamedAxioms[] = {
    {"SP", "NP", AxiomKind::SP},     {"SD", "ND", AxiomKind::SD},     {"SWD", "NWD", AxiomKind::SWD},
    {"SV", "NV", AxiomKind::SV},     {"SL", "NL", AxiomKind::SL},     {"SLP", "NLP", AxiomKind::SLP},
    {"SSP", "NSP", AxiomKind::SSP},  {"SSD", "NSD", AxiomKind::SSD},
};

}  // namespace detail

/// Bit-exact token: SP, ND, DEC(1,2), DEC(1:a,b), RIGHTS(1:{a,b};2:{b,c}),
/// with an N prefix (in place of S for the named axioms) for negation.
inline std::string to_token(const AxiomId& ax) {
    for (const auto& n : detail::kNamedAxioms)
        if (n.kind == ax.kind) return ax.negated ? n.negated_name : n.name;
    std::string body;
    if (ax.kind == AxiomKind::Rights) {
        body = "RIGHTS(" + ax.rights.to_string() + ")";
    } else {
        std::string members;
        for (int i : ax.group.members()) {
            if (!members.empty()) members += ',';
            members += std::to_string(i + 1);
        }
        body = "DEC(" + members;
        if (ax.kind == AxiomKind::DecisiveOver) body += std::string(":") + ax.a.name() + "," + ax.b.name();
        body += ")";
    }
    return ax.negated ? "N" + body : body;
}

inline AxiomId parse_axiom(std::string_view token) {
    for (const auto& n : detail::kNamedAxioms) {
        if (token == n.name) return AxiomId::plain(n.kind);
        if (token == n.negated_name) return negate(AxiomId::plain(n.kind));
    }
    const bool negated = !token.empty() && token.front() == 'N';
    std::string_view body = negated ? token.substr(1) : token;
    auto fail = [&](const std::string& why) -> AxiomId {
        throw ParseError(0, "axiom '" + std::string(token) + "': " + why);
    };
    if (body.empty() || body.back() != ')') return fail("unknown axiom name");
    AxiomId ax;
    if (body.starts_with("RIGHTS(")) {
        ax = AxiomId::with_rights(parse_rights(body.substr(7, body.size() - 8)));
    } else if (body.starts_with("DEC(")) {
        std::string_view inner = body.substr(4, body.size() - 5);
        const std::size_t colon = inner.find(':');
        std::string_view voters = inner.substr(0, colon);
        VoterSet g;
        std::size_t pos = 0;
        while (pos <= voters.size()) {
            const std::size_t comma = std::min(voters.find(',', pos), voters.size());
            const std::string_view num = voters.substr(pos, comma - pos);
            int v = 0;
            if (num.empty()) return fail("empty voter number");
            for (char c : num) {
                if (c < '0' || c > '9') return fail("voter must be a positive integer");
                v = v * 10 + (c - '0');
                if (v > kMaxVoters) return fail("voter number too large");
            }
            if (v < 1) return fail("voters are numbered from 1");
            g = VoterSet(g.bits() | (1u << (v - 1)));
            pos = comma + 1;
        }
        if (colon == std::string_view::npos) {
            ax = AxiomId::decisive(g);
        } else {
            std::string_view pair = inner.substr(colon + 1);
            if (pair.size() != 3 || pair[1] != ',') return fail("expected DEC(voters:x,y)");
            const int x = pair[0] - 'a', y = pair[2] - 'a';
            if (x < 0 || y < 0 || x >= kMaxAlternatives || y >= kMaxAlternatives) return fail("unknown alternative");
            if (x == y) return fail("decisiveness pair needs distinct alternatives");
            ax = AxiomId::decisive_over(g, Alternative(x), Alternative(y));
        }
    } else {
        return fail("unknown axiom name");
    }
    ax.negated = negated;
    return ax;
}

/// Comma-separated list; commas inside parentheses belong to the token.
inline AxiomSet parse_axiom_list(std::string_view text) {
    AxiomSet out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            const std::string_view tok = text.substr(start, i - start);
            if (!tok.empty()) out.push_back(parse_axiom(tok));
            start = i + 1;
        }
    }
    return out;
}

inline std::string to_token_list(const AxiomSet& axioms) {
    std::string out;
    for (const auto& ax : axioms) {
        if (!out.empty()) out += ',';
        out += to_token(ax);
    }
    return out.empty() ? "-" : out;
}

inline bool evaluate(const AxiomId& ax, const Profile& p, const WeakOrder& s) {
    bool v = false;
    switch (ax.kind) {
        case AxiomKind::SP: v = eval_SP(p, s); break;
        case AxiomKind::SD: v = eval_SD(p, s); break;
        case AxiomKind::SWD: v = eval_SWD(p, s); break;
        case AxiomKind::SV: v = eval_SV(p, s); break;
        case AxiomKind::SL: v = eval_SL(p, s); break;
        case AxiomKind::SLP: v = eval_SLP(p, s); break;
        case AxiomKind::SSP: v = eval_SSP(p, s); break;
        case AxiomKind::SSD: v = eval_SSD(p, s); break;
        case AxiomKind::Decisive: v = eval_decisive(p, s, ax.group); break;
        case AxiomKind::DecisiveOver: v = eval_decisive_over(p, s, ax.group, ax.a, ax.b); break;
        case AxiomKind::Rights: v = eval_rights(p, s, ax.rights); break;
    }
    return ax.negated ? !v : v;
}

inline bool evaluate(const AxiomId& ax, const Instance& inst) { return evaluate(ax, inst.profile, inst.social); }

inline bool evaluate_all(const AxiomSet& axioms, const Profile& p, const WeakOrder& s) {
    for (const auto& ax : axioms)
        if (!evaluate(ax, p, s)) return false;
    return true;
}

/// Social orders of class `social` satisfying every axiom at `p`, canonical order.
inline std::vector<WeakOrder> admissible_social_set(const AxiomSet& axioms, const Profile& p,
                                                    OrderClass social = OrderClass::Weak) {
    std::vector<WeakOrder> out;
    for (const auto& w : orders_of_class(social, p.alts()))
        if (evaluate_all(axioms, p, w)) out.push_back(w);
    return out;
}

}  // namespace scs

#endif  // SCS_AXIOMS_HPP_
