#ifndef SCS_PREFS_HPP_
#define SCS_PREFS_HPP_

// Preference relations over a small finite universe of alternatives.
//
// A Relation is an m x m truth table stored as a bit string in row-major
// order, cell (0,0) in the most significant used bit. Comparing the raw
// integers therefore compares the bit strings lexicographically. The
// canonical enumeration order puts 1 before 0 at the first differing cell,
// which lists a>b>c before c>b>a and total indifference first.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "scs/error.hpp"

namespace scs {

/// Largest universe the bit layout can hold (8 x 8 = 64 cells).
inline constexpr int kMaxAlternatives = 8;
/// Default cap for enumeration. 541 weak orders at m = 5.
inline constexpr int kDefaultAlternativeCap = 5;

struct Alternative {
    int index = 0;

    constexpr Alternative() = default;
    constexpr explicit Alternative(int i) : index(i) {}

    char name() const { return static_cast<char>('a' + index); }

    friend constexpr bool operator==(Alternative, Alternative) = default;
    friend constexpr auto operator<=>(Alternative, Alternative) = default;
};

/// Subset of the universe as a bit mask (bit i = alternative i).
class AltSet {
  public:
    constexpr AltSet() = default;
    constexpr explicit AltSet(std::uint32_t bits) : bits_(bits) {}

    static AltSet universe(int m) { return AltSet(m >= 32 ? ~0u : ((1u << m) - 1u)); }
    static AltSet of(std::initializer_list<int> members) {
        AltSet s;
        for (int x : members) s.insert(x);
        return s;
    }

    bool contains(int x) const { return (bits_ >> x) & 1u; }
    void insert(int x) { bits_ |= (1u << x); }
    bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    std::uint32_t bits() const { return bits_; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    friend bool operator==(AltSet, AltSet) = default;

  private:
    std::uint32_t bits_ = 0;
};

class Relation {
  public:
    Relation() = default;
    explicit Relation(int m, std::uint64_t bits = 0) : m_(m), bits_(bits) {
        if (m < 1 || m > kMaxAlternatives)
            throw UsageError("universe size " + std::to_string(m) + " outside [1, " +
                             std::to_string(kMaxAlternatives) + "]");
    }

    static Relation full(int m) {
        Relation r(m);
        r.bits_ = (m * m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (m * m)) - 1);
        return r;
    }

    int size() const { return m_; }
    std::uint64_t bits() const { return bits_; }

    bool holds(int x, int y) const { return (bits_ >> position(x, y)) & 1u; }
    void set(int x, int y, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << position(x, y);
        bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
    }

    bool is_complete() const {
        for (int x = 0; x < m_; ++x)
            for (int y = x; y < m_; ++y)
                if (!holds(x, y) && !holds(y, x)) return false;
        return true;
    }

    bool is_transitive() const {
        for (int x = 0; x < m_; ++x)
            for (int y = 0; y < m_; ++y) {
                if (!holds(x, y)) continue;
                for (int z = 0; z < m_; ++z)
                    if (holds(y, z) && !holds(x, z)) return false;
            }
        return true;
    }

    bool is_reflexive() const {
        for (int x = 0; x < m_; ++x)
            if (!holds(x, x)) return false;
        return true;
    }

    bool is_symmetric() const {
        for (int x = 0; x < m_; ++x)
            for (int y = 0; y < m_; ++y)
                if (holds(x, y) != holds(y, x)) return false;
        return true;
    }

    bool is_asymmetric() const {
        for (int x = 0; x < m_; ++x)
            for (int y = 0; y < m_; ++y)
                if (holds(x, y) && holds(y, x)) return false;
        return true;
    }

    bool is_weak_order() const { return is_complete() && is_transitive(); }

    friend bool operator==(const Relation&, const Relation&) = default;

  private:
    int position(int x, int y) const { return m_ * m_ - 1 - (x * m_ + y); }

    int m_ = 1;
    std::uint64_t bits_ = 0;
};

/// Complete, transitive relation. Construction validates.
class WeakOrder {
  public:
    WeakOrder() : rel_(Relation::full(1)) {}
    explicit WeakOrder(const Relation& r) : rel_(r) {
        if (!r.is_complete()) throw ClassificationError("relation is not complete");
        if (!r.is_transitive()) throw ClassificationError("relation is not transitive");
    }

    /// All alternatives mutually indifferent.
    static WeakOrder indifference(int m) { return WeakOrder(Relation::full(m)); }

    /// Build from equivalence classes listed best first.
    static WeakOrder from_classes(int m, const std::vector<AltSet>& classes) {
        std::array<int, kMaxAlternatives> level{};
        level.fill(-1);
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (int x : classes[k].members()) {
                if (x >= m || level[x] != -1)
                    throw ClassificationError("ranking classes do not partition the universe");
                level[x] = static_cast<int>(k);
            }
        Relation r(m);
        for (int x = 0; x < m; ++x) {
            if (level[x] == -1) throw ClassificationError("ranking classes do not cover the universe");
            for (int y = 0; y < m; ++y)
                if (level[y] != -1 && level[x] <= level[y]) r.set(x, y);
        }
        return WeakOrder(r);
    }

    /// Strict linear order from a best-to-worst permutation.
    static WeakOrder from_sequence(int m, const std::vector<int>& best_first) {
        std::vector<AltSet> classes;
        for (int x : best_first) classes.push_back(AltSet::of({x}));
        return from_classes(m, classes);
    }

    const Relation& relation() const { return rel_; }
    int size() const { return rel_.size(); }
    std::uint64_t bits() const { return rel_.bits(); }

    bool weakly_prefers(int x, int y) const { return rel_.holds(x, y); }
    bool strictly_prefers(int x, int y) const { return rel_.holds(x, y) && !rel_.holds(y, x); }
    bool indifferent(int x, int y) const { return rel_.holds(x, y) && rel_.holds(y, x); }

    /// No off-diagonal indifference.
    bool is_linear() const {
        for (int x = 0; x < size(); ++x)
            for (int y = x + 1; y < size(); ++y)
                if (indifferent(x, y)) return false;
        return true;
    }

    /// Equivalence classes best first, each as a set.
    std::vector<AltSet> classes() const {
        const int m = size();
        std::vector<std::pair<int, int>> by_rank;  // (#strictly better, alternative)
        for (int x = 0; x < m; ++x) {
            int above = 0;
            for (int y = 0; y < m; ++y) above += strictly_prefers(y, x) ? 1 : 0;
            by_rank.emplace_back(above, x);
        }
        std::sort(by_rank.begin(), by_rank.end());
        std::vector<AltSet> out;
        int last = -1;
        for (auto [above, x] : by_rank) {
            if (above != last) out.emplace_back();
            out.back().insert(x);
            last = above;
        }
        return out;
    }

    friend bool operator==(const WeakOrder&, const WeakOrder&) = default;

  private:
    Relation rel_;
};

/// Relation cell (x,y) means x P y.
class StrictPart {
  public:
    explicit StrictPart(const Relation& r) : rel_(r) {}
    const Relation& relation() const { return rel_; }
    bool holds(int x, int y) const { return rel_.holds(x, y); }
    friend bool operator==(const StrictPart&, const StrictPart&) = default;

  private:
    Relation rel_;
};

/// Relation cell (x,y) means x I y.
class IndiffPart {
  public:
    explicit IndiffPart(const Relation& r) : rel_(r) {}
    const Relation& relation() const { return rel_; }
    bool holds(int x, int y) const { return rel_.holds(x, y); }
    friend bool operator==(const IndiffPart&, const IndiffPart&) = default;

  private:
    Relation rel_;
};

inline StrictPart strict_of(const WeakOrder& r) {
    Relation p(r.size());
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            if (r.strictly_prefers(x, y)) p.set(x, y);
    return StrictPart(p);
}

inline StrictPart strict_of(const Relation& r) { return strict_of(WeakOrder(r)); }

inline IndiffPart indiff_of(const WeakOrder& r) {
    Relation i(r.size());
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            if (r.indifferent(x, y)) i.set(x, y);
    return IndiffPart(i);
}

inline IndiffPart indiff_of(const Relation& r) { return indiff_of(WeakOrder(r)); }

/// x R y iff x P y or x I y.
inline WeakOrder weak_of(const StrictPart& p, const IndiffPart& i) {
    const int m = p.relation().size();
    if (i.relation().size() != m) throw UsageError("strict and indifference parts differ in size");
    Relation r(m, p.relation().bits() | i.relation().bits());
    if (!r.is_weak_order())
        throw ReconstructionError("strict and indifference parts do not assemble into a weak order");
    return WeakOrder(r);
}

/// {x in Y | x R y for every y in Y}.
inline AltSet choice_set(AltSet menu, const Relation& r) {
    if (menu.empty()) throw UsageError("choice set of an empty menu");
    if ((menu.bits() & ~AltSet::universe(r.size()).bits()) != 0)
        throw UsageError("menu contains alternatives outside the universe");
    AltSet best;
    for (int x : menu.members()) {
        bool dominates = true;
        for (int y : menu.members()) dominates = dominates && r.holds(x, y);
        if (dominates) best.insert(x);
    }
    return best;
}

inline AltSet choice_set(AltSet menu, const WeakOrder& r) { return choice_set(menu, r.relation()); }

/// Canonical enumeration order: lexicographic over row-major incidence bits,
/// 1 before 0.
inline bool canonical_before(const WeakOrder& a, const WeakOrder& b) { return a.bits() > b.bits(); }

enum class OrderClass { Linear, Weak };

inline std::string to_string(OrderClass c) { return c == OrderClass::Linear ? "linear" : "weak"; }

inline OrderClass parse_order_class(std::string_view s) {
    if (s == "linear") return OrderClass::Linear;
    if (s == "weak") return OrderClass::Weak;
    throw UsageError("unknown preference class '" + std::string(s) + "' (expected linear|weak)");
}

namespace detail {

inline void check_universe(int m, int cap) {
    if (cap > kMaxAlternatives) cap = kMaxAlternatives;
    if (m < 1 || m > cap)
        throw CapExceeded("universe size " + std::to_string(m) + " outside [1, " + std::to_string(cap) + "]",
                          static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(cap));
}

// Ordered set partitions of `remaining`, each turned into a weak order.
inline void generate_partitions(int m, std::uint32_t remaining, std::vector<AltSet>& prefix,
                                std::vector<WeakOrder>& out) {
    if (remaining == 0) {
        out.push_back(WeakOrder::from_classes(m, prefix));
        return;
    }
    // Every nonempty submask of `remaining` can be the next class.
    for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
        prefix.emplace_back(sub);
        generate_partitions(m, remaining & ~sub, prefix, out);
        prefix.pop_back();
    }
}

struct OrderTables {
    std::array<std::once_flag, kMaxAlternatives + 1> once;
    std::array<std::vector<WeakOrder>, kMaxAlternatives + 1> weak;
    std::array<std::vector<WeakOrder>, kMaxAlternatives + 1> linear;
};

inline OrderTables& order_tables() {
    static OrderTables tables;
    return tables;
}

inline void build_tables(int m) {
    auto& t = order_tables();
    std::call_once(t.once[m], [&] {
        std::vector<WeakOrder> orders;
        std::vector<AltSet> prefix;
        generate_partitions(m, AltSet::universe(m).bits(), prefix, orders);
        std::sort(orders.begin(), orders.end(), canonical_before);
        for (const auto& w : orders)
            if (w.is_linear()) t.linear[m].push_back(w);
        t.weak[m] = std::move(orders);
    });
}

}  // namespace detail

/// All complete transitive relations on m alternatives, canonical order.
inline const std::vector<WeakOrder>& enumerate_weak_orders(int m, int cap = kDefaultAlternativeCap) {
    detail::check_universe(m, cap);
    detail::build_tables(m);
    return detail::order_tables().weak[m];
}

/// The weak orders without off-diagonal indifference (m! of them).
inline const std::vector<WeakOrder>& enumerate_linear_orders(int m, int cap = kDefaultAlternativeCap) {
    detail::check_universe(m, cap);
    detail::build_tables(m);
    return detail::order_tables().linear[m];
}

inline const std::vector<WeakOrder>& orders_of_class(OrderClass c, int m, int cap = kDefaultAlternativeCap) {
    return c == OrderClass::Linear ? enumerate_linear_orders(m, cap) : enumerate_weak_orders(m, cap);
}

/// Position of `w` in the canonical enumeration of class `c`, or -1.
inline int canonical_index(OrderClass c, const WeakOrder& w, int cap = kDefaultAlternativeCap) {
    const auto& orders = orders_of_class(c, w.size(), cap);
    auto it = std::lower_bound(orders.begin(), orders.end(), w, canonical_before);
    if (it == orders.end() || !(*it == w)) return -1;
    return static_cast<int>(it - orders.begin());
}

// ---- ranking strings: order := class ('>' class)* ; class := name ('~' name)*

inline std::string to_ranking(const WeakOrder& w) {
    std::string out;
    bool first_class = true;
    for (const AltSet& cls : w.classes()) {
        if (!first_class) out += '>';
        first_class = false;
        bool first = true;
        for (int x : cls.members()) {
            if (!first) out += '~';
            first = false;
            out += Alternative(x).name();
        }
    }
    return out;
}

/// Parse a ranking string. With `m` < 0 the universe size is the number of
/// names mentioned, which must be exactly the first letters of the alphabet.
inline WeakOrder parse_ranking(std::string_view text, int m = -1) {
    std::vector<AltSet> classes(1);
    std::uint32_t seen = 0;
    bool expect_name = true;
    for (char ch : text) {
        if (expect_name) {
            if (ch < 'a' || ch >= 'a' + kMaxAlternatives)
                throw ParseError(0, "unknown alternative '" + std::string(1, ch) + "' in ranking '" +
                                        std::string(text) + "'");
            const int x = ch - 'a';
            if ((seen >> x) & 1u)
                throw ParseError(0, "alternative '" + std::string(1, ch) + "' repeated in ranking '" +
                                        std::string(text) + "'");
            seen |= 1u << x;
            classes.back().insert(x);
            expect_name = false;
        } else if (ch == '~') {
            expect_name = true;
        } else if (ch == '>') {
            classes.emplace_back();
            expect_name = true;
        } else {
            throw ParseError(0, "unexpected character '" + std::string(1, ch) + "' in ranking '" +
                                    std::string(text) + "'");
        }
    }
    if (expect_name) throw ParseError(0, "truncated ranking '" + std::string(text) + "'");
    const int named = std::popcount(seen);
    if (m < 0) m = named;
    if (seen != AltSet::universe(m).bits())
        throw ParseError(0, "ranking '" + std::string(text) + "' must name each of the " + std::to_string(m) +
                                " alternatives exactly once");
    return WeakOrder::from_classes(m, classes);
}

}  // namespace scs

#endif  // SCS_PREFS_HPP_
