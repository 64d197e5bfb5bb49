#ifndef SCS_PROFILES_HPP_
#define SCS_PROFILES_HPP_

// Profiles are voter-indexed tuples of weak orders over a shared universe.
// A ProfileSpace is the whole Cartesian power of one order class, which is
// how the unrestricted-domain condition is realized: rules are total over it.
// Profile ids are mixed-radix numbers over the components' canonical
// indices, voter 1 most significant.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scs/error.hpp"
#include "scs/prefs.hpp"

namespace scs {

inline constexpr int kMaxVoters = 16;

struct ProfileSpace {
    int alts = 3;
    int voters = 2;
    OrderClass cls = OrderClass::Linear;

    const std::vector<WeakOrder>& orders() const { return orders_of_class(cls, alts); }

    /// |class(m)|^n, saturating at UINT64_MAX.
    std::uint64_t size() const {
        const std::uint64_t k = orders().size();
        std::uint64_t total = 1;
        for (int i = 0; i < voters; ++i) {
            if (total > UINT64_MAX / k) return UINT64_MAX;
            total *= k;
        }
        return total;
    }

    void validate() const {
        if (voters < 1 || voters > kMaxVoters)
            throw UsageError("voter count " + std::to_string(voters) + " outside [1, " +
                             std::to_string(kMaxVoters) + "]");
        (void)orders();  // enforces the universe cap
    }

    std::string describe() const {
        return "alts=" + std::to_string(alts) + " voters=" + std::to_string(voters) + " class=" + to_string(cls);
    }

    friend bool operator==(const ProfileSpace&, const ProfileSpace&) = default;
};

class Profile {
  public:
    Profile() = default;
    Profile(std::vector<WeakOrder> orders, OrderClass cls) : orders_(std::move(orders)), cls_(cls) {
        if (orders_.empty()) throw UsageError("a profile needs at least one voter");
        if (static_cast<int>(orders_.size()) > kMaxVoters) throw UsageError("too many voters in profile");
        const int m = orders_.front().size();
        for (const auto& w : orders_) {
            if (w.size() != m) throw UsageError("profile components range over different universes");
            if (cls_ == OrderClass::Linear && !w.is_linear())
                throw ClassificationError("profile tagged linear contains an indifference");
        }
    }

    int voters() const { return static_cast<int>(orders_.size()); }
    int alts() const { return orders_.front().size(); }
    OrderClass order_class() const { return cls_; }
    const WeakOrder& voter(int i) const { return orders_[static_cast<std::size_t>(i)]; }
    const std::vector<WeakOrder>& orders() const { return orders_; }

    friend bool operator==(const Profile&, const Profile&) = default;

  private:
    std::vector<WeakOrder> orders_;
    OrderClass cls_ = OrderClass::Linear;
};

inline Profile profile_at(const ProfileSpace& space, std::uint64_t id) {
    const auto& orders = space.orders();
    const std::uint64_t k = orders.size();
    std::vector<WeakOrder> comps(static_cast<std::size_t>(space.voters));
    for (int i = space.voters - 1; i >= 0; --i) {
        comps[static_cast<std::size_t>(i)] = orders[id % k];
        id /= k;
    }
    return Profile(std::move(comps), space.cls);
}

inline std::uint64_t profile_id(const ProfileSpace& space, const Profile& p) {
    if (p.voters() != space.voters || p.alts() != space.alts)
        throw UsageError("profile does not belong to space " + space.describe());
    const std::uint64_t k = space.orders().size();
    std::uint64_t id = 0;
    for (const auto& w : p.orders()) {
        const int idx = canonical_index(space.cls, w);
        if (idx < 0) throw ClassificationError("profile component " + to_ranking(w) + " is not " + to_string(space.cls));
        id = id * k + static_cast<std::uint64_t>(idx);
    }
    return id;
}

/// Every profile of the space, in id order.
inline std::vector<Profile> enumerate_profiles(const ProfileSpace& space, std::uint64_t cap = 1u << 22) {
    space.validate();
    const std::uint64_t total = space.size();
    if (total > cap) throw CapExceeded("profile space " + space.describe() + " too large to materialize", total, cap);
    std::vector<Profile> out;
    out.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t id = 0; id < total; ++id) out.push_back(profile_at(space, id));
    return out;
}

inline std::string to_string(const Profile& p) {
    std::string out;
    for (int i = 0; i < p.voters(); ++i) {
        if (i) out += ';';
        out += to_ranking(p.voter(i));
    }
    return out;
}

/// Parse "a>b>c;c>b>a". Without an explicit class the tag is linear when
/// every component is linear.
inline Profile parse_profile(std::string_view text, const OrderClass* cls = nullptr) {
    std::vector<WeakOrder> comps;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(';', start);
        const std::string_view part = text.substr(start, end == std::string_view::npos ? end : end - start);
        comps.push_back(parse_ranking(part, comps.empty() ? -1 : comps.front().size()));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    OrderClass tag = OrderClass::Linear;
    if (cls) {
        tag = *cls;
    } else {
        for (const auto& w : comps)
            if (!w.is_linear()) tag = OrderClass::Weak;
    }
    return Profile(std::move(comps), tag);
}

inline Profile parse_profile(std::string_view text, OrderClass cls) { return parse_profile(text, &cls); }

// ---- pair restrictions

enum class PairVerdict : std::uint8_t { XOverY = 0, YOverX = 1, Indifferent = 2 };

inline PairVerdict pair_verdict(const WeakOrder& w, int x, int y) {
    if (w.strictly_prefers(x, y)) return PairVerdict::XOverY;
    if (w.strictly_prefers(y, x)) return PairVerdict::YOverX;
    return PairVerdict::Indifferent;
}

struct PairRestriction {
    Alternative x;
    Alternative y;
    std::vector<PairVerdict> verdicts;  // one per voter

    friend bool operator==(const PairRestriction&, const PairRestriction&) = default;
};

inline PairRestriction restrict_to_pair(const Profile& p, Alternative x, Alternative y) {
    if (x == y) throw UsageError("pair restriction needs two distinct alternatives");
    if (x.index < 0 || y.index < 0 || x.index >= p.alts() || y.index >= p.alts())
        throw UsageError("pair restriction outside the universe");
    PairRestriction r{x, y, {}};
    r.verdicts.reserve(static_cast<std::size_t>(p.voters()));
    for (const auto& w : p.orders()) r.verdicts.push_back(pair_verdict(w, x.index, y.index));
    return r;
}

/// Base-3 code of a profile's verdicts on (x,y), voter 1 most significant.
inline std::uint32_t pair_pattern_code(const Profile& p, int x, int y) {
    std::uint32_t code = 0;
    for (const auto& w : p.orders()) code = code * 3 + static_cast<std::uint32_t>(pair_verdict(w, x, y));
    return code;
}

inline bool profiles_agree_on_pair(const Profile& p1, const Profile& p2, Alternative x, Alternative y) {
    if (p1.voters() != p2.voters() || p1.alts() != p2.alts() || p1.order_class() != p2.order_class())
        throw UsageError("profiles belong to different spaces");
    return restrict_to_pair(p1, x, y) == restrict_to_pair(p2, x, y);
}

/// Unordered pairs x < y in canonical order (ab, ac, ..., bc, ...).
inline std::vector<std::pair<int, int>> unordered_pairs(int m) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y) out.emplace_back(x, y);
    return out;
}

/// Voter sets as bit masks; bit i is voter i + 1 in display form.
class VoterSet {
  public:
    constexpr VoterSet() = default;
    constexpr explicit VoterSet(std::uint32_t bits) : bits_(bits) {}

    static VoterSet all(int n) { return VoterSet((1u << n) - 1u); }
    static VoterSet single(int i) { return VoterSet(1u << i); }

    bool contains(int i) const { return (bits_ >> i) & 1u; }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::uint32_t bits() const { return bits_; }
    std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    /// "{1,2}" with 1-based voter numbers.
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i : members()) {
            if (!first) out += ',';
            first = false;
            out += std::to_string(i + 1);
        }
        return out + "}";
    }

    friend bool operator==(VoterSet, VoterSet) = default;
    friend auto operator<=>(VoterSet, VoterSet) = default;

  private:
    std::uint32_t bits_ = 0;
};

}  // namespace scs

#endif  // SCS_PROFILES_HPP_
