#ifndef SCS_RULE_IO_HPP_
#define SCS_RULE_IO_HPP_

// Rule files:
//
//   alts: 3
//   voters: 2
//   class: linear
//   name: dictator-1
//   a>b>c;a>b>c -> a>b>c
//   ...
//
// one line per profile, profiles in canonical id order, LF line endings.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scs/error.hpp"
#include "scs/profiles.hpp"
#include "scs/rules.hpp"

namespace scs {

inline std::string format_rule(const AggregationRule& rule, std::string_view indent = {}) {
    const auto& space = rule.space();
    std::string out;
    auto line = [&](const std::string& s) {
        out.append(indent);
        out += s;
        out += '\n';
    };
    line("alts: " + std::to_string(space.alts));
    line("voters: " + std::to_string(space.voters));
    line("class: " + to_string(space.cls));
    line("name: " + rule.name());
    for (std::uint64_t id = 0; id < rule.size(); ++id)
        line(to_string(profile_at(space, id)) + " -> " + to_ranking(rule.at(id)));
    return out;
}

namespace detail {

inline int parse_small_int(std::string_view s, std::size_t line, const char* field) {
    if (s.empty() || s.size() > 3) throw ParseError(line, std::string("bad integer for ") + field);
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError(line, std::string("bad integer for ") + field);
        v = v * 10 + (c - '0');
    }
    return v;
}

inline std::string_view header_value(std::string_view text, std::string_view key, std::size_t line) {
    const std::string prefix = std::string(key) + ": ";
    if (!text.starts_with(prefix)) throw ParseError(line, "expected header field '" + std::string(key) + "'");
    return text.substr(prefix.size());
}

}  // namespace detail

/// Parse rule lines; `first_line` is the 1-based number of lines[0] for
/// diagnostics.
inline AggregationRule parse_rule_lines(const std::vector<std::string>& lines, std::size_t first_line = 1,
                                        std::string provenance = {}) {
    if (lines.size() < 4)
        throw ParseError(first_line + lines.size(), "rule header needs alts, voters, class and name");
    ProfileSpace space;
    space.alts = detail::parse_small_int(detail::header_value(lines[0], "alts", first_line), first_line, "alts");
    space.voters =
        detail::parse_small_int(detail::header_value(lines[1], "voters", first_line + 1), first_line + 1, "voters");
    try {
        space.cls = parse_order_class(detail::header_value(lines[2], "class", first_line + 2));
        space.validate();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(first_line + 2, e.what());
    }
    const std::string name(detail::header_value(lines[3], "name", first_line + 3));

    const std::uint64_t total = space.size();
    std::vector<WeakOrder> table;
    table.reserve(static_cast<std::size_t>(total));
    for (std::size_t k = 4; k < lines.size(); ++k) {
        const std::size_t lineno = first_line + k;
        const std::string_view text = lines[k];
        const std::size_t arrow = text.find(" -> ");
        if (arrow == std::string_view::npos) throw ParseError(lineno, "expected '<profile> -> <ranking>'");
        const std::uint64_t expected = table.size();
        if (expected >= total) throw ParseError(lineno, "more entries than the space has profiles");
        try {
            const Profile p = parse_profile(text.substr(0, arrow), space.cls);
            if (p.voters() != space.voters || p.alts() != space.alts)
                throw ParseError(lineno, "profile does not belong to space " + space.describe());
            const std::uint64_t id = profile_id(space, p);
            if (id > expected)
                throw ParseError(lineno, "missing profile id " + std::to_string(expected) + " (" +
                                             to_string(profile_at(space, expected)) + ")");
            if (id < expected)
                throw ParseError(lineno, "profile id " + std::to_string(id) + " out of order or repeated");
            table.push_back(parse_ranking(text.substr(arrow + 4), space.alts));
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(lineno, e.what());
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (table.size() < total)
        throw ParseError(first_line + lines.size(), "missing profile id " + std::to_string(table.size()) + " (" +
                                                        to_string(profile_at(space, table.size())) + ")");
    return AggregationRule(space, std::move(table), name, std::move(provenance));
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

inline AggregationRule parse_rule(std::string_view text, std::string provenance = {}) {
    return parse_rule_lines(split_lines(text), 1, std::move(provenance));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

inline AggregationRule load_rule(const std::string& path) { return parse_rule(read_file(path), "file:" + path); }

inline void save_rule(const AggregationRule& rule, const std::string& path) { write_file(path, format_rule(rule)); }

}  // namespace scs

#endif  // SCS_RULE_IO_HPP_
