#ifndef SCS_CERTIFICATE_HPP_
#define SCS_CERTIFICATE_HPP_

// Certificate documents. Layout:
//
//   certificate scs/1
//   [claim: ...] [expect: ...] [flag: ...]
//   query: kind=... premises=... conclusion=... rights=... social=...
//   space: alts=3 voters=2 class=linear
//   semantics: instance|schema|schema+iia|rights
//   verdict: ...
//   detail: <key> <value>            (zero or more)
//   witness: instance <profile> => <ranking>
//   witness: profile <profile>
//   witness: rule <role>             followed by the rule file indented two spaces
//   witness: trace                   followed by indented step lines
//   stats: instances=N branches=N
//   version: scs 1.0.0
//   wall-ms: 1.234
//   digest: fnv1a64:<16 hex digits>
//   end
//
// Everything up to and including `version:` is the canonical body; the
// digest covers exactly those bytes. wall-ms is volatile and not hashed.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "scs/engine.hpp"
#include "scs/error.hpp"
#include "scs/rule_io.hpp"

namespace scs {

inline constexpr std::string_view kCertificateHeader = "certificate scs/1";

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace detail {

inline std::string format_trace(const DecisivenessTrace& t, std::string_view indent) {
    std::string out;
    auto line = [&](const std::string& s) {
        out.append(indent);
        out += s;
        out += '\n';
    };
    for (const auto& s : t.steps) {
        std::string l = "step " + to_string(s.tag) + " group=" + s.group.to_string();
        if (s.tag == TraceTag::GroupContraction) {
            l += " split=" + s.split_e.to_string() + "|" + s.split_f.to_string();
            l += std::string(" triple=") + Alternative(s.triple[0]).name() + "," + Alternative(s.triple[1]).name() +
                 "," + Alternative(s.triple[2]).name();
            l += " profile=" + to_string(*s.profile);
        }
        if (s.tag != TraceTag::ParetoSeed) l += " pair=" + pair_name(s.pair);
        l += std::string(" verified=") + (s.verified ? "yes" : "no");
        line(l);
        for (const auto& d : s.derivations)
            line("derive from=" + pair_name(d.from) + " to=" + pair_name(d.to) + " profile=" + to_string(d.profile));
    }
    line("dictator " + std::to_string(t.dictator + 1));
    return out;
}

}  // namespace detail

inline std::string format_body(const Certificate& c) {
    std::string out;
    auto line = [&](const std::string& s) {
        out += s;
        out += '\n';
    };
    line(std::string(kCertificateHeader));
    if (!c.claim.empty()) line("claim: " + c.claim);
    if (!c.expect.empty()) line("expect: " + c.expect);
    if (!c.flag.empty()) line("flag: " + c.flag);
    const Query& q = c.query;
    line("query: kind=" + to_string(q.kind) + " premises=" + to_token_list(q.premises) +
         " conclusion=" + (q.conclusion ? to_token(*q.conclusion) : std::string("-")) +
         " rights=" + (q.rights ? q.rights->to_string() : std::string("-")) + " social=" + to_string(q.social));
    line("space: " + q.space.describe());
    line("semantics: " + q.semantics());
    line("verdict: " + to_string(c.verdict));
    for (const auto& [k, v] : c.details) line("detail: " + k + " " + v);
    for (const auto& w : c.witnesses) {
        if (const auto* i = std::get_if<InstanceWitness>(&w)) {
            line("witness: instance " + to_string(i->profile) + " => " + to_ranking(i->social));
        } else if (const auto* p = std::get_if<ProfileWitness>(&w)) {
            line("witness: profile " + to_string(p->profile));
        } else if (const auto* r = std::get_if<RuleWitness>(&w)) {
            line("witness: rule " + r->role);
            out += format_rule(r->rule, "  ");
        } else if (const auto* t = std::get_if<TraceWitness>(&w)) {
            line("witness: trace");
            out += detail::format_trace(t->trace, "  ");
        }
    }
    line("stats: instances=" + std::to_string(c.stats.instances) + " branches=" + std::to_string(c.stats.branches));
    line("version: " + c.version);
    return out;
}

inline std::string format_certificate(const Certificate& c) {
    const std::string body = format_body(c);
    char wall[64];
    std::snprintf(wall, sizeof wall, "%.3f", c.stats.wall_ms);
    return body + "wall-ms: " + wall + "\ndigest: fnv1a64:" + hex64(fnv1a64(body)) + "\nend\n";
}

inline std::string format_certificates(const std::vector<Certificate>& cs) {
    std::string out;
    for (const auto& c : cs) out += format_certificate(c);
    return out;
}

/// A certificate read back from text, with the exact body bytes and the
/// digest it claimed.
struct ParsedCertificate {
    Certificate cert;
    std::string body;
    std::string digest;
    std::size_t first_line = 0;
};

namespace detail {

inline std::string_view after(std::string_view line, std::string_view prefix, std::size_t lineno) {
    if (!line.starts_with(prefix))
        throw ParseError(lineno, "expected '" + std::string(prefix) + "'");
    return line.substr(prefix.size());
}

inline std::vector<std::pair<std::string, std::string>> key_values(std::string_view text, std::size_t lineno) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view tok = text.substr(pos, end - pos);
        const std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, "expected key=value, got '" + std::string(tok) + "'");
        out.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
        pos = end + 1;
    }
    return out;
}

inline const std::string& lookup(const std::vector<std::pair<std::string, std::string>>& kv, std::string_view key,
                                  std::size_t lineno) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    throw ParseError(lineno, "missing field '" + std::string(key) + "'");
}

inline OrderedPair parse_pair_name(std::string_view s, std::size_t lineno) {
    if (s.size() != 3 || s[1] != ',') throw ParseError(lineno, "bad pair '" + std::string(s) + "'");
    return {s[0] - 'a', s[2] - 'a'};
}

inline VoterSet parse_voter_set(std::string_view s, std::size_t lineno) {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError(lineno, "bad voter set");
    s = s.substr(1, s.size() - 2);
    VoterSet g;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find(',', pos);
        if (end == std::string_view::npos) end = s.size();
        int v = 0;
        for (char c : s.substr(pos, end - pos)) {
            if (c < '0' || c > '9') throw ParseError(lineno, "bad voter number");
            v = v * 10 + (c - '0');
        }
        if (v < 1 || v > kMaxVoters) throw ParseError(lineno, "voter out of range");
        g = VoterSet(g.bits() | (1u << (v - 1)));
        pos = end + 1;
    }
    return g;
}

inline DecisivenessTrace parse_trace(const std::vector<std::string>& lines, std::size_t first_line,
                                     const ProfileSpace& space) {
    DecisivenessTrace t;
    bool have_dictator = false;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const std::size_t lineno = first_line + k;
        const std::string_view l = lines[k];
        try {
            if (l.starts_with("step ")) {
                const std::size_t sp = l.find(' ', 5);
                TraceStep s;
                const std::string_view tag = l.substr(5, sp - 5);
                if (tag == "PARETO_SEED") s.tag = TraceTag::ParetoSeed;
                else if (tag == "GROUP_CONTRACTION") s.tag = TraceTag::GroupContraction;
                else if (tag == "FIELD_EXPANSION") s.tag = TraceTag::FieldExpansion;
                else throw ParseError(lineno, "unknown trace tag '" + std::string(tag) + "'");
                const auto kv = key_values(l.substr(sp + 1), lineno);
                s.group = parse_voter_set(lookup(kv, "group", lineno), lineno);
                s.verified = lookup(kv, "verified", lineno) == "yes";
                if (s.tag != TraceTag::ParetoSeed) s.pair = parse_pair_name(lookup(kv, "pair", lineno), lineno);
                if (s.tag == TraceTag::GroupContraction) {
                    const std::string& split = lookup(kv, "split", lineno);
                    const std::size_t bar = split.find('|');
                    if (bar == std::string::npos) throw ParseError(lineno, "bad split");
                    s.split_e = parse_voter_set(std::string_view(split).substr(0, bar), lineno);
                    s.split_f = parse_voter_set(std::string_view(split).substr(bar + 1), lineno);
                    const std::string& tri = lookup(kv, "triple", lineno);
                    if (tri.size() != 5) throw ParseError(lineno, "bad triple");
                    s.triple = {tri[0] - 'a', tri[2] - 'a', tri[4] - 'a'};
                    s.profile = parse_profile(lookup(kv, "profile", lineno), space.cls);
                }
                t.steps.push_back(std::move(s));
            } else if (l.starts_with("derive ")) {
                if (t.steps.empty()) throw ParseError(lineno, "derive line before any step");
                const auto kv = key_values(l.substr(7), lineno);
                t.steps.back().derivations.push_back({parse_pair_name(lookup(kv, "from", lineno), lineno),
                                                      parse_pair_name(lookup(kv, "to", lineno), lineno),
                                                      parse_profile(lookup(kv, "profile", lineno), space.cls)});
            } else if (l.starts_with("dictator ")) {
                t.dictator = std::stoi(std::string(l.substr(9))) - 1;
                have_dictator = true;
            } else {
                throw ParseError(lineno, "unexpected trace line");
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(lineno, e.what());
        } catch (const std::logic_error&) {
            throw ParseError(lineno, "bad number in trace");
        }
    }
    if (!have_dictator) throw ParseError(first_line + lines.size(), "trace without a dictator line");
    return t;
}

}  // namespace detail

/// Parse every certificate in a document.
inline std::vector<ParsedCertificate> parse_certificates(std::string_view text) {
    const auto lines = split_lines(text);
    std::vector<ParsedCertificate> out;
    std::size_t k = 0;
    auto lineno = [&] { return k + 1; };
    while (k < lines.size()) {
        if (lines[k].empty()) {
            ++k;
            continue;
        }
        if (lines[k] != kCertificateHeader) throw ParseError(lineno(), "expected '" + std::string(kCertificateHeader) + "'");
        ParsedCertificate pc;
        pc.first_line = lineno();
        Certificate& c = pc.cert;
        auto take_body = [&] {
            pc.body += lines[k];
            pc.body += '\n';
            ++k;
        };
        take_body();
        auto need = [&] {
            if (k >= lines.size()) throw ParseError(lineno(), "certificate truncated");
        };
        try {
            need();
            if (lines[k].starts_with("claim: ")) c.claim = lines[k].substr(7), take_body(), need();
            if (lines[k].starts_with("expect: ")) c.expect = lines[k].substr(8), take_body(), need();
            if (lines[k].starts_with("flag: ")) c.flag = lines[k].substr(6), take_body(), need();

            const auto qkv = detail::key_values(detail::after(lines[k], "query: ", lineno()), lineno());
            c.query.kind = parse_query_kind(detail::lookup(qkv, "kind", lineno()));
            const std::string& prem = detail::lookup(qkv, "premises", lineno());
            if (prem != "-") c.query.premises = parse_axiom_list(prem);
            const std::string& concl = detail::lookup(qkv, "conclusion", lineno());
            if (concl != "-") c.query.conclusion = parse_axiom(concl);
            const std::string& rights = detail::lookup(qkv, "rights", lineno());
            if (rights != "-") c.query.rights = parse_rights(rights);
            c.query.social = parse_order_class(detail::lookup(qkv, "social", lineno()));
            take_body(), need();

            const auto skv = detail::key_values(detail::after(lines[k], "space: ", lineno()), lineno());
            c.query.space.alts = std::stoi(detail::lookup(skv, "alts", lineno()));
            c.query.space.voters = std::stoi(detail::lookup(skv, "voters", lineno()));
            c.query.space.cls = parse_order_class(detail::lookup(skv, "class", lineno()));
            c.query.space.validate();
            take_body(), need();

            const std::string_view sem = detail::after(lines[k], "semantics: ", lineno());
            if (sem != c.query.semantics()) throw ParseError(lineno(), "semantics do not match the query kind");
            take_body(), need();
            c.verdict = parse_verdict(detail::after(lines[k], "verdict: ", lineno()));
            take_body(), need();

            while (lines[k].starts_with("detail: ")) {
                const std::string_view rest = std::string_view(lines[k]).substr(8);
                const std::size_t sp = rest.find(' ');
                if (sp == std::string_view::npos) throw ParseError(lineno(), "detail needs a key and a value");
                c.details.emplace_back(std::string(rest.substr(0, sp)), std::string(rest.substr(sp + 1)));
                take_body(), need();
            }
            while (lines[k].starts_with("witness: ")) {
                const std::string_view rest = std::string_view(lines[k]).substr(9);
                const std::size_t head_line = lineno();
                take_body(), need();
                std::vector<std::string> block;
                const std::size_t block_first = lineno();
                while (k < lines.size() && lines[k].starts_with("  ")) {
                    block.push_back(lines[k].substr(2));
                    take_body();
                }
                need();
                // One-line witnesses report errors at their own line, not the next.
                auto at_head = [&](auto parse) {
                    try {
                        return parse();
                    } catch (const ParseError& e) {
                        if (e.line() != 0) throw;
                        throw ParseError(head_line, e.what());
                    } catch (const Error& e) {
                        throw ParseError(head_line, e.what());
                    }
                };
                if (rest.starts_with("instance ")) {
                    const std::string_view inst = rest.substr(9);
                    const std::size_t arrow = inst.find(" => ");
                    if (arrow == std::string_view::npos) throw ParseError(head_line, "instance witness needs ' => '");
                    c.witnesses.push_back(at_head([&] {
                        return InstanceWitness{parse_profile(inst.substr(0, arrow), c.query.space.cls),
                                               parse_ranking(inst.substr(arrow + 4), c.query.space.alts)};
                    }));
                } else if (rest.starts_with("profile ")) {
                    c.witnesses.push_back(
                        at_head([&] { return ProfileWitness{parse_profile(rest.substr(8), c.query.space.cls)}; }));
                } else if (rest.starts_with("rule ")) {
                    c.witnesses.push_back(
                        RuleWitness{std::string(rest.substr(5)), parse_rule_lines(block, block_first, "certificate")});
                } else if (rest == "trace") {
                    c.witnesses.push_back(TraceWitness{detail::parse_trace(block, block_first, c.query.space)});
                } else {
                    throw ParseError(head_line, "unknown witness kind");
                }
            }

            const auto stkv = detail::key_values(detail::after(lines[k], "stats: ", lineno()), lineno());
            c.stats.instances = std::stoull(detail::lookup(stkv, "instances", lineno()));
            c.stats.branches = std::stoull(detail::lookup(stkv, "branches", lineno()));
            take_body(), need();
            c.version = detail::after(lines[k], "version: ", lineno());
            take_body(), need();
            c.stats.wall_ms = std::stod(std::string(detail::after(lines[k], "wall-ms: ", lineno())));
            ++k, need();
            pc.digest = detail::after(lines[k], "digest: ", lineno());
            ++k, need();
            if (lines[k] != "end") throw ParseError(lineno(), "expected 'end'");
            ++k;
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(lineno(), e.what());
        } catch (const ClassificationError& e) {
            throw ParseError(lineno(), e.what());
        } catch (const std::logic_error&) {
            throw ParseError(lineno(), "bad number");
        } catch (const UsageError& e) {
            throw ParseError(lineno(), e.what());
        }
        out.push_back(std::move(pc));
    }
    if (out.empty()) throw ParseError(0, "no certificate found");
    return out;
}

}  // namespace scs

#endif  // SCS_CERTIFICATE_HPP_
