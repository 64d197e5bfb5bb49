#ifndef SCS_CLI_HPP_
#define SCS_CLI_HPP_

// `scs` command line. Exit status: 0 query answered (whatever the verdict),
// 1 usage or parse error, 2 refused by caps, 3 certificate verification
// failure.

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scs/certificate.hpp"
#include "scs/engine.hpp"
#include "scs/error.hpp"
#include "scs/rule_io.hpp"
#include "scs/verify.hpp"

namespace scs::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCapRefused = 2, kVerifyFailed = 3 };

namespace detail {

struct SpaceFlags {
    int alts = 3;
    int voters = 2;
    std::string cls = "linear";
    std::string social = "weak";

    void add(CLI::App* app, bool with_social = true, const char* class_flag = "--class") {
        app->add_option("--alts", alts, "number of alternatives")->capture_default_str();
        app->add_option("--voters", voters, "number of voters")->capture_default_str();
        app->add_option(class_flag, cls, "individual preference class (linear|weak)")->capture_default_str();
        if (with_social) app->add_option("--social", social, "social order range (weak|linear)")->capture_default_str();
    }

    ProfileSpace space() const { return ProfileSpace{alts, voters, parse_order_class(cls)}; }
    OrderClass social_class() const { return parse_order_class(social); }
};

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) out << text;
    else write_file(path, text);
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-model checker for simplified Arrow-Sen social choice axioms", "scs"};
    app.require_subcommand(1);
    int threads = 1;
    std::string output;
    app.add_option("--threads", threads, "worker threads for exhaustive scans")->check(CLI::Range(1, 64));

    auto* enumerate = app.add_subcommand("enumerate", "list the weak or linear orders of a universe");
    int enum_alts = 3;
    std::string enum_class = "linear";
    enumerate->add_option("--alts", enum_alts)->capture_default_str();
    enumerate->add_option("--class", enum_class, "linear|weak")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "evaluate one axiom at one instance");
    std::string eval_axiom, eval_profile, eval_social, eval_class;
    eval->add_option("--axiom", eval_axiom)->required();
    eval->add_option("--profile", eval_profile)->required();
    eval->add_option("--social", eval_social)->required();
    eval->add_option("--class", eval_class, "profile class tag (inferred when absent)");

    auto* entails = app.add_subcommand("entails", "decide whether premises entail a conclusion");
    detail::SpaceFlags entails_space;
    std::string level = "instance", premises, conclusion;
    bool iia = false;
    entails_space.add(entails);
    entails->add_option("--level", level, "instance|schema")->capture_default_str();
    entails->add_flag("--iia", iia, "restrict schema-level rules to IIA");
    entails->add_option("--premises", premises, "comma-separated axiom tokens");
    entails->add_option("--conclusion", conclusion)->required();
    entails->add_option("-o,--output", output);

    auto* consistent = app.add_subcommand("consistent", "schema consistency without IIA");
    detail::SpaceFlags consistent_space;
    std::string axioms;
    consistent_space.add(consistent);
    consistent->add_option("--axioms", axioms)->required();
    consistent->add_option("-o,--output", output);

    auto* rights = app.add_subcommand("rights", "consistency of fixed liberal rights");
    detail::SpaceFlags rights_space;
    std::string assign, with;
    bool sweep = false;
    rights_space.add(rights);
    rights->add_option("--assign", assign, "e.g. \"1:{a,b};2:{b,c}\"");
    rights->add_option("--with", with, "extra axioms, e.g. SP");
    rights->add_flag("--sweep", sweep, "all two-voter assignments of distinct pairs");
    rights->add_option("-o,--output", output);

    auto* arrow = app.add_subcommand("arrow", "enumerate IIA rules satisfying axioms and check a conclusion");
    detail::SpaceFlags arrow_space;
    arrow_space.social = "linear";
    std::string arrow_axioms = "SP", arrow_conclusion = "SD";
    bool arrow_iia = true;
    arrow_space.add(arrow, true, "--individual");
    arrow->add_option("--axioms", arrow_axioms)->capture_default_str();
    arrow->add_option("--conclusion", arrow_conclusion, "axiom token, or 'none' for the bare rule set")
        ->capture_default_str();
    arrow->add_flag("--iia,!--no-iia", arrow_iia, "require IIA (default on)");
    arrow->add_option("-o,--output", output);

    auto* dictator = app.add_subcommand("dictator", "trace the dictator of an SP + IIA rule");
    std::string rule_path;
    dictator->add_option("--rule", rule_path)->required();
    dictator->add_option("-o,--output", output);

    auto* battery = app.add_subcommand("battery", "run the fixed theorem battery");
    battery->add_option("-o,--output", output);

    auto* verify = app.add_subcommand("verify", "re-check a certificate document");
    std::string cert_path;
    verify->add_option("--certificate", cert_path)->required();

    auto* rule = app.add_subcommand("rule", "write a named rule as a rule file");
    detail::SpaceFlags rule_space;
    std::string rule_kind = "dictator", rule_order;
    int rule_voter = 1;
    rule_space.add(rule, false);
    rule->add_option("--kind", rule_kind, "dictator|borda|constant|indifference")->capture_default_str();
    rule->add_option("--voter", rule_voter, "dictator voter (1-based)")->capture_default_str();
    rule->add_option("--order", rule_order, "ranking for --kind constant");
    rule->add_option("-o,--output", output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        Caps caps = Caps::from_env();
        caps.threads = threads;

        if (*enumerate) {
            for (const auto& w : orders_of_class(parse_order_class(enum_class), enum_alts)) out << to_ranking(w) << '\n';
        } else if (*eval) {
            std::optional<OrderClass> cls;
            if (!eval_class.empty()) cls = parse_order_class(eval_class);
            const Profile p = cls ? parse_profile(eval_profile, *cls) : parse_profile(eval_profile);
            const WeakOrder s = parse_ranking(eval_social, p.alts());
            const AxiomId ax = parse_axiom(eval_axiom);
            validate_axiom(ax, ProfileSpace{p.alts(), p.voters(), p.order_class()});
            out << to_token(ax) << ": " << (evaluate(ax, p, s) ? "true" : "false") << '\n';
        } else if (*entails) {
            const AxiomSet prem = parse_axiom_list(premises);
            const AxiomId concl = parse_axiom(conclusion);
            Certificate c;
            if (level == "instance") {
                if (iia) throw UsageError("--iia applies to --level schema only");
                c = instance_entails(entails_space.space(), prem, concl, entails_space.social_class(), caps);
            } else if (level == "schema") {
                c = iia ? schema_entails_iia(entails_space.space(), prem, concl, entails_space.social_class(), caps)
                        : schema_entails(entails_space.space(), prem, concl, entails_space.social_class(), caps);
            } else {
                throw UsageError("--level must be instance or schema");
            }
            detail::emit(format_certificate(c), output, out);
        } else if (*consistent) {
            const Certificate c =
                schema_consistent(consistent_space.space(), parse_axiom_list(axioms), consistent_space.social_class(), caps);
            detail::emit(format_certificate(c), output, out);
        } else if (*rights) {
            const AxiomSet extra = parse_axiom_list(with);
            if (sweep) {
                if (!assign.empty()) throw UsageError("--sweep and --assign are exclusive");
                detail::emit(format_certificates(rights_sweep(rights_space.space(), extra, rights_space.social_class(), caps)),
                             output, out);
            } else {
                if (assign.empty()) throw UsageError("rights needs --assign or --sweep");
                const Certificate c = rights_consistent(rights_space.space(), parse_rights(assign), extra,
                                                        rights_space.social_class(), caps);
                detail::emit(format_certificate(c), output, out);
            }
        } else if (*arrow) {
            const AxiomSet prem = parse_axiom_list(arrow_axioms);
            std::optional<AxiomId> concl;
            if (arrow_conclusion != "none") concl = parse_axiom(arrow_conclusion);
            Certificate c;
            if (arrow_iia) {
                c = schema_entails_iia(arrow_space.space(), prem, concl, arrow_space.social_class(), caps);
            } else {
                if (!concl) throw UsageError("--no-iia needs a conclusion");
                c = schema_entails(arrow_space.space(), prem, *concl, arrow_space.social_class(), caps);
            }
            detail::emit(format_certificate(c), output, out);
        } else if (*dictator) {
            detail::emit(format_certificate(dictator_certificate(load_rule(rule_path))), output, out);
        } else if (*battery) {
            detail::emit(format_certificates(theorem_suite(caps)), output, out);
        } else if (*verify) {
            const auto certs = parse_certificates(read_file(cert_path));
            bool all_ok = true;
            for (const auto& pc : certs) {
                const VerifyReport r = verify_certificate(pc, caps);
                const std::string label = pc.cert.claim.empty() ? to_string(pc.cert.query.kind) : pc.cert.claim;
                out << (r.ok() ? "OK   " : "FAIL ") << "line " << pc.first_line << ": " << label << " -> "
                    << to_string(pc.cert.verdict) << '\n';
                for (const auto& p : r.problems) out << "     " << p << '\n';
                all_ok = all_ok && r.ok();
            }
            out << certs.size() << " certificate(s), " << (all_ok ? "all verified" : "verification FAILED") << '\n';
            return all_ok ? kOk : kVerifyFailed;
        } else if (*rule) {
            const ProfileSpace space = rule_space.space();
            std::optional<AggregationRule> r;
            if (rule_kind == "dictator") r = dictatorship_rule(space, rule_voter - 1);
            else if (rule_kind == "borda") r = borda_rule(space);
            else if (rule_kind == "indifference") r = constant_indifference_rule(space);
            else if (rule_kind == "constant") {
                if (rule_order.empty()) throw UsageError("--kind constant needs --order");
                r = constant_rule(space, parse_ranking(rule_order, space.alts));
            } else {
                throw UsageError("unknown rule kind '" + rule_kind + "'");
            }
            detail::emit(format_rule(*r), output, out);
        }
    } catch (const CapExceeded& e) {
        err << "scs: refused: " << e.what() << '\n';
        return kCapRefused;
    } catch (const InternalConsistencyError& e) {
        err << "scs: internal consistency failure: " << e.what() << '\n';
        return kVerifyFailed;
    } catch (const Error& e) {
        err << "scs: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace scs::cli

#endif  // SCS_CLI_HPP_
