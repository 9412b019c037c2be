#pragma once

// Command-line surface. One subcommand per procedure; `--json` switches
// the rendering; exit codes are 0 (success), 1 (domain error), and
// 2 (usage error). State lives in a session file that state-changing
// commands update; `--session PATH` or CREDENCE_SESSION selects it.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "credence/coherence.hpp"
#include "credence/corpus.hpp"
#include "credence/session.hpp"
#include "credence/statinf.hpp"
#include "credence/updating.hpp"

namespace credence {

struct RunResult {
    int exit_code = 0;
    std::string output; // stdout payload (text or JSON document)
    std::string error;  // stderr payload when exit_code != 0
    Session session;
    bool mutated = false;
};

namespace cli_detail {

inline std::vector<std::string> split_list(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, sep)) {
        std::size_t begin = field.find_first_not_of(" \t");
        std::size_t end = field.find_last_not_of(" \t");
        out.push_back(begin == std::string::npos ? std::string()
                                                 : field.substr(begin, end - begin + 1));
    }
    return out;
}

inline std::vector<Rational> parse_weight_list(const std::string& text) {
    std::vector<Rational> out;
    for (const std::string& field : split_list(text)) out.push_back(parse_rational(field));
    return out;
}

// Numeric CLI inputs accept fractions and decimals alike.
inline double parse_real(const std::string& text) { return to_double(parse_rational(text)); }

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline std::string atom_list_preview(const WorldSpace& space, std::size_t limit = 12) {
    std::string out;
    std::size_t n = std::min(space.size(), limit);
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ", ";
        out += space.label(i);
    }
    if (space.size() > limit) out += ", ...";
    return out;
}

inline std::string interval_text(const ProbabilityInterval& iv) {
    if (iv.is_degenerate()) return to_fraction(iv.lower);
    return "[" + to_fraction(iv.lower) + ", " + to_fraction(iv.upper) + "]";
}

} // namespace cli_detail

inline RunResult run_command(const std::vector<std::string>& argv_tokens, Session session,
                             bool json_default = false) {
    using cli_detail::fmt;
    using cli_detail::parse_real;

    RunResult result;
    bool json_out = json_default;
    std::string text;
    Json doc = Json::object();

    CLI::App app{"credence: probabilistic reasoning and acceptance at desk scale"};
    app.require_subcommand(1);
    app.add_flag("--json", json_out, "render output as JSON");
    app.footer("State persists in a session file chosen by --session PATH or the\n"
               "CREDENCE_SESSION environment variable (default: credence_session.json).");

    // ---- space ----------------------------------------------------------
    std::string labels_arg;
    auto* space_cmd = app.add_subcommand("space", "define a world space from atom labels");
    space_cmd->add_option("--labels", labels_arg, "comma-separated atom labels")->required();
    space_cmd->callback([&] {
        SpacePtr sp = make_space(cli_detail::split_list(labels_arg));
        Session fresh;
        fresh.space = sp;
        fresh.history = std::move(session.history);
        session = std::move(fresh);
        result.mutated = true;
        text = "space with " + std::to_string(sp->size()) +
               " atoms: " + cli_detail::atom_list_preview(*sp);
        doc = space_to_json(*sp);
    });

    // ---- dist -----------------------------------------------------------
    std::string weights_arg;
    auto* dist_cmd = app.add_subcommand("dist", "set the evidence to a single distribution");
    dist_cmd->add_option("--weights", weights_arg, "comma-separated atom weights (rationals)")
        ->required();
    dist_cmd->callback([&] {
        Distribution d(session.require_space(), cli_detail::parse_weight_list(weights_arg));
        session.credal = CredalSet::singleton(std::move(d));
        result.mutated = true;
        text = "credal set of 1 generator over " + std::to_string(session.space->size()) +
               " atoms";
        doc = credal_to_json(*session.credal);
    });

    // ---- credal ---------------------------------------------------------
    std::vector<std::string> point_args;
    auto* credal_cmd = app.add_subcommand("credal", "set the evidence to a generator list");
    credal_cmd->add_option("--point", point_args, "generator weights (repeatable)")
        ->required()
        ->take_all();
    credal_cmd->callback([&] {
        std::vector<Distribution> generators;
        for (const std::string& p : point_args)
            generators.emplace_back(session.require_space(), cli_detail::parse_weight_list(p));
        session.credal = CredalSet(std::move(generators));
        result.mutated = true;
        text = "credal set of " + std::to_string(session.credal->size()) + " generators over " +
               std::to_string(session.space->size()) + " atoms";
        doc = credal_to_json(*session.credal);
    });

    // ---- prob -----------------------------------------------------------
    std::string prob_formula;
    auto* prob_cmd = app.add_subcommand("prob", "interval probability of a formula");
    prob_cmd->add_option("formula", prob_formula, "proposition to evaluate")->required();
    prob_cmd->callback([&] {
        Proposition p = session.parse(prob_formula);
        ProbabilityInterval iv = prob_interval(session.require_credal(), p);
        text = "probability of " + prob_formula + ": " + cli_detail::interval_text(iv);
        doc = Json{{"formula", prob_formula},
                   {"lower", to_fraction(iv.lower)},
                   {"upper", to_fraction(iv.upper)}};
    });

    // ---- condition ------------------------------------------------------
    std::string evidence_formula;
    auto* condition_cmd = app.add_subcommand("condition", "condition the evidence on a formula");
    condition_cmd->add_option("--evidence", evidence_formula, "evidence formula")->required();
    condition_cmd->callback([&] {
        Proposition e = session.parse(evidence_formula);
        CredalSet updated = credal_condition(session.require_credal(), e);
        std::size_t dropped = updated.dropped_generators();
        session.credal = std::move(updated);
        result.mutated = true;
        text = "conditioned on " + evidence_formula;
        if (dropped > 0)
            text += " (dropped " + std::to_string(dropped) + " zero-probability generators)";
        doc = Json{{"credal", credal_to_json(*session.credal)}, {"dropped", dropped}};
    });

    // ---- jeffrey --------------------------------------------------------
    std::string jeffrey_formula, jeffrey_new_prob;
    auto* jeffrey_cmd =
        app.add_subcommand("jeffrey", "shift the probability of a formula to a new value");
    jeffrey_cmd->add_option("--evidence", jeffrey_formula, "evidence formula")->required();
    jeffrey_cmd->add_option("--new-prob", jeffrey_new_prob, "shifted probability (rational)")
        ->required();
    jeffrey_cmd->callback([&] {
        Proposition e = session.parse(jeffrey_formula);
        Rational new_pe = parse_rational(jeffrey_new_prob);
        CredalSet updated = credal_jeffrey(session.require_credal(), e, new_pe);
        std::size_t dropped = updated.dropped_generators();
        session.credal = std::move(updated);
        result.mutated = true;
        text = "shifted P(" + jeffrey_formula + ") to " + to_fraction(new_pe);
        if (dropped > 0)
            text += " (dropped " + std::to_string(dropped) + " generators)";
        doc = Json{{"credal", credal_to_json(*session.credal)}, {"dropped", dropped}};
    });

    // ---- coherence ------------------------------------------------------
    std::vector<std::string> bet_args;
    auto* coherence_cmd =
        app.add_subcommand("coherence", "check betting quotients for a Dutch book");
    coherence_cmd->add_option("--bet", bet_args, "entry of the form FORMULA=QUOTIENT (repeatable)")
        ->required()
        ->take_all();
    coherence_cmd->callback([&] {
        std::vector<BetEntry> entries;
        for (const std::string& raw : bet_args) {
            auto eq = raw.rfind('=');
            if (eq == std::string::npos)
                throw UsageError("bet entry '" + raw + "' is not of the form FORMULA=QUOTIENT");
            entries.push_back(BetEntry{session.parse(raw.substr(0, eq)),
                                       parse_rational(raw.substr(eq + 1))});
        }
        BettingQuotients quotients(session.require_space(), std::move(entries));
        CoherenceVerdict verdict = coherence_check(quotients);
        if (const auto* ok = std::get_if<CoherentVerdict>(&verdict)) {
            text = "Coherent; witness weights: ";
            for (std::size_t i = 0; i < std::min<std::size_t>(ok->witness.weights().size(), 12);
                 ++i)
                text += (i ? ", " : "") + to_fraction(ok->witness.weight(i));
            if (ok->witness.weights().size() > 12) text += ", ...";
            doc = Json{{"verdict", "Coherent"}, {"witness", distribution_to_json(ok->witness)}};
        } else {
            const auto& book = std::get<DutchBookVerdict>(verdict);
            text = "DutchBook; stakes: ";
            Json stakes = Json::array();
            for (std::size_t i = 0; i < book.stakes.size(); ++i) {
                text += (i ? ", " : "") + to_fraction(book.stakes[i]);
                stakes.push_back(to_fraction(book.stakes[i]));
            }
            text += "; guaranteed loss " + to_fraction(book.guaranteed_loss) + " in every atom";
            doc = Json{{"verdict", "DutchBook"},
                       {"stakes", std::move(stakes)},
                       {"guaranteed_loss", to_fraction(book.guaranteed_loss)}};
        }
    });

    // ---- tinterval ------------------------------------------------------
    std::string tvalues_arg, tcsv_arg, tlevel_arg = "0.95";
    auto* tinterval_cmd = app.add_subcommand("tinterval", "Student-t interval for a normal mean");
    auto* tvals_opt =
        tinterval_cmd->add_option("--values", tvalues_arg, "comma-separated sample values");
    tinterval_cmd->add_option("--csv", tcsv_arg, "CSV file, one value per line")
        ->excludes(tvals_opt);
    tinterval_cmd->add_option("--level", tlevel_arg, "confidence level (default 0.95)");
    tinterval_cmd->callback([&] {
        std::vector<double> values;
        if (!tvalues_arg.empty()) {
            for (const std::string& f : cli_detail::split_list(tvalues_arg))
                values.push_back(parse_real(f));
        } else if (!tcsv_arg.empty()) {
            std::ifstream in(tcsv_arg);
            if (!in) throw DomainError("cannot open '" + tcsv_arg + "'");
            values = read_real_sample(in).values;
        } else {
            throw UsageError("tinterval needs --values or --csv");
        }
        RealSample sample(std::move(values));
        ConfidenceSpec level(parse_real(tlevel_arg));
        RealInterval iv = t_interval(sample, level);
        text = "mean interval at level " + tlevel_arg + ": [" + fmt(iv.lower) + ", " +
               fmt(iv.upper) + "]";
        doc = Json{{"n", sample.count()}, {"mean", sample.mean()},   {"sd", sample.sd()},
                   {"level", level.level}, {"lower", iv.lower},      {"upper", iv.upper}};
    });

    // ---- binci ----------------------------------------------------------
    std::int64_t bn = 0, bk = 0;
    std::string bcsv_arg, blevel_arg = "0.95";
    auto* binci_cmd = app.add_subcommand("binci", "exact binomial confidence interval");
    auto* bn_opt = binci_cmd->add_option("--n", bn, "trial count");
    auto* bk_opt = binci_cmd->add_option("--k", bk, "success count");
    binci_cmd->add_option("--csv", bcsv_arg, "CSV file with one 'n,k' line")
        ->excludes(bn_opt)
        ->excludes(bk_opt);
    binci_cmd->add_option("--level", blevel_arg, "confidence level (default 0.95)");
    binci_cmd->callback([&] {
        BinomialData data = [&] {
            if (!bcsv_arg.empty()) {
                std::ifstream in(bcsv_arg);
                if (!in) throw DomainError("cannot open '" + bcsv_arg + "'");
                return read_binomial_data(in);
            }
            if (bn_opt->count() == 0 || bk_opt->count() == 0)
                throw UsageError("binci needs --n and --k, or --csv");
            return BinomialData(bn, bk);
        }();
        ConfidenceSpec level(parse_real(blevel_arg));
        RealInterval iv = binomial_ci(data, level);
        text = "proportion interval at level " + blevel_arg + ": [" + fmt(iv.lower) + ", " +
               fmt(iv.upper) + "]";
        doc = Json{{"n", data.n},        {"k", data.k},       {"level", level.level},
                   {"lower", iv.lower},  {"upper", iv.upper}};
    });

    // ---- bound ----------------------------------------------------------
    std::int64_t bound_n = 0;
    auto* bound_cmd = app.add_subcommand("bound", "frequency bound half-width 3/sqrt(4n)");
    bound_cmd->add_option("--n", bound_n, "sample size")->required();
    bound_cmd->callback([&] {
        ProportionBound b = proportion_bound(bound_n);
        text = "half-width " + fmt(b.half_width) + (b.vacuous ? " (vacuous)" : "");
        doc = Json{{"n", bound_n}, {"half_width", b.half_width}, {"vacuous", b.vacuous}};
    });

    // ---- coverage -------------------------------------------------------
    std::int64_t cov_n = 0;
    std::string cov_p, cov_hw;
    auto* coverage_cmd =
        app.add_subcommand("coverage", "exact coverage of a frequency interval");
    coverage_cmd->add_option("--n", cov_n, "sample size")->required();
    coverage_cmd->add_option("--p", cov_p, "true proportion")->required();
    coverage_cmd->add_option("--half-width", cov_hw,
                             "interval half-width (default: 3/sqrt(4n))");
    coverage_cmd->callback([&] {
        double hw = cov_hw.empty() ? proportion_bound(cov_n).half_width : parse_real(cov_hw);
        double p = parse_real(cov_p);
        double cov = exact_coverage(cov_n, p, hw);
        text = "coverage at n=" + std::to_string(cov_n) + ", p=" + fmt(p) + ", half-width " +
               fmt(hw) + ": " + fmt(cov);
        doc = Json{{"n", cov_n}, {"p", p}, {"half_width", hw}, {"coverage", cov}};
    });

    // ---- test -----------------------------------------------------------
    std::int64_t test_n = 0, test_k = 0;
    std::string test_null, test_alpha = "0.05", test_tail = "two-sided";
    auto* test_cmd = app.add_subcommand("test", "exact binomial hypothesis test");
    test_cmd->add_option("--n", test_n, "trial count")->required();
    test_cmd->add_option("--k", test_k, "success count")->required();
    test_cmd->add_option("--null", test_null, "null proportion")->required();
    test_cmd->add_option("--alpha", test_alpha, "test size (default 0.05)");
    test_cmd->add_option("--tail", test_tail, "tail: upper, lower, or two-sided")
        ->check(CLI::IsMember({"upper", "lower", "two-sided"}));
    test_cmd->callback([&] {
        TestTail tail = test_tail == "upper"   ? TestTail::Upper
                        : test_tail == "lower" ? TestTail::Lower
                                               : TestTail::TwoSided;
        TestOutcome outcome = hypothesis_test(BinomialData(test_n, test_k),
                                              parse_real(test_null),
                                              ConfidenceSpec(parse_real(test_alpha)), tail);
        text = std::string(outcome.reject ? "Reject" : "FailToReject") + " (p-value " +
               fmt(outcome.p_value) + ")";
        doc = Json{{"n", test_n},           {"k", test_k},
                   {"null", parse_real(test_null)}, {"alpha", parse_real(test_alpha)},
                   {"tail", test_tail},     {"p_value", outcome.p_value},
                   {"reject", outcome.reject}};
    });

    // ---- reliability ----------------------------------------------------
    std::int64_t rel_s = 0, rel_a = 0;
    std::string rel_g;
    auto* reliability_cmd =
        app.add_subcommand("reliability", "default-rule reliability interval");
    reliability_cmd->add_option("--successes", rel_s, "successful applications")->required();
    reliability_cmd->add_option("--applications", rel_a, "total applications")->required();
    reliability_cmd->add_option("--gullibility", rel_g, "gullibility parameter in (0,1)")
        ->required();
    reliability_cmd->callback([&] {
        double g = parse_real(rel_g);
        RealInterval iv = default_rule_reliability(rel_s, rel_a, g);
        text = "reliability interval at gullibility " + rel_g + ": [" + fmt(iv.lower) + ", " +
               fmt(iv.upper) + "]";
        doc = Json{{"successes", rel_s}, {"applications", rel_a}, {"gullibility", g},
                   {"lower", iv.lower},  {"upper", iv.upper}};
    });

    // ---- corpus ---------------------------------------------------------
    std::string corpus_level;
    auto* corpus_cmd = app.add_subcommand("corpus", "set the acceptance level");
    corpus_cmd->add_option("--level", corpus_level, "acceptance level in [1/2, 1)")->required();
    corpus_cmd->callback([&] {
        Rational level = parse_rational(corpus_level);
        Corpus c(session.require_credal(), level); // validates level and evidence
        session.acceptance_level = level;
        result.mutated = true;
        text = "acceptance level " + to_fraction(level);
        doc = corpus_to_json(c);
    });

    // ---- accept ---------------------------------------------------------
    std::string accept_formula;
    auto* accept_cmd = app.add_subcommand("accept", "is a formula in the corpus?");
    accept_cmd->add_option("formula", accept_formula, "proposition to check")->required();
    accept_cmd->callback([&] {
        Corpus c = session.corpus();
        Proposition p = session.parse(accept_formula);
        ProbabilityInterval iv = prob_interval(c.evidence(), p);
        bool accepted = iv.lower > c.acceptance_level();
        text = std::string(accepted ? "accepted" : "not accepted") + " (lower probability " +
               to_fraction(iv.lower) + (accepted ? " > " : " <= ") +
               to_fraction(c.acceptance_level()) + ")";
        doc = Json{{"formula", accept_formula},
                   {"accepted", accepted},
                   {"lower", to_fraction(iv.lower)},
                   {"upper", to_fraction(iv.upper)}};
    });

    // ---- query ----------------------------------------------------------
    std::string query_formula;
    auto* query_cmd = app.add_subcommand("query", "corpus verdict and probability interval");
    query_cmd->add_option("formula", query_formula, "proposition to query");
    query_cmd->callback([&] {
        Corpus c = session.corpus();
        if (query_formula.empty()) throw UsageError("query needs a formula");
        QueryAnswer answer = query(c, session.parse(query_formula));
        std::string prob_text =
            (answer.interval.is_degenerate() ? "probability " : "probability in ") +
            cli_detail::interval_text(answer.interval);
        const char* verdict = nullptr;
        switch (answer.verdict) {
            case Verdict::Accepted:
                verdict = "Accepted";
                text = "Accepted (" + prob_text + ")";
                break;
            case Verdict::RejectedNegationAccepted:
                verdict = "RejectedNegationAccepted";
                text = "Rejected: negation accepted (" + prob_text + ")";
                break;
            case Verdict::Unknown:
                verdict = "Unknown";
                text = "Unknown (" + prob_text + ")";
                break;
        }
        doc = Json{{"formula", query_formula},
                   {"verdict", verdict},
                   {"interval", interval_to_json(answer.interval)}};
    });

    // ---- consistency ----------------------------------------------------
    auto* consistency_cmd =
        app.add_subcommand("consistency", "joint consistency of the accepted set");
    consistency_cmd->callback([&] {
        ConsistencyVerdict verdict = joint_consistency(session.corpus());
        if (std::holds_alternative<Consistent>(verdict)) {
            text = "Consistent";
            doc = Json{{"verdict", "Consistent"}};
        } else {
            const auto& witness = std::get<JointlyInconsistent>(verdict).witness;
            text = "JointlyInconsistent: " + std::to_string(witness.size()) +
                   " accepted propositions intersect emptily";
            if (witness.size() <= 20) {
                text += " (";
                for (std::size_t i = 0; i < witness.size(); ++i)
                    text += (i ? ", " : "") + witness[i].name();
                text += ")";
            }
            Json members = Json::array();
            for (const Proposition& w : witness)
                members.push_back(
                    Json{{"name", w.name()}, {"members", proposition_to_json(w)}});
            doc = Json{{"verdict", "JointlyInconsistent"},
                       {"witness_size", witness.size()},
                       {"witness", std::move(members)}};
        }
    });

    // ---- lottery --------------------------------------------------------
    std::int64_t lottery_tickets = 0;
    std::string lottery_level;
    auto* lottery_cmd = app.add_subcommand("lottery", "build the n-ticket lottery corpus");
    lottery_cmd->add_option("--tickets", lottery_tickets, "ticket count (>= 2)")->required();
    lottery_cmd->add_option("--level", lottery_level, "acceptance level in [1/2, 1)")
        ->required();
    lottery_cmd->callback([&] {
        if (lottery_tickets < 2) throw DomainError("a lottery needs at least two tickets");
        Lottery lottery =
            build_lottery(static_cast<std::size_t>(lottery_tickets), parse_rational(lottery_level));
        Session fresh;
        fresh.history = std::move(session.history);
        fresh.space = lottery.corpus.space();
        fresh.credal = lottery.corpus.evidence();
        fresh.acceptance_level = lottery.corpus.acceptance_level();
        fresh.named = std::move(lottery.named);
        session = std::move(fresh);
        result.mutated = true;
        text = "lottery with " + std::to_string(lottery_tickets) + " tickets at acceptance level " +
               to_fraction(*session.acceptance_level);
        doc = Json{{"tickets", lottery_tickets},
                   {"acceptance_level", to_fraction(*session.acceptance_level)},
                   {"named_propositions", session.named.size()}};
    });

    // ---- advise ---------------------------------------------------------
    std::string advise_lower, advise_upper, advise_odds;
    auto* advise_cmd = app.add_subcommand("advise", "advice on a bet at odds O:1 against");
    advise_cmd->add_option("--lower", advise_lower, "event probability lower bound")->required();
    advise_cmd->add_option("--upper", advise_upper, "event probability upper bound")->required();
    advise_cmd->add_option("--odds", advise_odds, "offered odds against (O in O:1)")->required();
    advise_cmd->callback([&] {
        Corpus c = session.corpus();
        ProbabilityInterval iv(parse_rational(advise_lower), parse_rational(advise_upper));
        Rational odds = parse_rational(advise_odds);
        BetAdvice advice = bet_advice(c, iv, odds);
        if (std::holds_alternative<TakeBet>(advice)) {
            text = "TakeBet (lower probability " + fmt(to_double(iv.lower)) +
                   " exceeds price " + fmt(to_double(1 / (odds + 1))) + ")";
            doc = Json{{"decision", "TakeBet"}};
        } else {
            const auto& refusal = std::get<RefuseBet>(advice);
            if (refusal.reason == RefusalReason::BeyondSignificance) {
                text = "RefuseBet: BeyondSignificance (required confidence " +
                       to_fraction(odds / (odds + 1)) + " exceeds acceptance level " +
                       to_fraction(c.acceptance_level()) + ")";
                doc = Json{{"decision", "RefuseBet"}, {"reason", "BeyondSignificance"}};
            } else {
                text = "RefuseBet: UnfavorableOdds (lower probability " +
                       fmt(to_double(iv.lower)) + " at or below price " +
                       fmt(to_double(1 / (odds + 1))) + ")";
                doc = Json{{"decision", "RefuseBet"}, {"reason", "UnfavorableOdds"}};
            }
        }
    });

    // ---- save / load ----------------------------------------------------
    std::string save_path;
    auto* save_cmd = app.add_subcommand("save", "write the session to a file");
    save_cmd->add_option("path", save_path, "output path")->required();
    save_cmd->callback([&] {
        save_session(session, save_path);
        text = "saved session to " + save_path;
        doc = Json{{"saved", save_path}};
    });

    std::string load_path;
    auto* load_cmd = app.add_subcommand("load", "replace the session from a file");
    load_cmd->add_option("path", load_path, "input path")->required();
    load_cmd->callback([&] {
        session = load_session(load_path);
        result.mutated = true;
        text = "loaded session from " + load_path;
        doc = Json{{"loaded", load_path}};
    });

    // ---- parse and dispatch ---------------------------------------------
    // Let trailing global flags (--json) reach the parent parser.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    bool is_load = !argv_tokens.empty() && argv_tokens.front() == "load";
    try {
        std::vector<std::string> reversed(argv_tokens.rbegin(), argv_tokens.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.exit_code = 0;
        auto parsed = app.get_subcommands();
        result.output = parsed.size() == 1 ? parsed.front()->help() : app.help();
        result.session = std::move(session);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        result.error = e.what();
        result.session = std::move(session);
        return result;
    } catch (const UsageError& e) {
        result.exit_code = 2;
        result.error = e.what();
        result.session = std::move(session);
        return result;
    } catch (const DomainError& e) {
        result.exit_code = 1;
        result.error = e.what();
        result.session = std::move(session);
        return result;
    }

    // Append state-changing commands to the history, except `load`, whose
    // effect is already captured by the loaded history.
    if (result.mutated && !is_load) {
        std::vector<std::string> entry;
        for (const std::string& tok : argv_tokens)
            if (tok != "--json") entry.push_back(tok);
        session.history.push_back(std::move(entry));
    }

    result.output = json_out ? doc.dump(2) : text;
    result.session = std::move(session);
    return result;
}

// Full program behavior: resolve the session file, run one command, and
// persist the state if the command changed it.
inline int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string session_path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--session" && i + 1 < args.size()) {
            session_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--session=", 0) == 0) {
            session_path = args[i].substr(10);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (session_path.empty()) {
        if (const char* env = std::getenv("CREDENCE_SESSION")) session_path = env;
    }
    if (session_path.empty()) session_path = "credence_session.json";

    Session session;
    if (std::filesystem::exists(session_path)) {
        try {
            session = load_session(session_path);
        } catch (const DomainError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    RunResult result = run_command(args, std::move(session), false);
    if (!result.output.empty()) std::cout << result.output << '\n';
    if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';
    if (result.exit_code == 0 && result.mutated) {
        try {
            save_session(result.session, session_path);
        } catch (const DomainError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }
    return result.exit_code;
}

} // namespace credence
