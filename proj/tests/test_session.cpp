#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "credence/cli.hpp"
#include "credence/session.hpp"

using namespace credence;
namespace fs = std::filesystem;

namespace {

struct Chain {
    Session session;

    RunResult run(std::vector<std::string> args) {
        RunResult r = run_command(args, std::move(session));
        session = r.session;
        return r;
    }
};

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("credence_test_" + name);
}

Json load_golden(const std::string& name) {
    return parse_json_file(std::string(CREDENCE_GOLDEN_DIR) + "/" + name);
}

bool same_state(const Session& a, const Session& b) {
    Session a2 = a, b2 = b;
    a2.history.clear();
    b2.history.clear();
    return same_session(a2, b2);
}

} // namespace

TEST_CASE("lottery walkthrough through the command layer") {
    Chain chain;
    RunResult r = chain.run({"lottery", "--tickets", "1000", "--level", "99/100"});
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.mutated);

    r = chain.run({"query", "loses_7"});
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "Accepted (probability 999/1000)");

    r = chain.run({"query", "wins_7"});
    REQUIRE(r.output == "Rejected: negation accepted (probability 1/1000)");

    r = chain.run({"consistency"});
    REQUIRE(r.output.find("JointlyInconsistent: 1000") == 0);
}

TEST_CASE("usage errors exit with code 2") {
    Chain chain;
    SECTION("query without a corpus") {
        RunResult r = chain.run({"query", "x"});
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.error == "no corpus loaded");
    }
    SECTION("bare query without a corpus") {
        RunResult r = chain.run({"query"});
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.error == "no corpus loaded");
    }
    SECTION("unknown subcommand") {
        REQUIRE(chain.run({"frobnicate"}).exit_code == 2);
    }
    SECTION("dist before space") {
        REQUIRE(chain.run({"dist", "--weights", "1/2,1/2"}).exit_code == 2);
    }
}

TEST_CASE("domain errors exit with code 1") {
    Chain chain;
    SECTION("duplicate atom labels") {
        RunResult r = chain.run({"space", "--labels", "x,x"});
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.error.find("duplicate") != std::string::npos);
    }
    SECTION("weights that do not sum to one") {
        REQUIRE(chain.run({"space", "--labels", "a,b"}).exit_code == 0);
        RunResult r = chain.run({"dist", "--weights", "1/1,1/1"});
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.error.find("sum") != std::string::npos);
    }
    SECTION("conditioning on zero-probability evidence") {
        chain.run({"space", "--labels", "a,b"});
        chain.run({"dist", "--weights", "1,0"});
        RunResult r = chain.run({"condition", "--evidence", "b"});
        REQUIRE(r.exit_code == 1);
    }
}

TEST_CASE("conditioning twice equals conditioning on the conjunction") {
    auto setup = [] {
        Chain chain;
        chain.run({"space", "--labels", "a,b,c,d"});
        chain.run({"dist", "--weights", "1/10,2/10,3/10,4/10"});
        chain.run({"corpus", "--level", "1/2"});
        return chain;
    };
    Chain twice = setup();
    REQUIRE(twice.run({"condition", "--evidence", "a | b | c"}).exit_code == 0);
    REQUIRE(twice.run({"condition", "--evidence", "b | c | d"}).exit_code == 0);

    Chain once = setup();
    REQUIRE(once.run({"condition", "--evidence", "(a | b | c) & (b | c | d)"}).exit_code == 0);

    REQUIRE(same_state(twice.session, once.session));
}

TEST_CASE("session save/load round-trip is the identity") {
    fs::path path = temp_file("roundtrip.json");
    Chain chain;
    chain.run({"lottery", "--tickets", "11", "--level", "9/10"});
    chain.run({"jeffrey", "--evidence", "wins_1 | wins_2", "--new-prob", "1/4"});
    REQUIRE(chain.run({"save", path.string()}).exit_code == 0);

    Chain fresh;
    REQUIRE(fresh.run({"load", path.string()}).exit_code == 0);
    REQUIRE(same_session(fresh.session, chain.session));

    // Rationals survive as exact "num/den" strings.
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(text.find("\"9/10\"") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("loading bad session files") {
    SECTION("weights summing to two name the invariant") {
        fs::path path = temp_file("badsum.json");
        std::ofstream(path) << R"({"version":1,"space":{"atoms":["a","b"]},)"
                            << R"("credal":{"atoms":["a","b"],"points":[["1/1","1/1"]]}})";
        Chain chain;
        RunResult r = chain.run({"load", path.string()});
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.error.find("sum") != std::string::npos);
        fs::remove(path);
    }
    SECTION("empty file is malformed") {
        fs::path path = temp_file("empty.json");
        std::ofstream(path) << "";
        Chain chain;
        RunResult r = chain.run({"load", path.string()});
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.error.find("malformed") != std::string::npos);
        fs::remove(path);
    }
    SECTION("version mismatch is reported") {
        fs::path path = temp_file("badversion.json");
        std::ofstream(path) << R"({"version":99})";
        Chain chain;
        RunResult r = chain.run({"load", path.string()});
        REQUIRE(r.exit_code == 1);
        REQUIRE(r.error.find("version") != std::string::npos);
        fs::remove(path);
    }
}

TEST_CASE("history replays to the same session") {
    Chain chain;
    chain.run({"space", "--labels", "a,b,c"});
    chain.run({"credal", "--point", "1/2,3/10,1/5", "--point", "1/5,3/10,1/2"});
    chain.run({"corpus", "--level", "3/5"});
    chain.run({"condition", "--evidence", "a | b"});
    chain.run({"query", "a"}); // non-mutating; must not enter the history
    REQUIRE(chain.session.history.size() == 4);

    Chain replay;
    for (const auto& entry : chain.session.history) {
        RunResult r = replay.run(entry);
        REQUIRE(r.exit_code == 0);
    }
    REQUIRE(same_session(replay.session, chain.session));
}

TEST_CASE("JSON output matches the golden documents") {
    SECTION("query") {
        Chain chain;
        chain.run({"lottery", "--tickets", "11", "--level", "9/10"});
        RunResult r = chain.run({"--json", "query", "loses_2"});
        REQUIRE(Json::parse(r.output) == load_golden("query_accepted.json"));
    }
    SECTION("corpus") {
        Chain chain;
        chain.run({"space", "--labels", "a,b,c"});
        chain.run({"dist", "--weights", "3/10,3/10,2/5"});
        RunResult r = chain.run({"--json", "corpus", "--level", "3/5"});
        REQUIRE(Json::parse(r.output) == load_golden("corpus.json"));
    }
    SECTION("coherence") {
        Chain chain;
        chain.run({"space", "--labels", "a,b,c"});
        RunResult r = chain.run({"--json", "coherence", "--bet", "a=3/5", "--bet", "~a=3/5"});
        REQUIRE(Json::parse(r.output) == load_golden("coherence_dutchbook.json"));
    }
    SECTION("session file") {
        Chain chain;
        chain.run({"lottery", "--tickets", "2", "--level", "1/2"});
        REQUIRE(session_to_json(chain.session) == load_golden("session_lottery2.json"));
    }
}

TEST_CASE("statistical commands read CSV files") {
    Chain chain;
    SECTION("one value per line for a sample") {
        fs::path csv = temp_file("sample.csv");
        std::ofstream(csv) << "1\n2\n3\n4\n5\n";
        RunResult r = chain.run({"tinterval", "--csv", csv.string(), "--level", "0.95"});
        REQUIRE(r.exit_code == 0);
        Json j = Json::parse(chain.run({"--json", "tinterval", "--csv", csv.string()}).output);
        REQUIRE(j.at("lower").get<double>() == Catch::Approx(1.0368).margin(1e-3));
        REQUIRE(j.at("upper").get<double>() == Catch::Approx(4.9632).margin(1e-3));
        fs::remove(csv);
    }
    SECTION("a header-less n,k pair") {
        fs::path csv = temp_file("binom.csv");
        std::ofstream(csv) << "10,5\n";
        Json j = Json::parse(chain.run({"--json", "binci", "--csv", csv.string()}).output);
        REQUIRE(j.at("n") == 10);
        REQUIRE(j.at("k") == 5);
        REQUIRE(j.at("lower").get<double>() == Catch::Approx(0.187).margin(1e-3));
        fs::remove(csv);
    }
}

TEST_CASE("decimal levels convert to exact rationals") {
    Chain chain;
    chain.run({"space", "--labels", "a,b"});
    chain.run({"dist", "--weights", "0.25,0.75"});
    REQUIRE(chain.session.credal->generators()[0].weight(0) == Rational(1, 4));
    REQUIRE(chain.run({"corpus", "--level", "0.9"}).exit_code == 0);
    REQUIRE(chain.session.acceptance_level == Rational(9, 10));
}

TEST_CASE("wide propositions serialize as hex bitmasks") {
    Chain chain;
    chain.run({"lottery", "--tickets", "100", "--level", "98/100"});
    Json j = session_to_json(chain.session);
    // 99 members is past the index-array cutoff.
    REQUIRE(j.at("named").at("loses_1").is_object());
    REQUIRE(j.at("named").at("wins_1").is_array());
    Session back = session_from_json(j);
    REQUIRE(same_session(back, chain.session));
}

TEST_CASE("the installed binary honors the exit-code contract") {
    std::string cli = CREDENCE_CLI_PATH;
    fs::path session = temp_file("cli_session.json");
    fs::remove(session);
    std::string base = cli + " --session " + session.string();

    auto shell = [](const std::string& cmd) {
        int status = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };

    REQUIRE(shell(base + " lottery --tickets 11 --level 9/10") == 0);
    REQUIRE(fs::exists(session));
    REQUIRE(shell(base + " query loses_3") == 0);
    REQUIRE(shell(base + " space --labels x,x") == 1);
    REQUIRE(shell(base + " frobnicate") == 2);

    fs::path empty_session = temp_file("cli_empty.json");
    fs::remove(empty_session);
    REQUIRE(shell(cli + " --session " + empty_session.string() + " query t") == 2);
    fs::remove(session);
}
