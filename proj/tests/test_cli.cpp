#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nonint/cli.hpp"
#include "nonint/integrality.hpp"
#include "nonint/records.hpp"

using namespace nonint;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const cli::ParseOutcome parsed = cli::parse_args(args, out, err);
    if (!parsed.config) return {parsed.exit_code, out.str(), err.str()};
    const int status = cli::run(*parsed.config, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("nonint_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exact integer parsing rejects non-decimal forms") {
    CHECK(cli::parse_exact_uint("0") == 0u);
    CHECK(cli::parse_exact_uint("18446744073709551615") == UINT64_MAX);
    CHECK_FALSE(cli::parse_exact_uint("18446744073709551616"));
    CHECK_FALSE(cli::parse_exact_uint("1e5"));
    CHECK_FALSE(cli::parse_exact_uint("-1"));
    CHECK_FALSE(cli::parse_exact_uint("+3"));
    CHECK_FALSE(cli::parse_exact_uint(""));
    CHECK_FALSE(cli::parse_exact_uint("12 "));
    CHECK_FALSE(cli::parse_exact_uint("0x10"));
    CHECK(cli::parse_exponent("61/100") == Exponent{61, 100});
    CHECK(cli::parse_exponent("3") == Exponent{3, 1});
    CHECK_FALSE(cli::parse_exponent("0.61"));
    CHECK_FALSE(cli::parse_exponent("1/0"));
}

TEST_CASE("certify prints the Sylvester certificate") {
    const Outcome o = invoke({"certify", "--r", "3", "--n", "4"});
    CHECK(o.status == cli::kExitOk);
    const Json j = Json::parse(o.out);
    CHECK(j["classification"] == "certified_nonintegral");
    CHECK(j["certificate"]["type"] == "sylvester");
    CHECK(j["certificate"]["p"] == 5);
    CHECK(j["certificate"]["k0"] == 2);
}

TEST_CASE("certify falls back to the oracle with decimal string values") {
    const Outcome o = invoke({"certify", "--r", "1", "--n", "5"});
    CHECK(o.status == cli::kExitOk);
    const Json j = Json::parse(o.out);
    CHECK(j["classification"] == "oracle_nonintegral");
    CHECK(j["value_numerator"] == "43");
    CHECK(j["value_denominator"] == "2");
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(invoke({"scan", "--r", "0", "--n-start", "1", "--n-end", "10"}).status == cli::kExitUsage);
    CHECK(invoke({"scan", "--r", "1", "--n-start", "10", "--n-end", "9"}).status == cli::kExitUsage);
    CHECK(invoke({"scan", "--r", "1e2", "--n-start", "1", "--n-end", "9"}).status == cli::kExitUsage);
    CHECK(invoke({"certify", "--r", "3"}).status == cli::kExitUsage);
    CHECK(invoke({"certify", "--r", "3", "--n", "4", "--bogus", "1"}).status == cli::kExitUsage);
    CHECK(invoke({"certify", "--r", "3", "--n", "4", "--format", "xml"}).status == cli::kExitUsage);
    CHECK(invoke({"certify", "--r", "3", "--n", "4", "--threads", "0"}).status == cli::kExitUsage);
    CHECK(invoke({"oracle", "--r", "1", "--n", "5000"}).status == cli::kExitUsage);
    CHECK(invoke({}).status == cli::kExitUsage);
    const Outcome o = invoke({"scan", "--r", "0", "--n-start", "1", "--n-end", "10"});
    CHECK(o.err.find("error") != std::string::npos);
    CHECK(invoke({"--help"}).status == cli::kExitOk);
}

TEST_CASE("scan writes one record per n and a summary") {
    const Outcome o = invoke({"scan", "--r", "1", "--n-start", "1", "--n-end", "100", "--threads", "2"});
    CHECK(o.status == cli::kExitOk);
    const auto lines = lines_of(o.out);
    REQUIRE(lines.size() == 100);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Json j = Json::parse(lines[i]);
        REQUIRE(j["n"] == i + 1);
        REQUIRE(j["r"] == 1);
        REQUIRE(j["classification"] != "oracle_integral");
        if (j.contains("certificate")) {
            const Certificate c = certificate_from_json(j["certificate"]);
            REQUIRE(verify(Instance{1, i + 1}, c));
        }
    }
    const Json summary = Json::parse(o.err)["summary"];
    CHECK(summary["counts"]["oracle_integral"] == 0);
    CHECK(summary["counts"]["total"] == 100);
}

TEST_CASE("scan output is byte-identical across thread counts") {
    TempDir dir;
    const auto a = dir.path / "a.jsonl";
    const auto b = dir.path / "b.jsonl";
    const auto c = dir.path / "c.csv";
    const auto d = dir.path / "d.csv";
    CHECK(invoke({"scan", "--r", "5", "--n-start", "1", "--n-end", "700", "--threads", "1", "--out", a.string()})
              .status == 0);
    CHECK(invoke({"scan", "--r", "5", "--n-start", "1", "--n-end", "700", "--threads", "7", "--out", b.string()})
              .status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(invoke({"scan", "--r", "5", "--n-start", "1", "--n-end", "700", "--threads", "1", "--format", "csv",
                  "--out", c.string()})
              .status == 0);
    CHECK(invoke({"scan", "--r", "5", "--n-start", "1", "--n-end", "700", "--threads", "5", "--format", "csv",
                  "--out", d.string()})
              .status == 0);
    CHECK(slurp(c) == slurp(d));
    CHECK(lines_of(slurp(c)).size() == 701);
    CHECK(lines_of(slurp(c)).front() == csv_header(instance_columns()));
}

TEST_CASE("interrupted scans resume to the same bytes") {
    TempDir dir;
    for (const std::string format : {"jsonl", "csv"}) {
        const auto full = dir.path / ("full." + format);
        const auto part = dir.path / ("part." + format);
        const std::vector<std::string> base{"scan", "--r", "2", "--n-start", "1", "--n-end", "300", "--format", format};
        auto with_out = [&](const fs::path& p) {
            auto args = base;
            args.push_back("--out");
            args.push_back(p.string());
            return args;
        };
        REQUIRE(invoke(with_out(full)).status == 0);
        const std::string expected = slurp(full);

        // Keep 120 complete lines plus half of the next one.
        const auto lines = lines_of(expected);
        std::string truncated;
        for (std::size_t i = 0; i < 120; ++i) truncated += lines[i] + "\n";
        truncated += lines[120].substr(0, lines[120].size() / 2);
        std::ofstream(part, std::ios::binary) << truncated;

        const Outcome o = invoke(with_out(part));
        REQUIRE(o.status == 0);
        CHECK(slurp(part) == expected);
        const Json summary = Json::parse(o.err)["summary"];
        CHECK(summary["counts"]["total"] == 300);
        CHECK(summary["resumed"] == (format == "csv" ? 119 : 120));

        // Resuming a finished file is a no-op.
        REQUIRE(invoke(with_out(part)).status == 0);
        CHECK(slurp(part) == expected);
    }
}

TEST_CASE("resume refuses mismatched existing output") {
    TempDir dir;
    const auto p = dir.path / "x.jsonl";
    REQUIRE(invoke({"scan", "--r", "2", "--n-start", "1", "--n-end", "20", "--out", p.string()}).status == 0);
    CHECK(invoke({"scan", "--r", "3", "--n-start", "1", "--n-end", "20", "--out", p.string()}).status ==
          cli::kExitUsage);
    CHECK(invoke({"scan", "--r", "2", "--n-start", "5", "--n-end", "20", "--out", p.string()}).status ==
          cli::kExitUsage);
    std::ofstream(p, std::ios::binary) << "not json\n";
    CHECK(invoke({"scan", "--r", "2", "--n-start", "1", "--n-end", "20", "--out", p.string()}).status ==
          cli::kExitUsage);
}

TEST_CASE("other subcommands") {
    Outcome o = invoke({"oracle", "--r", "3", "--n", "4"});
    CHECK(o.status == 0);
    Json j = Json::parse(o.out);
    CHECK(j["s_lower_numerator"] == "209");
    CHECK(j["s_lower_denominator"] == "35");
    CHECK(j["s_upper_numerator"] == "351");
    CHECK(j["integral"] == false);

    o = invoke({"identity", "--r-max", "4", "--n-max", "10"});
    CHECK(o.status == 0);
    CHECK(lines_of(o.out).size() == 40);
    CHECK(Json::parse(o.err)["summary"]["failures"] == 0);

    o = invoke({"lemma2", "--r", "100"});
    CHECK(o.status == 0);
    j = Json::parse(o.out);
    CHECK(j["found"] == false);
    CHECK(j["primes_in_interval"] == 5);

    o = invoke({"lemma2", "--r", "1000000", "--gcd-exponent", "1/5"});
    CHECK(o.status == 0);
    j = Json::parse(o.out);
    CHECK(j["found"] == true);
    CHECK(j["check"]["m_bound"] == true);

    o = invoke({"census", "--t", "100"});
    CHECK(Json::parse(o.out)["count"] == 0);

    o = invoke({"msmooth", "--r", "3", "--n-max", "100"});
    j = Json::parse(o.out);
    CHECK(j["m_max"] == 2);
    CHECK(j["exceeds_log"] == true);

    o = invoke({"gaps", "--n", "113"});
    j = Json::parse(o.out);
    CHECK(j["next_prime"] == 127);
    CHECK(j["gap"] == 14);
    CHECK(lines_of(invoke({"gaps", "--n-start", "10", "--n-end", "19"}).out).size() == 10);

    o = invoke({"certify", "--r", "3", "--n", "4", "--format", "human"});
    CHECK(o.out.find("certificate_type=sylvester") != std::string::npos);
}

TEST_CASE("certificate json round trip") {
    const std::vector<Certificate> certs{SylvesterPrime{5, 2}, OrderCertificate{5, 1, 4}, SmoothBound{1}};
    for (const Certificate& c : certs) CHECK(certificate_from_json(certificate_to_json(c)) == c);
    CHECK_THROWS_AS(certificate_from_json(Json{{"type", "weird"}}), std::invalid_argument);
    CHECK_THROWS_AS(certificate_from_json(Json{{"type", "sylvester"}}), std::invalid_argument);
}

TEST_CASE("csv escaping") {
    Json j;
    j["r"] = 1;
    j["reason"] = "a, \"b\"";
    CHECK(csv_row(j, {"r", "reason", "n"}) == "1,\"a, \"\"b\"\"\",");
}
