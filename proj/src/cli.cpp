#include "nonint/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "nonint/experiments.hpp"
#include "nonint/integrality.hpp"
#include "nonint/ntkernel.hpp"

namespace nonint::cli {

std::optional<std::uint64_t> parse_exact_uint(const std::string& text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<Exponent> parse_exponent(const std::string& text) {
    const auto slash = text.find('/');
    const auto num = parse_exact_uint(text.substr(0, slash));
    const auto den = slash == std::string::npos ? std::optional<std::uint64_t>{1} : parse_exact_uint(text.substr(slash + 1));
    if (!num || !den || *den == 0 || *num == 0) return std::nullopt;
    return Exponent{*num, *den};
}

namespace {

struct SubcommandSpec {
    const char* name;
    const char* help;
    std::vector<std::pair<const char*, const char*>> flags;  // flag, description
};

const std::vector<SubcommandSpec>& subcommand_specs() {
    static const std::vector<SubcommandSpec> specs{
        {"oracle", "Exact values of S_r(n) and S(r,n) by direct summation", {{"r", "r >= 1"}, {"n", "n >= 1"}}},
        {"identity",
         "Check the closed form and S(r,n) + S_r(n) = 2^n on a grid or one instance",
         {{"r", "single r"}, {"n", "single n"}, {"r-max", "grid bound for r (default 25)"},
          {"n-max", "grid bound for n (default 100)"}}},
        {"certify", "Classify one instance and print its certificate", {{"r", "r >= 1"}, {"n", "n >= 1"}}},
        {"scan",
         "Classify every n in a range for fixed r (resumable with --out)",
         {{"r", "r >= 1"}, {"n-start", "first n"}, {"n-end", "last n"}}},
        {"lemma2", "Search six primes above r with large order of 2 and small pairwise gcds", {{"r", "r >= 2"}}},
        {"census", "Odd primes q <= t with order2(q) <= q^0.3", {{"t", "bound t"}}},
        {"msmooth", "Empirical M(r): max of M_r(n) over 1 <= n <= n-max", {{"r", "r >= 1"}, {"n-max", "scan bound"}}},
        {"gaps", "Next prime after n and the gap", {{"n", "single n"}, {"n-start", "first n"}, {"n-end", "last n"}}},
    };
    return specs;
}

const std::vector<std::string> kExponentFlags{"interval-exponent", "order-exponent", "gcd-exponent", "m-exponent"};

class RecordWriter {
public:
    RecordWriter(std::ostream& os, Format format, std::vector<std::string> columns, bool write_header)
        : os_(os), format_(format), columns_(std::move(columns)) {
        if (format_ == Format::csv && write_header) os_ << csv_header(columns_) << '\n';
    }

    void write(const Json& record) {
        switch (format_) {
            case Format::jsonl: os_ << record.dump() << '\n'; break;
            case Format::csv: os_ << csv_row(record, columns_) << '\n'; break;
            case Format::human: os_ << human_line(record) << '\n'; break;
        }
        if (++written_ % 1024 == 0) os_.flush();
    }

private:
    std::ostream& os_;
    Format format_;
    std::vector<std::string> columns_;
    std::uint64_t written_ = 0;
};

// Output stream: the --out file (truncated or appended) or stdout.
class Output {
public:
    Output(const RunConfig& config, std::ostream& fallback, bool append) : fallback_(fallback) {
        if (!config.output_path) return;
        file_ = std::make_unique<std::ofstream>(*config.output_path,
                                                append ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
        if (!*file_) throw std::runtime_error("cannot open output file " + config.output_path->string());
    }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

std::uint64_t param(const RunConfig& config, const std::string& name) {
    const auto it = config.parameters.find(name);
    if (it == config.parameters.end()) throw std::invalid_argument("missing required --" + name);
    return it->second;
}

std::optional<std::uint64_t> maybe_param(const RunConfig& config, const std::string& name) {
    const auto it = config.parameters.find(name);
    if (it == config.parameters.end()) return std::nullopt;
    return it->second;
}

std::string ordering_name(std::strong_ordering o) {
    if (o == std::strong_ordering::less) return "less";
    if (o == std::strong_ordering::greater) return "greater";
    return "equal";
}

Budget budget_of(const RunConfig& config) {
    Budget b;
    b.oracle_cutoff = config.oracle_cutoff;
    return b;
}

// ---------------------------------------------------------------------------

int run_oracle(const RunConfig& config, std::ostream& out) {
    const Instance inst{param(config, "r"), param(config, "n")};
    validate(inst);
    const ExactRational lower = s_lower(inst, config.oracle_cutoff);
    const ExactRational upper = s_upper(inst, config.oracle_cutoff);
    Json j;
    j["r"] = inst.r;
    j["n"] = inst.n;
    j["s_lower_numerator"] = lower.numerator().get_str();
    j["s_lower_denominator"] = lower.denominator().get_str();
    j["s_upper_numerator"] = upper.numerator().get_str();
    j["s_upper_denominator"] = upper.denominator().get_str();
    j["integral"] = lower.is_integer();
    Output sink(config, out, false);
    RecordWriter(sink.stream(), config.format,
                 {"r", "n", "s_lower_numerator", "s_lower_denominator", "s_upper_numerator", "s_upper_denominator",
                  "integral"},
                 true)
        .write(j);
    return lower.is_integer() ? kExitIntegralFound : kExitOk;
}

int run_identity(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::uint64_t r_lo = 1, r_hi = maybe_param(config, "r-max").value_or(25);
    std::uint64_t n_lo = 1, n_hi = maybe_param(config, "n-max").value_or(100);
    if (const auto r = maybe_param(config, "r")) r_lo = r_hi = *r;
    if (const auto n = maybe_param(config, "n")) n_lo = n_hi = *n;
    validate(Instance{r_lo, n_lo});
    Output sink(config, out, false);
    RecordWriter writer(sink.stream(), config.format, {"r", "n", "closed_form_match", "complement"}, true);
    std::uint64_t failures = 0;
    for (std::uint64_t r = r_lo; r <= r_hi; ++r)
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            const Instance inst{r, n};
            const bool closed = s_upper(inst, config.oracle_cutoff) == s_upper_closed(inst);
            const bool complement = complement_check(inst, config.oracle_cutoff);
            failures += (closed && complement) ? 0 : 1;
            Json j;
            j["r"] = r;
            j["n"] = n;
            j["closed_form_match"] = closed;
            j["complement"] = complement;
            writer.write(j);
        }
    Json summary;
    summary["checked"] = (r_hi - r_lo + 1) * (n_hi - n_lo + 1);
    summary["failures"] = failures;
    err << Json{{"summary", summary}}.dump() << '\n';
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

int run_certify(const RunConfig& config, std::ostream& out) {
    const Instance inst{param(config, "r"), param(config, "n")};
    validate(inst);
    const Classification c = classify(inst, budget_of(config));
    Output sink(config, out, false);
    RecordWriter(sink.stream(), config.format, instance_columns(), true).write(instance_record(inst, c));
    return std::holds_alternative<OracleIntegral>(c) ? kExitIntegralFound : kExitOk;
}

// Records already present in a scan output file.
struct ResumeState {
    std::set<std::uint64_t> done;
    Tally tally;
    std::vector<std::uint64_t> integral;
    bool has_content = false;
};

void tally_existing(ResumeState& state, std::uint64_t n, const std::string& classification, const std::string& cert) {
    if (!state.done.insert(n).second) throw std::runtime_error("duplicate n in existing output");
    if (classification == "certified_nonintegral") {
        if (cert == "sylvester")
            ++state.tally.sylvester;
        else if (cert == "order")
            ++state.tally.order;
        else if (cert == "smooth")
            ++state.tally.smooth;
        else
            throw std::runtime_error("unknown certificate type in existing output");
    } else if (classification == "oracle_nonintegral") {
        ++state.tally.oracle_nonintegral;
    } else if (classification == "oracle_integral") {
        ++state.tally.oracle_integral;
        state.integral.push_back(n);
    } else if (classification == "undecided") {
        ++state.tally.undecided;
    } else {
        throw std::runtime_error("unknown classification in existing output");
    }
}

std::vector<std::string> split_csv_simple(const std::string& line) {
    // Scan rows only quote the free-text reason column, which is last.
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

ResumeState load_existing(const std::filesystem::path& path, Format format, std::uint64_t r, NRange range) {
    ResumeState state;
    if (!std::filesystem::exists(path)) return state;
    std::string content;
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    // Drop a partially written final line.
    const auto last_newline = content.rfind('\n');
    const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
    if (complete != content.size()) {
        content.resize(complete);
        std::filesystem::resize_file(path, complete);
    }
    state.has_content = !content.empty();
    std::istringstream lines(content);
    std::string line;
    bool first = true;
    const auto& columns = instance_columns();
    while (std::getline(lines, line)) {
        if (format == Format::csv && first) {
            first = false;
            if (line != csv_header(columns)) throw std::runtime_error("existing CSV header does not match scan schema");
            continue;
        }
        std::uint64_t rec_r = 0;
        std::uint64_t n = 0;
        std::string classification;
        std::string cert;
        if (format == Format::jsonl) {
            const Json j = Json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("r") || !j.contains("n") ||
                !j.contains("classification") || !j["r"].is_number_unsigned() || !j["n"].is_number_unsigned())
                throw std::runtime_error("existing output line does not match scan schema");
            rec_r = j["r"].get<std::uint64_t>();
            n = j["n"].get<std::uint64_t>();
            classification = j["classification"].get<std::string>();
            if (j.contains("certificate")) cert = j["certificate"].value("type", "");
        } else {
            const auto fields = split_csv_simple(line);
            if (fields.size() != columns.size()) throw std::runtime_error("existing CSV row does not match scan schema");
            const auto pr = parse_exact_uint(fields[0]);
            const auto pn = parse_exact_uint(fields[1]);
            if (!pr || !pn) throw std::runtime_error("existing CSV row has malformed r or n");
            rec_r = *pr;
            n = *pn;
            classification = fields[2];
            cert = fields[3];
        }
        if (rec_r != r) throw std::runtime_error("existing output was produced for a different r");
        if (n < range.first || n > range.last) throw std::runtime_error("existing output has n outside the requested range");
        tally_existing(state, n, classification, cert);
    }
    if (format == Format::csv && first && state.has_content)
        throw std::runtime_error("existing CSV output has no header");
    return state;
}

int run_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::uint64_t r = param(config, "r");
    const NRange range{param(config, "n-start"), param(config, "n-end")};
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (range.first < 1) throw std::invalid_argument("n-start must be >= 1");
    if (range.first > range.last) throw std::invalid_argument("empty range: n-start > n-end");

    ResumeState resume;
    const bool resumable = config.output_path && config.format != Format::human;
    if (resumable) resume = load_existing(*config.output_path, config.format, r, range);

    Output sink(config, out, resumable);
    RecordWriter writer(sink.stream(), config.format, instance_columns(), !resume.has_content);

    ScanOptions options;
    options.budget = budget_of(config);
    options.threads = config.threads;
    ScanReport report = scan_density(
        r, range, options, [&](std::uint64_t n, const Classification& c) { writer.write(instance_record({r, n}, c)); },
        [&](std::uint64_t n) { return resume.done.count(n) > 0; });
    sink.stream().flush();

    report.counts += resume.tally;
    report.integral_witnesses.insert(report.integral_witnesses.end(), resume.integral.begin(), resume.integral.end());
    std::sort(report.integral_witnesses.begin(), report.integral_witnesses.end());

    Json summary;
    summary["r"] = r;
    summary["n_start"] = range.first;
    summary["n_end"] = range.last;
    summary["resumed"] = resume.done.size();
    summary["counts"] = tally_to_json(report.counts);
    summary["integral_witnesses"] = report.integral_witnesses;
    summary["undecided_sample"] = report.undecided_list;
    summary["elapsed_seconds"] = report.elapsed_seconds;
    err << Json{{"summary", summary}}.dump() << '\n';
    return report.counts.oracle_integral > 0 ? kExitIntegralFound : kExitOk;
}

int run_lemma2(const RunConfig& config, std::ostream& out) {
    const std::uint64_t r = param(config, "r");
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    TupleThresholds th;
    if (auto it = config.exponents.find("interval-exponent"); it != config.exponents.end()) th.interval = it->second;
    if (auto it = config.exponents.find("order-exponent"); it != config.exponents.end()) th.order = it->second;
    if (auto it = config.exponents.find("gcd-exponent"); it != config.exponents.end()) th.gcd = it->second;
    if (auto it = config.exponents.find("m-exponent"); it != config.exponents.end()) th.m_bound = it->second;
    const TupleSearch search = find_tuple(r, th);
    Json j;
    j["r"] = r;
    j["interval_width"] = search.interval_width;
    j["primes_in_interval"] = search.primes_in_interval;
    j["primes_passing_order"] = search.primes_passing_order;
    j["compatible_pairs"] = search.compatible_pairs;
    j["nodes_visited"] = search.nodes_visited;
    j["node_limit_hit"] = search.node_limit_hit;
    j["found"] = search.witness.has_value();
    bool verified = true;
    if (search.witness) {
        const TupleCheck check = verify_tuple(*search.witness, th);
        verified = check.ok();
        j["witness"] = tuple_to_json(*search.witness);
        j["check"] = tuple_check_to_json(check);
    }
    Output sink(config, out, false);
    RecordWriter(sink.stream(), config.format,
                 {"r", "interval_width", "primes_in_interval", "primes_passing_order", "compatible_pairs", "found",
                  "witness_primes", "witness_orders", "witness_lcm_m", "check_conditions", "check_m_bound"},
                 true)
        .write(j);
    return verified ? kExitOk : kExitCheckFailed;
}

int run_census(const RunConfig& config, std::ostream& out) {
    const std::uint64_t t = param(config, "t");
    const Census census = small_order_census(t, config.threads);
    Json j;
    j["t"] = t;
    j["count"] = census.count();
    j["within_bound"] = census_within_bound(census.count(), t);
    j["primes"] = census.primes;
    Output sink(config, out, false);
    RecordWriter(sink.stream(), config.format, {"t", "count", "within_bound", "primes"}, true).write(j);
    return kExitOk;
}

int run_msmooth(const RunConfig& config, std::ostream& out) {
    const SmoothStats s = m_of_r(param(config, "r"), param(config, "n-max"));
    Json j;
    j["r"] = s.r;
    j["n_max"] = s.n_max;
    j["m_max"] = s.m_max;
    j["argmax_n"] = s.argmax_n;
    j["exceeds_log"] = s.exceeds_log;
    Output sink(config, out, false);
    RecordWriter(sink.stream(), config.format, {"r", "n_max", "m_max", "argmax_n", "exceeds_log"}, true).write(j);
    return kExitOk;
}

int run_gaps(const RunConfig& config, std::ostream& out) {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (const auto n = maybe_param(config, "n")) {
        lo = hi = *n;
    } else {
        lo = param(config, "n-start");
        hi = param(config, "n-end");
    }
    if (lo < 1 || lo > hi) throw std::invalid_argument("gaps needs 1 <= n-start <= n-end");
    if (hi - lo >= kDefaultMaxScanRange) throw std::invalid_argument("gaps range too large");
    Output sink(config, out, false);
    RecordWriter writer(sink.stream(), config.format, {"n", "next_prime", "gap", "gap20_vs_n", "gap11_vs_n"}, true);
    for (std::uint64_t n = lo;; ++n) {
        const GapProbe g = gap_probe(n);
        Json j;
        j["n"] = g.n;
        j["next_prime"] = g.next_prime;
        j["gap"] = g.gap;
        j["gap20_vs_n"] = ordering_name(g.gap20_vs_n);
        j["gap11_vs_n"] = ordering_name(g.gap11_vs_n);
        writer.write(j);
        if (n == hi) break;
    }
    return kExitOk;
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact evaluation and nonintegrality certificates for binomial sums S_r(n)", "nonint"};
    app.require_subcommand(1);

    std::string oracle_cutoff = std::to_string(kDefaultOracleCutoff);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::string threads = std::to_string(hw);
    std::string format = "jsonl";
    std::string out_path;
    app.add_option("--oracle-cutoff", oracle_cutoff, "Largest n evaluated by the exact oracle (default 3000)")
        ->type_name("UINT");
    app.add_option("--threads", threads, "Worker threads (default: hardware concurrency)")->type_name("UINT");
    app.add_option("--format", format, "Output format: jsonl, csv or human")->type_name("FORMAT");
    app.add_option("--out", out_path, "Output file (scan resumes from an existing file)")->type_name("PATH");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : subcommand_specs()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->fallthrough();
        auto& slot = values[spec.name];
        for (const auto& [flag, desc] : spec.flags) sub->add_option(std::string("--") + flag, slot[flag], desc)->type_name("UINT");
        if (std::string(spec.name) == "lemma2")
            for (const auto& flag : kExponentFlags)
                sub->add_option("--" + flag, slot[flag], "Threshold exponent as p/q")->type_name("P/Q");
        subs[spec.name] = sub;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {std::nullopt, kExitOk};
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitUsage};
    }

    RunConfig config;
    const auto fail = [&](const std::string& msg) -> ParseOutcome {
        err << "error: " << msg << '\n';
        return {std::nullopt, kExitUsage};
    };
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) config.subcommand = name;

    const auto cutoff = parse_exact_uint(oracle_cutoff);
    if (!cutoff || *cutoff < 1) return fail("--oracle-cutoff must be a positive decimal integer");
    config.oracle_cutoff = *cutoff;
    const auto thread_count = parse_exact_uint(threads);
    if (!thread_count || *thread_count < 1 || *thread_count > 4096) return fail("--threads must be in [1, 4096]");
    config.threads = static_cast<unsigned>(*thread_count);
    const auto fmt = parse_format(format);
    if (!fmt) return fail("--format must be jsonl, csv or human");
    config.format = *fmt;
    if (!out_path.empty()) config.output_path = out_path;

    for (const auto& [flag, text] : values[config.subcommand]) {
        if (text.empty()) continue;
        if (std::find(kExponentFlags.begin(), kExponentFlags.end(), flag) != kExponentFlags.end()) {
            const auto e = parse_exponent(text);
            if (!e) return fail("--" + flag + " must be a positive rational p/q");
            config.exponents[flag] = *e;
            continue;
        }
        const auto v = parse_exact_uint(text);
        if (!v) return fail("--" + flag + " must be a nonnegative decimal integer, got '" + text + "'");
        config.parameters[flag] = *v;
    }
    return {std::move(config), kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const std::string& cmd = config.subcommand;
        if (cmd == "oracle") return run_oracle(config, out);
        if (cmd == "identity") return run_identity(config, out, err);
        if (cmd == "certify") return run_certify(config, out);
        if (cmd == "scan") return run_scan(config, out, err);
        if (cmd == "lemma2") return run_lemma2(config, out);
        if (cmd == "census") return run_census(config, out);
        if (cmd == "msmooth") return run_msmooth(config, out);
        if (cmd == "gaps") return run_gaps(config, out);
        err << "error: unknown subcommand '" << cmd << "'\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const ParseOutcome parsed = parse_args(args, std::cout, std::cerr);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config, std::cout, std::cerr);
}

}  // namespace nonint::cli
