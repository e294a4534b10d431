#include "nonint/records.hpp"

#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace nonint {

std::optional<Format> parse_format(std::string_view name) {
    if (name == "jsonl") return Format::jsonl;
    if (name == "csv") return Format::csv;
    if (name == "human") return Format::human;
    return std::nullopt;
}

std::string_view classification_name(const Classification& c) {
    switch (c.index()) {
        case 0: return "certified_nonintegral";
        case 1: return "oracle_nonintegral";
        case 2: return "oracle_integral";
        default: return "undecided";
    }
}

std::string_view certificate_name(const Certificate& c) {
    switch (c.index()) {
        case 0: return "sylvester";
        case 1: return "order";
        default: return "smooth";
    }
}

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["type"] = certificate_name(c);
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SylvesterPrime>) {
                j["p"] = v.p;
                j["k0"] = v.k0;
            } else if constexpr (std::is_same_v<T, OrderCertificate>) {
                j["p"] = v.p;
                j["j"] = v.j;
                j["order2"] = v.order2;
            } else {
                j["m_value"] = v.m_value;
            }
        },
        c);
    return j;
}

Certificate certificate_from_json(const Json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "sylvester") return SylvesterPrime{j.at("p").get<std::uint64_t>(), j.at("k0").get<std::uint64_t>()};
        if (type == "order")
            return OrderCertificate{j.at("p").get<std::uint64_t>(), j.at("j").get<std::uint64_t>(),
                                    j.value("order2", std::uint64_t{0})};
        if (type == "smooth") return SmoothBound{j.at("m_value").get<std::uint64_t>()};
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
    throw std::invalid_argument("unknown certificate type");
}

Json instance_record(const Instance& inst, const Classification& c) {
    Json j;
    j["r"] = inst.r;
    j["n"] = inst.n;
    j["classification"] = classification_name(c);
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CertifiedNonintegral>) {
                j["certificate"] = certificate_to_json(v.certificate);
            } else if constexpr (std::is_same_v<T, Undecided>) {
                j["reason"] = v.reason;
            } else {
                j["value_numerator"] = v.value.numerator().get_str();
                j["value_denominator"] = v.value.denominator().get_str();
            }
        },
        c);
    return j;
}

Json tuple_to_json(const TupleWitness& w) {
    Json j;
    j["r"] = w.r;
    j["primes"] = w.primes;
    j["orders"] = w.orders;
    j["pair_gcds"] = w.pair_gcds;
    j["lcm_m"] = w.lcm_m.get_str();
    return j;
}

Json tuple_check_to_json(const TupleCheck& c) {
    Json j;
    j["distinct_ascending"] = c.distinct_ascending;
    j["all_prime"] = c.all_prime;
    j["in_interval"] = c.in_interval;
    j["orders_correct"] = c.orders_correct;
    j["orders_large"] = c.orders_large;
    j["gcds_correct"] = c.gcds_correct;
    j["gcds_small"] = c.gcds_small;
    j["lcm_correct"] = c.lcm_correct;
    j["m_bound"] = c.m_bound;
    j["conditions"] = c.conditions();
    return j;
}

Json tally_to_json(const Tally& t) {
    Json j;
    j["sylvester"] = t.sylvester;
    j["order"] = t.order;
    j["smooth"] = t.smooth;
    j["oracle_nonintegral"] = t.oracle_nonintegral;
    j["oracle_integral"] = t.oracle_integral;
    j["undecided"] = t.undecided;
    j["total"] = t.total();
    return j;
}

namespace {

void flatten_into(const Json& value, const std::string& prefix, Json& out) {
    if (value.is_object()) {
        for (const auto& [key, child] : value.items())
            flatten_into(child, prefix.empty() ? key : prefix + "_" + key, out);
        return;
    }
    out[prefix] = value;
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

Json flatten(const Json& record) {
    Json out = Json::object();
    flatten_into(record, "", out);
    return out;
}

std::string csv_header(const std::vector<std::string>& columns) {
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) line += (i ? "," : "") + columns[i];
    return line;
}

std::string csv_row(const Json& record, const std::vector<std::string>& columns) {
    const Json flat = flatten(record);
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) line += ',';
        if (const auto it = flat.find(columns[i]); it != flat.end()) line += csv_escape(scalar_text(*it));
    }
    return line;
}

std::string human_line(const Json& record) {
    const Json flat = flatten(record);
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, value] : flat.items()) {
        os << (first ? "" : " ") << key << '=' << scalar_text(value);
        first = false;
    }
    return os.str();
}

const std::vector<std::string>& instance_columns() {
    static const std::vector<std::string> columns{
        "r", "n", "classification", "certificate_type", "certificate_p", "certificate_k0", "certificate_j",
        "certificate_order2", "certificate_m_value", "value_numerator", "value_denominator", "reason"};
    return columns;
}

}  // namespace nonint
