#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nonint/experiments.hpp"
#include "nonint/integrality.hpp"

namespace nonint {

using Json = nlohmann::ordered_json;

enum class Format { jsonl, csv, human };

std::optional<Format> parse_format(std::string_view name);

/// Stable names used in the classification field.
std::string_view classification_name(const Classification& c);
std::string_view certificate_name(const Certificate& c);

Json certificate_to_json(const Certificate& c);
/// Throws std::invalid_argument on malformed input.
Certificate certificate_from_json(const Json& j);

/// {r, n, classification, certificate?, value_numerator?, value_denominator?, reason?}
/// Big integers are decimal strings.
Json instance_record(const Instance& inst, const Classification& c);

Json tuple_to_json(const TupleWitness& w);
Json tuple_check_to_json(const TupleCheck& c);
Json tally_to_json(const Tally& t);

/// Flattens nested objects with '_' joined keys (certificate.p -> certificate_p).
Json flatten(const Json& record);

/// Fixed-column CSV rendering of flattened records; absent keys stay empty.
std::string csv_header(const std::vector<std::string>& columns);
std::string csv_row(const Json& record, const std::vector<std::string>& columns);

/// "key=value" pairs on one line.
std::string human_line(const Json& record);

/// Column set for scan/certify output.
const std::vector<std::string>& instance_columns();

}  // namespace nonint
