#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nonint/exactnum.hpp"
#include "nonint/integrality.hpp"

namespace nonint {

/// Inclusive interval of n values.
struct NRange {
    std::uint64_t first;
    std::uint64_t last;
    [[nodiscard]] std::uint64_t size() const { return last - first + 1; }
};

struct Tally {
    std::uint64_t sylvester = 0;
    std::uint64_t order = 0;
    std::uint64_t smooth = 0;
    std::uint64_t oracle_nonintegral = 0;
    std::uint64_t oracle_integral = 0;
    std::uint64_t undecided = 0;

    [[nodiscard]] std::uint64_t certified() const { return sylvester + order + smooth; }
    [[nodiscard]] std::uint64_t total() const { return certified() + oracle_nonintegral + oracle_integral + undecided; }
    void add(const Classification& c);
    Tally& operator+=(const Tally& other);
    friend bool operator==(const Tally&, const Tally&) = default;
};

struct ScanReport {
    std::uint64_t r = 0;
    NRange range{1, 0};
    Tally counts;
    std::vector<std::uint64_t> integral_witnesses;
    std::vector<std::uint64_t> undecided_list;  // capped, ascending
    double elapsed_seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultMaxScanRange = 100'000'000;
inline constexpr std::size_t kDefaultUndecidedCap = 100;

struct ScanOptions {
    Budget budget;
    unsigned threads = 1;
    std::uint64_t chunk_size = 512;
    std::uint64_t max_range = kDefaultMaxScanRange;
    std::size_t undecided_cap = kDefaultUndecidedCap;
};

/// Receives every classified n in ascending order, always from the calling
/// thread.
using RecordSink = std::function<void(std::uint64_t n, const Classification&)>;
/// Values of n for which skip(n) is true are neither classified nor counted.
using SkipPredicate = std::function<bool(std::uint64_t n)>;

/// Classifies every n in the range for fixed r. Work is split into chunks
/// handled by a worker pool; the aggregate does not depend on the thread
/// count. Throws std::invalid_argument for an empty range and
/// std::length_error for one larger than options.max_range.
ScanReport scan_density(std::uint64_t r, NRange range, const ScanOptions& options = {},
                        const RecordSink& sink = {}, const SkipPredicate& skip = {});

/// Associative, order-independent combination of partial reports over
/// adjacent or disjoint ranges of the same r.
ScanReport merge(const ScanReport& a, const ScanReport& b, std::size_t undecided_cap = kDefaultUndecidedCap);

// ---------------------------------------------------------------------------
// Six primes just above r with large order of 2 and nearly coprime p - 1.

struct TupleThresholds {
    Exponent interval{61, 100};  // primes in (r, r + floor(r^interval)]
    Exponent order{3, 10};       // order2(p) > r^order
    Exponent gcd{1, 1000};       // gcd(p_i - 1, p_j - 1) < r^gcd
    Exponent m_bound{2597, 500}; // lcm M > r^m_bound
};

inline constexpr std::size_t kTupleSize = 6;
inline constexpr std::size_t kTuplePairs = kTupleSize * (kTupleSize - 1) / 2;

struct TupleWitness {
    std::uint64_t r = 0;
    std::array<std::uint64_t, kTupleSize> primes{};
    std::array<std::uint64_t, kTupleSize> orders{};
    /// gcd(p_i - 1, p_j - 1) for i < j in lexicographic pair order.
    std::array<std::uint64_t, kTuplePairs> pair_gcds{};
    /// lcm of the four smallest primes and their orders.
    ExactInteger lcm_m;
};

struct TupleSearch {
    std::optional<TupleWitness> witness;
    std::uint64_t interval_width = 0;  // floor(r^interval)
    std::size_t primes_in_interval = 0;
    std::size_t primes_passing_order = 0;
    std::size_t compatible_pairs = 0;
    std::uint64_t nodes_visited = 0;
    bool node_limit_hit = false;
};

inline constexpr std::uint64_t kDefaultTupleNodeLimit = 10'000'000;

/// Greedy depth-first search over order-filtered primes in ascending order;
/// the first tuple found is the lexicographically smallest one. Absence of a
/// witness is reported through the diagnostic counts.
TupleSearch find_tuple(std::uint64_t r, const TupleThresholds& thresholds = {},
                       std::uint64_t node_limit = kDefaultTupleNodeLimit);

struct TupleCheck {
    bool distinct_ascending = false;
    bool all_prime = false;
    bool in_interval = false;
    bool orders_correct = false;
    bool orders_large = false;
    bool gcds_correct = false;
    bool gcds_small = false;
    bool lcm_correct = false;
    /// M > r^m_bound. Follows from the other conditions in theory, so it is
    /// reported on its own rather than folded into conditions().
    bool m_bound = false;

    [[nodiscard]] bool conditions() const {
        return distinct_ascending && all_prime && in_interval && orders_correct && orders_large &&
               gcds_correct && gcds_small && lcm_correct;
    }
    [[nodiscard]] bool ok() const { return conditions() && m_bound; }
};

TupleCheck verify_tuple(const TupleWitness& w, const TupleThresholds& thresholds = {});

ExactInteger tuple_lcm(const TupleWitness& w);

// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultCensusLimit = 10'000'000;

struct Census {
    std::uint64_t t = 0;
    std::vector<std::uint64_t> primes;  // odd q <= t with order2(q)^10 <= q^3
    [[nodiscard]] std::size_t count() const { return primes.size(); }
};

/// Throws std::length_error when t exceeds limit.
Census small_order_census(std::uint64_t t, unsigned threads = 1, std::uint64_t limit = kDefaultCensusLimit);

/// count <= t^0.6, decided as count^5 <= t^3.
bool census_within_bound(std::uint64_t count, std::uint64_t t);

// ---------------------------------------------------------------------------

struct SmoothStats {
    std::uint64_t r = 0;
    std::uint64_t n_max = 0;
    std::uint64_t m_max = 0;
    std::uint64_t argmax_n = 0;  // least n attaining m_max
    bool exceeds_log = false;    // 2^m_max > r
};

inline constexpr std::uint64_t kDefaultSmoothWorkLimit = 10'000'000'000ULL;

/// Empirical lower bound for M(r) = max_n M_r(n) over 1 <= n <= n_max.
/// Throws std::length_error when r * n_max exceeds work_limit.
SmoothStats m_of_r(std::uint64_t r, std::uint64_t n_max, std::uint64_t work_limit = kDefaultSmoothWorkLimit);

// ---------------------------------------------------------------------------

struct GapProbe {
    std::uint64_t n = 0;
    std::uint64_t next_prime = 0;
    std::uint64_t gap = 0;
    std::strong_ordering gap20_vs_n = std::strong_ordering::equal;  // gap^20 against n
    std::strong_ordering gap11_vs_n = std::strong_ordering::equal;  // gap^11 against n
};

GapProbe gap_probe(std::uint64_t n);

}  // namespace nonint
