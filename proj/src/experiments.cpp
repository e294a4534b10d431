#include "nonint/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <future>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "nonint/ntkernel.hpp"

namespace nonint {

void Tally::add(const Classification& c) {
    std::visit(
        [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CertifiedNonintegral>) {
                switch (v.certificate.index()) {
                    case 0: ++sylvester; break;
                    case 1: ++order; break;
                    default: ++smooth; break;
                }
            } else if constexpr (std::is_same_v<T, OracleNonintegral>) {
                ++oracle_nonintegral;
            } else if constexpr (std::is_same_v<T, OracleIntegral>) {
                ++oracle_integral;
            } else {
                ++undecided;
            }
        },
        c);
}

Tally& Tally::operator+=(const Tally& other) {
    sylvester += other.sylvester;
    order += other.order;
    smooth += other.smooth;
    oracle_nonintegral += other.oracle_nonintegral;
    oracle_integral += other.oracle_integral;
    undecided += other.undecided;
    return *this;
}

namespace {

std::vector<std::uint64_t> merged_sorted(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ChunkResult {
    std::vector<std::pair<std::uint64_t, Classification>> records;
};

}  // namespace

ScanReport merge(const ScanReport& a, const ScanReport& b, std::size_t undecided_cap) {
    if (a.r != b.r) throw std::invalid_argument("merge: reports for different r");
    ScanReport out;
    out.r = a.r;
    out.range = {std::min(a.range.first, b.range.first), std::max(a.range.last, b.range.last)};
    out.counts = a.counts;
    out.counts += b.counts;
    out.integral_witnesses = merged_sorted(a.integral_witnesses, b.integral_witnesses);
    out.undecided_list = merged_sorted(a.undecided_list, b.undecided_list);
    if (out.undecided_list.size() > undecided_cap) out.undecided_list.resize(undecided_cap);
    out.elapsed_seconds = a.elapsed_seconds + b.elapsed_seconds;
    return out;
}

ScanReport scan_density(std::uint64_t r, NRange range, const ScanOptions& options, const RecordSink& sink,
                        const SkipPredicate& skip) {
    validate(Instance{r, std::max<std::uint64_t>(range.last, 1)});
    if (range.first < 1) throw std::invalid_argument("scan range must start at n >= 1");
    if (range.first > range.last) throw std::invalid_argument("empty scan range");
    if (range.size() - 1 >= options.max_range) throw std::length_error("scan range exceeds configured maximum");

    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t chunk = std::max<std::uint64_t>(options.chunk_size, 1);
    const std::uint64_t chunks = (range.size() + chunk - 1) / chunk;
    const unsigned workers = std::max(1u, options.threads);
    const std::uint64_t max_inflight = std::uint64_t{workers} * 4;

    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::optional<ChunkResult>> window;  // slot i holds chunk (emitted + i)
    std::uint64_t emitted = 0;
    std::uint64_t next_chunk = 0;
    std::exception_ptr failure;

    const auto work = [&] {
        for (;;) {
            std::uint64_t idx = 0;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] { return failure || next_chunk >= chunks || next_chunk < emitted + max_inflight; });
                if (failure || next_chunk >= chunks) return;
                idx = next_chunk++;
            }
            ChunkResult result;
            try {
                const std::uint64_t lo = range.first + idx * chunk;
                const std::uint64_t hi = std::min(range.last, lo + (chunk - 1));
                for (std::uint64_t n = lo;; ++n) {
                    if (!skip || !skip(n)) result.records.emplace_back(n, classify(Instance{r, n}, options.budget));
                    if (n == hi) break;
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                cv.notify_all();
                return;
            }
            std::lock_guard lock(mu);
            const std::uint64_t slot = idx - emitted;
            if (window.size() <= slot) window.resize(slot + 1);
            window[slot] = std::move(result);
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);

    ScanReport report;
    report.r = r;
    report.range = range;
    try {
        while (emitted < chunks) {
            ChunkResult ready;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] { return failure || (!window.empty() && window.front().has_value()); });
                if (failure) break;
                ready = std::move(*window.front());
                window.pop_front();
                ++emitted;
                cv.notify_all();
            }
            for (const auto& [n, c] : ready.records) {
                report.counts.add(c);
                if (std::holds_alternative<OracleIntegral>(c)) report.integral_witnesses.push_back(n);
                if (std::holds_alternative<Undecided>(c) && report.undecided_list.size() < options.undecided_cap)
                    report.undecided_list.push_back(n);
                if (sink) sink(n, c);
            }
        }
    } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        cv.notify_all();
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

// ---------------------------------------------------------------------------

namespace {

bool below_power(std::uint64_t value, std::uint64_t r, Exponent e) {
    return power_compare(to_exact(value), to_exact(r), e.num, e.den) == std::strong_ordering::less;
}

bool above_power(std::uint64_t value, std::uint64_t r, Exponent e) {
    return power_compare(to_exact(value), to_exact(r), e.num, e.den) == std::strong_ordering::greater;
}

std::uint64_t interval_width(std::uint64_t r, Exponent e) { return to_u64(floor_power(to_exact(r), e.num, e.den)); }

}  // namespace

ExactInteger tuple_lcm(const TupleWitness& w) {
    std::array<std::size_t, kTupleSize> idx{};
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w.primes[a] < w.primes[b]; });
    ExactInteger m = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        mpz_lcm_ui(m.get_mpz_t(), m.get_mpz_t(), w.primes[idx[i]]);
        mpz_lcm_ui(m.get_mpz_t(), m.get_mpz_t(), w.orders[idx[i]]);
    }
    return m;
}

TupleSearch find_tuple(std::uint64_t r, const TupleThresholds& thresholds, std::uint64_t node_limit) {
    if (r < 2) throw std::invalid_argument("find_tuple: r must be >= 2");
    TupleSearch out;
    out.interval_width = interval_width(r, thresholds.interval);
    if (out.interval_width == 0) return out;
    if (r > std::numeric_limits<std::uint64_t>::max() - out.interval_width)
        throw std::invalid_argument("find_tuple: interval leaves the 64-bit domain");

    const std::vector<std::uint64_t> primes = primes_in(r + 1, r + out.interval_width);
    out.primes_in_interval = primes.size();

    std::vector<std::uint64_t> pool;
    std::vector<std::uint64_t> orders;
    for (const std::uint64_t p : primes) {
        if (p == 2) continue;
        const std::uint64_t ord = order2(p);
        if (!above_power(ord, r, thresholds.order)) continue;
        pool.push_back(p);
        orders.push_back(ord);
    }
    out.primes_passing_order = pool.size();

    const std::size_t size = pool.size();
    std::vector<std::vector<bool>> compatible(size, std::vector<bool>(size, false));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) {
            const bool ok = below_power(std::gcd(pool[i] - 1, pool[j] - 1), r, thresholds.gcd);
            compatible[i][j] = compatible[j][i] = ok;
            out.compatible_pairs += ok ? 1 : 0;
        }

    std::vector<std::size_t> chosen;
    const auto extend = [&](auto&& self, std::size_t from) -> bool {
        if (chosen.size() == kTupleSize) return true;
        for (std::size_t i = from; i + (kTupleSize - chosen.size()) <= size; ++i) {
            if (++out.nodes_visited > node_limit) {
                out.node_limit_hit = true;
                return false;
            }
            if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return compatible[c][i]; }))
                continue;
            chosen.push_back(i);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
            if (out.node_limit_hit) return false;
        }
        return false;
    };
    if (!extend(extend, 0)) return out;

    TupleWitness w;
    w.r = r;
    for (std::size_t i = 0; i < kTupleSize; ++i) {
        w.primes[i] = pool[chosen[i]];
        w.orders[i] = orders[chosen[i]];
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < kTupleSize; ++i)
        for (std::size_t j = i + 1; j < kTupleSize; ++j) w.pair_gcds[k++] = std::gcd(w.primes[i] - 1, w.primes[j] - 1);
    w.lcm_m = tuple_lcm(w);
    out.witness = std::move(w);
    return out;
}

TupleCheck verify_tuple(const TupleWitness& w, const TupleThresholds& thresholds) {
    TupleCheck check;
    if (w.r < 2) return check;
    check.distinct_ascending = std::adjacent_find(w.primes.begin(), w.primes.end(),
                                                  [](std::uint64_t a, std::uint64_t b) { return a >= b; }) ==
                               w.primes.end();
    check.all_prime = std::all_of(w.primes.begin(), w.primes.end(), [](std::uint64_t p) { return p > 2 && is_prime(p); });
    const std::uint64_t width = interval_width(w.r, thresholds.interval);
    check.in_interval = std::all_of(w.primes.begin(), w.primes.end(),
                                    [&](std::uint64_t p) { return p > w.r && p - w.r <= width; });
    check.orders_correct = check.all_prime;
    for (std::size_t i = 0; i < kTupleSize && check.orders_correct; ++i)
        check.orders_correct = order2(w.primes[i]) == w.orders[i];
    check.orders_large = std::all_of(w.orders.begin(), w.orders.end(),
                                     [&](std::uint64_t o) { return above_power(o, w.r, thresholds.order); });
    check.gcds_correct = true;
    std::size_t k = 0;
    for (std::size_t i = 0; i < kTupleSize; ++i)
        for (std::size_t j = i + 1; j < kTupleSize; ++j, ++k)
            if (w.primes[i] == 0 || w.primes[j] == 0 || std::gcd(w.primes[i] - 1, w.primes[j] - 1) != w.pair_gcds[k])
                check.gcds_correct = false;
    check.gcds_small = std::all_of(w.pair_gcds.begin(), w.pair_gcds.end(),
                                   [&](std::uint64_t g) { return g >= 1 && below_power(g, w.r, thresholds.gcd); });
    check.lcm_correct = tuple_lcm(w) == w.lcm_m;
    check.m_bound = w.lcm_m >= 1 &&
                    power_compare(w.lcm_m, to_exact(w.r), thresholds.m_bound.num, thresholds.m_bound.den) ==
                        std::strong_ordering::greater;
    return check;
}

// ---------------------------------------------------------------------------

Census small_order_census(std::uint64_t t, unsigned threads, std::uint64_t limit) {
    if (t < 1) throw std::invalid_argument("census: t must be >= 1");
    if (t > limit) throw std::length_error("census: t exceeds configured limit");
    Census out;
    out.t = t;
    if (t < 3) return out;
    const std::vector<std::uint64_t> primes = primes_in(3, t, limit);
    const std::size_t parts = std::max(1u, threads);
    const std::size_t per = (primes.size() + parts - 1) / parts;
    std::vector<std::future<std::vector<std::uint64_t>>> futures;
    for (std::size_t begin = 0; begin < primes.size(); begin += per) {
        const std::size_t end = std::min(primes.size(), begin + per);
        futures.push_back(std::async(std::launch::async, [&primes, begin, end] {
            std::vector<std::uint64_t> hits;
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint64_t q = primes[i];
                if (power_compare(to_exact(order2(q)), to_exact(q), 3, 10) != std::strong_ordering::greater)
                    hits.push_back(q);
            }
            return hits;
        }));
    }
    for (auto& f : futures) {
        auto hits = f.get();
        out.primes.insert(out.primes.end(), hits.begin(), hits.end());
    }
    return out;
}

bool census_within_bound(std::uint64_t count, std::uint64_t t) {
    if (count == 0) return true;
    return power_compare(to_exact(count), to_exact(t), 3, 5) != std::strong_ordering::greater;
}

// ---------------------------------------------------------------------------

SmoothStats m_of_r(std::uint64_t r, std::uint64_t n_max, std::uint64_t work_limit) {
    validate(Instance{r, std::max<std::uint64_t>(n_max, 1)});
    if (n_max < 1) throw std::invalid_argument("m_of_r: n_max must be >= 1");
    if (n_max > work_limit / r) throw std::length_error("m_of_r: r * n_max exceeds work limit");

    SmoothStats out;
    out.r = r;
    out.n_max = n_max;
    // Sliding-window minimum of s_r(m) over m in [n+1, n+r].
    std::deque<std::pair<std::uint64_t, std::uint64_t>> window;  // (m, s_r(m)), s increasing
    const auto push = [&](std::uint64_t m) {
        const std::uint64_t s = smooth_divisor(r, m);
        while (!window.empty() && window.back().second >= s) window.pop_back();
        window.emplace_back(m, s);
    };
    for (std::uint64_t m = 2; m <= r; ++m) push(m);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        push(n + r);
        while (window.front().first <= n) window.pop_front();
        const std::uint64_t value = window.front().second;
        if (value > out.m_max) {
            out.m_max = value;
            out.argmax_n = n;
        }
    }
    out.exceeds_log = out.m_max >= 64 || (std::uint64_t{1} << out.m_max) > r;
    return out;
}

// ---------------------------------------------------------------------------

GapProbe gap_probe(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("gap_probe: n must be >= 1");
    GapProbe out;
    out.n = n;
    out.next_prime = next_prime(n);
    out.gap = out.next_prime - n;
    out.gap20_vs_n = power_compare(to_exact(out.gap), to_exact(n), 1, 20);
    out.gap11_vs_n = power_compare(to_exact(out.gap), to_exact(n), 1, 11);
    return out;
}

}  // namespace nonint
