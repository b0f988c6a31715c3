#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "qrmark/rng.hpp"
#include "qrmark/rs.hpp"
#include "qrmark/sched.hpp"

namespace testutil {

// Independent GF(2^m) multiplication oracle: carry-less multiply followed by
// long division by the reduction polynomial. Deliberately avoids the
// library's log/antilog tables.
inline uint16_t clmul_mod(uint16_t a, uint16_t b, uint32_t poly, int m) {
    uint32_t acc = 0;
    for (int i = 0; i < m; ++i)
        if ((b >> i) & 1) acc ^= static_cast<uint32_t>(a) << i;
    for (int d = 2 * m - 2; d >= m; --d)
        if ((acc >> d) & 1) acc ^= poly << (d - m);
    return static_cast<uint16_t>(acc);
}

inline qrmark::BitVec random_bits(qrmark::CounterRng& rng, size_t n) {
    qrmark::BitVec bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = rng.next() & 1;
    return bits;
}

// Exhaustive makespan optimum: assign each task latency to one of `streams`.
inline double brute_force_makespan(const std::vector<double>& latencies, int streams) {
    size_t n = latencies.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> loads(streams, 0.0);
    // Odometer over streams^n assignments.
    std::vector<int> assign(n, 0);
    while (true) {
        std::fill(loads.begin(), loads.end(), 0.0);
        for (size_t i = 0; i < n; ++i) loads[assign[i]] += latencies[i];
        best = std::min(best, *std::max_element(loads.begin(), loads.end()));
        size_t pos = 0;
        while (pos < n && ++assign[pos] == streams) assign[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

// Exhaustive optimum of the stream-allocation bottleneck over all s with
// s_k >= 1 and sum s <= budget, at a fixed uniform mini-batch.
inline double brute_force_bottleneck(const qrmark::StageProfile& profile, int budget, int minibatch) {
    int stages = profile.stages();
    std::vector<int> s(stages, 1);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        int total = 0;
        for (int v : s) total += v;
        if (total <= budget) {
            double worst = 0.0;
            for (int k = 0; k < stages; ++k)
                worst = std::max(worst, qrmark::stage_time(profile, k, s[k], minibatch));
            best = std::min(best, worst);
        }
        int pos = 0;
        while (pos < stages && ++s[pos] > budget) s[pos++] = 1;
        if (pos == stages) break;
    }
    return best;
}

} // namespace testutil
