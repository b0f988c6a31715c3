#include "qrmark/detect.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <thread>

namespace qrmark {

DetectionConfig DetectionConfig::make(const CodeParams& code, const TileSpec& tile, uint64_t key_seed,
                                      double alpha, BitVec key_message) {
    if (static_cast<int>(key_message.size()) != code.message_bits())
        throw InvalidInput("key message length does not match code profile");
    DetectionConfig cfg;
    cfg.code = code;
    cfg.tile = tile;
    cfg.key = WatermarkKey{key_seed, code.codeword_bits(), alpha};
    cfg.key_message = std::move(key_message);
    return cfg;
}

bool semantic_equal(const DetectionRecord& a, const DetectionRecord& b) {
    return a.image_index == b.image_index && a.raw_bits == b.raw_bits && a.corrected == b.corrected &&
           a.errors_corrected == b.errors_corrected && a.bit_acc == b.bit_acc &&
           a.verified == b.verified && a.error == b.error;
}

int verify_threshold(int n_bits, double fpr_target) {
    if (n_bits <= 0 || fpr_target <= 0.0 || fpr_target >= 1.0)
        throw InvalidInput("verify threshold needs n_bits > 0 and fpr in (0, 1)");

    if (n_bits <= 64) {
        // Exact integer tail: sum_{j>=tau} C(N,j) <= fpr * 2^N.
        long double bound = static_cast<long double>(fpr_target) * std::pow(2.0L, static_cast<long double>(n_bits));
        unsigned __int128 binom = 1; // C(N, N)
        unsigned __int128 tail = 0;
        int tau = n_bits + 1;
        for (int j = n_bits; j >= 0; --j) {
            tail += binom;
            if (static_cast<long double>(tail) <= bound)
                tau = j;
            else
                break;
            if (j > 0) binom = binom * static_cast<unsigned>(j) / static_cast<unsigned>(n_bits - j + 1);
        }
        return tau;
    }

    // Log-gamma tail for wide payloads.
    long double log2v = std::log(2.0L);
    long double tail = 0.0L;
    int tau = n_bits + 1;
    for (int j = n_bits; j >= 0; --j) {
        long double log_term = lgammal(n_bits + 1.0L) - lgammal(j + 1.0L) -
                               lgammal(n_bits - j + 1.0L) - n_bits * log2v;
        tail += std::exp(log_term);
        if (tail <= static_cast<long double>(fpr_target))
            tau = j;
        else
            break;
    }
    return tau;
}

bool verify(const BitVec& a, const BitVec& b, double fpr_target) {
    if (a.size() != b.size()) throw InvalidInput("verify inputs differ in length");
    int matches = 0;
    for (size_t i = 0; i < a.size(); ++i) matches += (a[i] == b[i]);
    return matches >= verify_threshold(static_cast<int>(a.size()), fpr_target);
}

namespace {

std::string pack_bits(const BitVec& bits) {
    std::string key((bits.size() + 7) / 8, '\0');
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) key[i / 8] |= static_cast<char>(1 << (i % 8));
    return key;
}

} // namespace

std::pair<std::optional<DecodeResult>, bool> CorrectionCache::correct(const BitVec& raw,
                                                                      const CodeParams& params) {
    std::string key = pack_bits(raw);
    {
        std::lock_guard lock(mu_);
        ++tick_;
        ++lookups_;
        evict_locked();
        auto it = map_.find(key);
        if (it != map_.end()) {
            ++hits_;
            it->second.last_access = tick_;
            return {it->second.result, true};
        }
    }

    // Decode outside the lock; a concurrent miss on the same word computes
    // the same value.
    std::optional<DecodeResult> result = bw_decode(raw, params);
    {
        std::lock_guard lock(mu_);
        auto [it, inserted] = map_.try_emplace(std::move(key));
        it->second.result = result;
        it->second.last_access = tick_;
        evict_locked();
    }
    return {std::move(result), false};
}

void CorrectionCache::evict_locked() {
    for (auto it = map_.begin(); it != map_.end();) {
        if (tick_ - it->second.last_access > cfg_.stale_after)
            it = map_.erase(it);
        else
            ++it;
    }
    while (map_.size() > cfg_.capacity) {
        auto oldest = map_.begin();
        for (auto it = map_.begin(); it != map_.end(); ++it)
            if (it->second.last_access < oldest->second.last_access) oldest = it;
        map_.erase(oldest);
    }
}

size_t CorrectionCache::size() const {
    std::lock_guard lock(mu_);
    return map_.size();
}

DetectionContext::DetectionContext(const DetectionConfig& cfg)
    : cfg_(cfg),
      codec_(cfg.key, cfg.tile.size),
      key_codeword_(rs_encode(cfg.key_message, cfg.code)),
      tau_message_(verify_threshold(cfg.code.message_bits(), cfg.fpr_target)),
      tau_raw_(verify_threshold(cfg.code.codeword_bits(), cfg.fpr_target)),
      cache_(cfg.cache) {
    if (cfg.key.n_bits != cfg.code.codeword_bits())
        throw InvalidInput("key payload width must equal the codeword width");
    if (cfg.rs_workers < 1) throw InvalidInput("rs_workers must be >= 1");
    if (cfg.fpr_target <= 0.0 || cfg.fpr_target >= 1.0) throw InvalidInput("fpr target must be in (0, 1)");
}

namespace {

using Clock = std::chrono::steady_clock;

int64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count();
}

int count_matches(const BitVec& a, const BitVec& b) {
    int matches = 0;
    for (size_t i = 0; i < a.size(); ++i) matches += (a[i] == b[i]);
    return matches;
}

} // namespace

DetectionRecord DetectionContext::detect_one(const ImageBuffer& img, uint64_t draw_index) {
    DetectionRecord rec;
    rec.image_index = draw_index;

    auto t0 = Clock::now();
    ImageBuffer pre = preprocess(img);
    auto t1 = Clock::now();
    TileRef tile = select_tile(pre, cfg_.tile, draw_index);
    SoftBits soft = codec_.extract(extract_tile(pre, tile));
    rec.raw_bits = harden(soft);
    auto t2 = Clock::now();

    std::optional<DecodeResult> decoded;
    if (cfg_.cache.enabled) {
        auto [result, hit] = cache_.correct(rec.raw_bits, cfg_.code);
        decoded = std::move(result);
        rec.cache_hit = hit;
    } else {
        decoded = bw_decode(rec.raw_bits, cfg_.code);
    }
    auto t3 = Clock::now();

    rec.bit_acc = bit_accuracy(rec.raw_bits, key_codeword_);
    if (decoded) {
        rec.corrected = decoded->message;
        rec.errors_corrected = decoded->errors_corrected;
        rec.verified = count_matches(decoded->message, cfg_.key_message) >= tau_message_;
    } else {
        // Decode failed; fall back to a bit-level comparison of the raw word
        // against the key codeword under the same tail rule.
        rec.verified = count_matches(rec.raw_bits, key_codeword_) >= tau_raw_;
    }
    rec.stage_ns = {elapsed_ns(t0, t1), elapsed_ns(t1, t2), elapsed_ns(t2, t3)};
    return rec;
}

DetectionRecord detect_one(const ImageBuffer& img, const DetectionConfig& cfg) {
    DetectionContext ctx(cfg);
    return ctx.detect_one(img, 0);
}

namespace {

// Bounded MPMC queue with blocking push (backpressure) and pop.
template <typename T>
class BoundedQueue {
public:
    explicit BoundedQueue(size_t capacity) : capacity_(std::max<size_t>(1, capacity)) {}

    void push(T item) {
        std::unique_lock lock(mu_);
        not_full_.wait(lock, [&] { return items_.size() < capacity_; });
        items_.push_back(std::move(item));
        not_empty_.notify_one();
    }

    std::optional<T> pop() {
        std::unique_lock lock(mu_);
        not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
        if (items_.empty()) return std::nullopt;
        T item = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return item;
    }

    void close() {
        std::lock_guard lock(mu_);
        closed_ = true;
        not_empty_.notify_all();
    }

private:
    size_t capacity_;
    std::mutex mu_;
    std::condition_variable not_full_, not_empty_;
    std::deque<T> items_;
    bool closed_ = false;
};

void synthetic_wait(int64_t ns) {
    if (ns > 0) std::this_thread::sleep_for(std::chrono::nanoseconds(ns));
}

} // namespace

std::vector<DetectionRecord> detect_batch(std::span<const ImageBuffer> images,
                                          const DetectionConfig& cfg, const StreamPlan* plan,
                                          const SyntheticStageLoad* load, DeskReport* report) {
    DetectionContext ctx(cfg);
    std::vector<DetectionRecord> records(images.size());
    if (images.empty()) {
        if (report) *report = DeskReport{};
        return records;
    }

    int pre_workers = 1, extract_workers = 1, correct_workers = cfg.rs_workers;
    int queue_batch = 16;
    if (plan) {
        if (plan->streams.size() != 3) throw InvalidInput("detect pipeline expects a 3-stage plan");
        pre_workers = std::max(1, plan->streams[0]);
        extract_workers = std::max(1, plan->streams[1]);
        correct_workers = std::max(1, plan->streams[2]);
        queue_batch = std::max(1, *std::max_element(plan->minibatch.begin(), plan->minibatch.end()));
    }
    // Queue capacity bounds memory at twice the stage mini-batch (clamped so
    // huge mini-batches cannot balloon the buffers).
    size_t queue_cap = std::clamp<size_t>(2 * static_cast<size_t>(queue_batch), 2, 128);

    struct PreItem {
        size_t index;
        ImageBuffer normalized;
        int64_t preprocess_ns;
    };
    struct RawItem {
        size_t index;
        BitVec raw;
        int64_t preprocess_ns;
        int64_t extract_ns;
    };

    BoundedQueue<PreItem> pre_queue(queue_cap);
    BoundedQueue<RawItem> raw_queue(queue_cap);
    std::atomic<size_t> next_image{0};
    std::array<std::atomic<int64_t>, 3> busy{0, 0, 0};

    SyntheticStageLoad stage_load = load ? *load : SyntheticStageLoad{};

    auto wall_start = Clock::now();

    std::vector<std::thread> pre_pool, extract_pool, correct_pool;
    for (int w = 0; w < pre_workers; ++w) {
        pre_pool.emplace_back([&] {
            while (true) {
                size_t i = next_image.fetch_add(1);
                if (i >= images.size()) break;
                auto t0 = Clock::now();
                ImageBuffer norm = preprocess(images[i]);
                synthetic_wait(stage_load.preprocess_ns);
                int64_t ns = elapsed_ns(t0, Clock::now());
                busy[0] += ns;
                pre_queue.push(PreItem{i, std::move(norm), ns});
            }
        });
    }
    for (int w = 0; w < extract_workers; ++w) {
        extract_pool.emplace_back([&] {
            while (auto item = pre_queue.pop()) {
                auto t0 = Clock::now();
                TileRef tile = select_tile(item->normalized, cfg.tile, item->index);
                SoftBits soft = ctx.codec().extract(extract_tile(item->normalized, tile));
                BitVec raw = harden(soft);
                synthetic_wait(stage_load.extract_ns);
                int64_t ns = elapsed_ns(t0, Clock::now());
                busy[1] += ns;
                raw_queue.push(RawItem{item->index, std::move(raw), item->preprocess_ns, ns});
            }
        });
    }
    for (int w = 0; w < correct_workers; ++w) {
        correct_pool.emplace_back([&] {
            while (auto item = raw_queue.pop()) {
                auto t0 = Clock::now();
                DetectionRecord rec;
                rec.image_index = item->index;
                rec.raw_bits = std::move(item->raw);
                std::optional<DecodeResult> decoded;
                if (cfg.cache.enabled) {
                    auto [result, hit] = ctx.cache().correct(rec.raw_bits, cfg.code);
                    decoded = std::move(result);
                    rec.cache_hit = hit;
                } else {
                    decoded = bw_decode(rec.raw_bits, cfg.code);
                }
                synthetic_wait(stage_load.correct_ns);
                rec.bit_acc = bit_accuracy(rec.raw_bits, ctx.key_codeword());
                if (decoded) {
                    rec.corrected = decoded->message;
                    rec.errors_corrected = decoded->errors_corrected;
                    rec.verified = verify(decoded->message, cfg.key_message, cfg.fpr_target);
                } else {
                    rec.verified = verify(rec.raw_bits, ctx.key_codeword(), cfg.fpr_target);
                }
                int64_t ns = elapsed_ns(t0, Clock::now());
                busy[2] += ns;
                rec.stage_ns = {item->preprocess_ns, item->extract_ns, ns};
                records[rec.image_index] = std::move(rec);
            }
        });
    }

    for (auto& t : pre_pool) t.join();
    pre_queue.close();
    for (auto& t : extract_pool) t.join();
    raw_queue.close();
    for (auto& t : correct_pool) t.join();

    if (report) {
        report->wall_ns = elapsed_ns(wall_start, Clock::now());
        report->stage_busy_ns = {busy[0].load(), busy[1].load(), busy[2].load()};
        report->stage_workers = {pre_workers, extract_workers, correct_workers};
        report->items = images.size();
    }
    return records;
}

} // namespace qrmark
