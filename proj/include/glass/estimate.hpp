#pragma once

// Entropy estimation from simulated symbol sequences: distinct-block
// counting, growth curves and least-squares slope fits of log2 |B_n| vs n.
//
// Windows are keyed by a 122-bit rolling hash (two lanes mod 2^61-1) and
// every hash hit is verified against the stored window content, so counts
// stay exact while memory scales with the number of distinct blocks.

#include <glass/cones.hpp>
#include <glass/dynamics.hpp>

#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace glass {

using Symbol = std::uint32_t;

namespace detail {

constexpr std::uint64_t kHashP = (std::uint64_t{1} << 61) - 1;  // Mersenne prime
constexpr std::uint64_t kBase1 = 0x9E3779B97F4A7C15ull % kHashP;
constexpr std::uint64_t kBase2 = 0xC2B2AE3D27D4EB4Full % kHashP;

inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kHashP);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kHashP) s -= kHashP;
    return s;
}

inline std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kHashP) s -= kHashP;
    return s;
}

inline std::uint64_t submod61(std::uint64_t a, std::uint64_t b) {
    return addmod61(a, kHashP - b);
}

struct Hash128 {
    std::uint64_t h1 = 0, h2 = 0;
    bool operator==(const Hash128&) const = default;
};

struct Hash128Hasher {
    std::size_t operator()(const Hash128& h) const {
        return static_cast<std::size_t>(h.h1 ^ (h.h2 * 0x9E3779B97F4A7C15ull));
    }
};

}  // namespace detail

// Streaming distinct-window counter over a fixed symbol sequence.
class BlockCounter {
public:
    BlockCounter(const std::vector<Symbol>& seq, int n)
        : seq_(seq), n_(n), pow1_(1), pow2_(1) {
        if (n < 1) throw std::invalid_argument("block length must be >= 1");
        for (int i = 0; i < n - 1; ++i) {
            pow1_ = detail::mulmod61(pow1_, detail::kBase1);
            pow2_ = detail::mulmod61(pow2_, detail::kBase2);
        }
    }

    // Process windows ending at positions < upto (exclusive).
    void advance(std::size_t upto) {
        upto = std::min(upto, seq_.size());
        while (pos_ < upto) {
            Symbol in = seq_[pos_];
            std::uint64_t v = in % detail::kHashP;
            if (pos_ + 1 >= static_cast<std::size_t>(n_)) {
                if (pos_ + 1 > static_cast<std::size_t>(n_)) {
                    Symbol out = seq_[pos_ - static_cast<std::size_t>(n_)];
                    std::uint64_t o = out % detail::kHashP;
                    h1_ = detail::submod61(h1_, detail::mulmod61(o, pow1_));
                    h2_ = detail::submod61(h2_, detail::mulmod61(o, pow2_));
                }
                h1_ = detail::addmod61(detail::mulmod61(h1_, detail::kBase1), v);
                h2_ = detail::addmod61(detail::mulmod61(h2_, detail::kBase2), v);
                insert_window(pos_ + 1 - static_cast<std::size_t>(n_));
            } else {
                h1_ = detail::addmod61(detail::mulmod61(h1_, detail::kBase1), v);
                h2_ = detail::addmod61(detail::mulmod61(h2_, detail::kBase2), v);
                if (pos_ + 1 == static_cast<std::size_t>(n_)) insert_window(0);
            }
            ++pos_;
        }
    }

    std::size_t distinct() const { return distinct_; }

private:
    void insert_window(std::size_t start) {
        detail::Hash128 key{h1_, h2_};
        auto [it, fresh] = store_.try_emplace(key);
        if (fresh) {
            it->second.push_back(start);
            ++distinct_;
            return;
        }
        const Symbol* cur = seq_.data() + start;
        for (std::size_t prev : it->second) {
            if (std::equal(cur, cur + n_, seq_.data() + prev)) return;  // duplicate
        }
        it->second.push_back(start);  // genuine hash collision
        ++distinct_;
    }

    const std::vector<Symbol>& seq_;
    int n_;
    std::uint64_t pow1_, pow2_;
    std::uint64_t h1_ = 0, h2_ = 0;
    std::size_t pos_ = 0;
    std::size_t distinct_ = 0;
    std::unordered_map<detail::Hash128, std::vector<std::size_t>, detail::Hash128Hasher> store_;
};

// Exact number of distinct contiguous length-n windows.
inline std::size_t count_blocks(const std::vector<Symbol>& seq, int n) {
    if (n < 1) throw std::invalid_argument("block length must be >= 1");
    if (static_cast<std::size_t>(n) > seq.size())
        throw std::invalid_argument("block length exceeds sequence length");
    BlockCounter c(seq, n);
    c.advance(seq.size());
    return c.distinct();
}

inline std::vector<Symbol> to_symbols(const std::vector<BoxLabel>& boxes) {
    std::vector<Symbol> s;
    s.reserve(boxes.size());
    for (const auto& b : boxes) s.push_back(b.code);
    return s;
}

struct GrowthPoint {
    std::uint64_t steps = 0;
    std::size_t distinct = 0;
};

// Cumulative distinct-block counts of length n at increasing checkpoints.
inline std::vector<GrowthPoint> growth_curve(const NetworkSpec& spec, const SimPoint& start,
                                             int n, const std::vector<std::uint64_t>& checkpoints,
                                             const SimOptions& opt = {}) {
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must increase");
    std::uint64_t total = checkpoints.empty() ? 0 : checkpoints.back();
    SimResult sim = simulate(spec, start, total, opt);
    std::vector<Symbol> seq = to_symbols(sim.symbols);
    BlockCounter counter(seq, n);
    std::vector<GrowthPoint> out;
    for (std::uint64_t cp : checkpoints) {
        counter.advance(static_cast<std::size_t>(cp));
        out.push_back({cp, counter.distinct()});
    }
    return out;
}

struct FitResult {
    double slope = 0;       // entropy estimate, bits per symbol
    double intercept = 0;
    double residual = 0;    // sum of squared errors of the fit
    int n_lo = 0, n_hi = 0;
    std::size_t points = 0;
};

// Ordinary least squares of log2(count) against n over n in [n_lo, n_hi].
inline FitResult fit_entropy(const std::vector<std::pair<int, std::uint64_t>>& counts, int n_lo,
                             int n_hi) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, c] : counts) {
        if (n < n_lo || n > n_hi) continue;
        if (c < 1) throw std::invalid_argument("block counts must be >= 1");
        pts.emplace_back(static_cast<double>(n), std::log2(static_cast<double>(c)));
    }
    if (pts.size() < 2) throw std::invalid_argument("fit range contains fewer than 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    double denom = m * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("degenerate fit range");
    FitResult fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    for (auto [x, y] : pts) {
        double e = y - (fit.slope * x + fit.intercept);
        fit.residual += e * e;
    }
    fit.n_lo = n_lo;
    fit.n_hi = n_hi;
    fit.points = pts.size();
    return fit;
}

// ---------------------------------------------------------------------------
// Cycle-word extraction from a simulated box sequence.  Segmentation
// anchors at traversals of the starting edge's ordered box pair; each
// segment must equal one of the trap's cycles.

inline std::set<std::string> observed_words(std::span<const Symbol> seq,
                                            const TrappingReport& trap, int k) {
    if (k < 1) throw std::invalid_argument("word length must be >= 1");
    const std::uint32_t from = trap.starting_edge.from.code;
    const std::uint32_t to = trap.starting_edge.to.code;

    std::vector<std::pair<std::vector<std::uint32_t>, std::string>> patterns;
    for (const auto& c : trap.cycles) {
        std::vector<std::uint32_t> p;
        for (const auto& b : c.boxes) p.push_back(b.code);
        patterns.emplace_back(std::move(p), c.label);
    }

    std::vector<std::string> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] != from || seq[i + 1] != to) continue;
        // segment [start, i] closes a cycle
        std::size_t len = i + 1 - start;
        std::string found;
        for (const auto& [p, label] : patterns) {
            if (p.size() == len && std::equal(p.begin(), p.end(), seq.begin() + static_cast<std::ptrdiff_t>(start))) {
                found = label;
                break;
            }
        }
        if (found.empty())
            throw SegmentationError("segment does not match any trapping cycle", start);
        labels.push_back(found);
        start = i + 1;
    }

    std::set<std::string> words;
    if (static_cast<int>(labels.size()) < k) return words;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= labels.size(); ++i) {
        std::string w;
        for (int t = 0; t < k; ++t) w += labels[i + static_cast<std::size_t>(t)];
        words.insert(w);
    }
    return words;
}

}  // namespace glass
