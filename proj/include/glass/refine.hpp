#pragma once

// Refined transition graphs.  TG_r is the union of the trapping cycles'
// subgraphs.  TG_r(k) separates length-k cycle words: each admissible
// word w carries a copy of its first cycle's subgraph minus the starting
// edge, and a cross edge w -> v exists when the last k-1 letters of w
// equal the first k-1 letters of v.  Words with empty returning regions
// (F_k) or transient ones (Pi_k) carry no vertices at all, which is what
// drives the entropy bound downward.

#include <glass/cones.hpp>
#include <glass/graph.hpp>

#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace glass {

struct RefinedGraph {
    int level = 0;                            // 0 = TG_r
    std::vector<std::string> alphabet;        // labels of the active trapping cycles
    std::vector<std::string> words;           // admissible length-k words ("" group at level 0)
    std::vector<std::pair<BoxLabel, int>> vertices;  // (box, word index; -1 at level 0)
    std::vector<std::pair<int, int>> edges;
    std::uint64_t empty_count = 0;            // |F_k|
    std::uint64_t transient_count = 0;        // |Pi_k|
    std::uint64_t extra_forbidden_count = 0;  // user-forbidden words dropped

    std::string vertex_label(std::size_t i) const {
        const auto& [box, w] = vertices[i];
        if (w < 0) return box.str();
        return box.str() + "_" + words[static_cast<std::size_t>(w)];
    }

    Digraph digraph() const {
        Digraph g(static_cast<int>(vertices.size()));
        for (const auto& e : edges) g.add_edge(e.first, e.second);
        for (auto& a : g.adj) std::sort(a.begin(), a.end());
        return g;
    }

    double entropy() const { return graph_entropy(digraph()); }
};

// Union of the active cycles' subgraphs (vertices are plain boxes).
inline RefinedGraph build_tgr(const TrappingReport& trap) {
    if (!trap.verified)
        throw std::invalid_argument("trapping region not verified; TG_r undefined");
    RefinedGraph g;
    g.level = 0;
    g.empty_count = trap.empty_idx.size();
    g.transient_count = trap.transient_idx.size();

    std::set<std::uint32_t> boxes;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
    for (int idx : trap.active_idx) {
        const CycleWord& c = trap.cycles[static_cast<std::size_t>(idx)];
        g.alphabet.push_back(c.label);
        std::uint32_t prev = c.starting_edge.from.code;
        for (const auto& b : c.boxes) {
            boxes.insert(b.code);
            edge_set.insert({prev, b.code});
            prev = b.code;
        }
        boxes.insert(c.starting_edge.from.code);
    }
    int n = trap.starting_edge.from.n;
    std::map<std::uint32_t, int> vid;
    for (std::uint32_t code : boxes) {
        vid[code] = static_cast<int>(g.vertices.size());
        g.vertices.emplace_back(BoxLabel(code, n), -1);
    }
    for (const auto& [u, v] : edge_set) g.edges.emplace_back(vid[u], vid[v]);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace detail {

inline std::string word_string(const std::vector<int>& letters,
                               const std::vector<std::string>& alphabet) {
    std::string s;
    for (int l : letters) s += alphabet[static_cast<std::size_t>(l)];
    return s;
}

inline bool contains_subword(const std::vector<int>& w, const std::vector<int>& sub) {
    if (sub.empty() || sub.size() > w.size()) return false;
    for (std::size_t i = 0; i + sub.size() <= w.size(); ++i)
        if (std::equal(sub.begin(), sub.end(), w.begin() + static_cast<std::ptrdiff_t>(i)))
            return true;
    return false;
}

// Evaluate fn over [0, count) on up to `threads` workers; results land in
// index order, so the outcome does not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Separated-cycle refinement at level k >= 1.  Words over the active
// cycle alphabet are generated with prefix pruning (an empty prefix
// region forces every extension empty), classified into empty, extra-
// forbidden and transient, and the survivors assembled into the graph.
inline RefinedGraph build_tgr_k(const NetworkSpec& spec, const TrappingReport& trap, int k,
                                const std::vector<std::vector<int>>& extra_forbidden = {},
                                int threads = 1) {
    if (k < 1) throw std::invalid_argument("refinement level must be >= 1");
    if (!trap.verified)
        throw std::invalid_argument("trapping region not verified; TG_r(k) undefined");

    std::vector<CycleWord> cyc = trap.active_cycles();
    std::size_t m = cyc.size();
    std::vector<FracLinMap> letter_maps;
    for (int idx : trap.active_idx) letter_maps.push_back(trap.maps[static_cast<std::size_t>(idx)]);

    RefinedGraph g;
    g.level = k;
    for (const auto& c : cyc) g.alphabet.push_back(c.label);

    // generate nonempty words level by level
    std::vector<std::vector<int>> frontier = {{}};
    std::uint64_t alive = 1;  // count of words whose extensions are still explored
    std::uint64_t empties = 0;
    for (int len = 1; len <= k; ++len) {
        std::vector<std::vector<int>> candidates;
        for (const auto& w : frontier)
            for (std::size_t c = 0; c < m; ++c) {
                auto ext = w;
                ext.push_back(static_cast<int>(c));
                candidates.push_back(std::move(ext));
            }
        std::vector<char> ok(candidates.size(), 0);
        std::vector<Cone> regions(candidates.size());
        detail::parallel_for(candidates.size(), threads, [&](std::size_t i) {
            std::vector<CycleWord> path;
            for (int l : candidates[i]) path.push_back(cyc[static_cast<std::size_t>(l)]);
            regions[i] = returning_region(spec, path);
            ok[i] = is_empty(regions[i]) ? 0 : 1;
        });
        std::vector<std::vector<int>> next;
        std::uint64_t next_alive = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (ok[i]) {
                next.push_back(candidates[i]);
                ++next_alive;
            }
        }
        // every word with an empty prefix is empty; account for the pruned subtree
        std::uint64_t pruned = alive * m - next_alive;
        std::uint64_t subtree = 1;
        for (int rest = len + 1; rest <= k; ++rest) subtree *= m;
        empties += pruned * subtree;
        alive = next_alive;
        frontier = std::move(next);
        if (len == k) {
            // keep the survivors' regions for the transient pass
            std::vector<WordRegion> words;
            for (std::size_t i = 0, j = 0; i < candidates.size(); ++i) {
                if (!ok[i]) continue;
                (void)j;
                WordRegion wr;
                wr.letters = candidates[i];
                wr.region = regions[i];
                words.push_back(std::move(wr));
            }
            g.empty_count = empties;

            // user-forbidden subwords drop out before the transient pass
            std::vector<WordRegion> kept;
            for (auto& w : words) {
                bool banned = false;
                for (const auto& sub : extra_forbidden)
                    banned = banned || detail::contains_subword(w.letters, sub);
                if (banned)
                    ++g.extra_forbidden_count;
                else
                    kept.push_back(std::move(w));
            }

            std::vector<int> transient = transient_words(kept, letter_maps);
            g.transient_count = transient.size();
            std::set<int> drop(transient.begin(), transient.end());

            std::vector<std::vector<int>> admissible;
            for (std::size_t i = 0; i < kept.size(); ++i)
                if (!drop.count(static_cast<int>(i))) admissible.push_back(kept[i].letters);

            // assemble vertices and edges
            std::map<std::pair<std::uint32_t, int>, int> vid;
            auto vertex = [&](const BoxLabel& b, int word) {
                auto key = std::make_pair(b.code, word);
                auto it = vid.find(key);
                if (it != vid.end()) return it->second;
                int id = static_cast<int>(g.vertices.size());
                vid[key] = id;
                g.vertices.emplace_back(b, word);
                return id;
            };
            for (const auto& w : admissible)
                g.words.push_back(detail::word_string(w, g.alphabet));
            for (std::size_t wi = 0; wi < admissible.size(); ++wi) {
                const CycleWord& first = cyc[static_cast<std::size_t>(admissible[wi][0])];
                std::set<std::pair<std::uint32_t, std::uint32_t>> within;
                for (std::size_t t = 0; t + 1 < first.boxes.size(); ++t)
                    within.insert({first.boxes[t].code, first.boxes[t + 1].code});
                for (const auto& [u, v] : within)
                    g.edges.emplace_back(
                        vertex(BoxLabel(u, spec.n), static_cast<int>(wi)),
                        vertex(BoxLabel(v, spec.n), static_cast<int>(wi)));
                // make sure both endpoints of the starting edge exist
                vertex(first.starting_edge.from, static_cast<int>(wi));
                vertex(first.starting_edge.to, static_cast<int>(wi));
            }
            for (std::size_t wi = 0; wi < admissible.size(); ++wi)
                for (std::size_t vi = 0; vi < admissible.size(); ++vi) {
                    const auto& a = admissible[wi];
                    const auto& b = admissible[vi];
                    if (!std::equal(a.begin() + 1, a.end(), b.begin(), b.end() - 1)) continue;
                    g.edges.emplace_back(
                        vertex(trap.starting_edge.from, static_cast<int>(wi)),
                        vertex(trap.starting_edge.to, static_cast<int>(vi)));
                }
            std::sort(g.edges.begin(), g.edges.end());
            g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
        }
    }
    return g;
}

struct LevelRow {
    int k = 0;
    double entropy = 0;
    std::uint64_t empty_count = 0;
    std::uint64_t transient_count = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
};

// Non-increasing bound sequence: TG_r at k=0, then TG_r(1..k_max).
inline std::vector<LevelRow> entropy_sequence(const NetworkSpec& spec, const TrappingReport& trap,
                                              int k_max, int threads = 1) {
    std::vector<LevelRow> rows;
    RefinedGraph tgr = build_tgr(trap);
    rows.push_back({0, tgr.entropy(), tgr.empty_count, tgr.transient_count, tgr.vertices.size(),
                    tgr.edges.size()});
    for (int k = 1; k <= k_max; ++k) {
        RefinedGraph gk = build_tgr_k(spec, trap, k, {}, threads);
        rows.push_back({k, gk.entropy(), gk.empty_count, gk.transient_count, gk.vertices.size(),
                        gk.edges.size()});
    }
    return rows;
}

// Parse a word like "BAAB" against the trapping alphabet (greedy longest
// label match, so multi-character labels stay unambiguous).
inline std::vector<int> parse_word(const std::string& word,
                                   const std::vector<std::string>& alphabet) {
    std::vector<int> letters;
    std::size_t pos = 0;
    while (pos < word.size()) {
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            const std::string& lab = alphabet[a];
            if (lab.size() > best_len && word.compare(pos, lab.size(), lab) == 0) {
                best = static_cast<int>(a);
                best_len = lab.size();
            }
        }
        if (best < 0)
            throw std::domain_error("word \"" + word + "\" uses an unknown cycle label at position " +
                                    std::to_string(pos));
        letters.push_back(best);
        pos += best_len;
    }
    return letters;
}

// What-if bound: rebuild at level max(g.level, longest extra word) with
// the extra words forbidden as subwords.
inline RefinedGraph forbid_words(const NetworkSpec& spec, const TrappingReport& trap,
                                 const RefinedGraph& g, const std::vector<std::string>& extra,
                                 int threads = 1) {
    std::vector<std::vector<int>> parsed;
    std::size_t longest = 0;
    for (const auto& w : extra) {
        parsed.push_back(parse_word(w, g.alphabet));
        longest = std::max(longest, parsed.back().size());
    }
    int level = std::max(std::max(g.level, 1), static_cast<int>(longest));
    return build_tgr_k(spec, trap, level, parsed, threads);
}

}  // namespace glass
