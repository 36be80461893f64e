#pragma once

// Transition graphs and their entropy.  The entropy of a directed graph's
// path shift is log2 of the Perron eigenvalue of the adjacency matrix,
// taken over strongly connected components.  Small components are handled
// exactly via the characteristic polynomial (Sturm bisection), larger ones
// by power iteration on A+I with Collatz-Wielandt bounds.

#include <glass/network.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace glass {

struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    explicit Digraph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices)) {}

    void add_edge(int u, int v) { adj[static_cast<std::size_t>(u)].push_back(v); }

    std::size_t edge_count() const {
        std::size_t m = 0;
        for (const auto& a : adj) m += a.size();
        return m;
    }
};

// Directed graph over box labels; used for the TG and its subgraphs.
struct BoxGraph {
    std::vector<BoxLabel> vertices;            // sorted by code
    std::vector<std::pair<int, int>> edges;    // indices into vertices
    std::map<std::uint32_t, int> index;

    int vertex_of(const BoxLabel& a) const {
        auto it = index.find(a.code);
        if (it == index.end()) throw std::invalid_argument("box not in graph: " + a.str());
        return it->second;
    }

    bool has_vertex(const BoxLabel& a) const { return index.count(a.code) > 0; }

    bool has_edge(const BoxLabel& a, const BoxLabel& b) const {
        if (!has_vertex(a) || !has_vertex(b)) return false;
        int u = vertex_of(a), v = vertex_of(b);
        for (const auto& e : edges)
            if (e.first == u && e.second == v) return true;
        return false;
    }

    Digraph digraph() const {
        Digraph g(static_cast<int>(vertices.size()));
        for (const auto& e : edges) g.add_edge(e.first, e.second);
        for (auto& a : g.adj) std::sort(a.begin(), a.end());
        return g;
    }

    static BoxGraph from_edges(const std::vector<std::pair<BoxLabel, BoxLabel>>& es) {
        BoxGraph g;
        std::set<std::uint32_t> codes;
        int n = 0;
        for (const auto& [a, b] : es) {
            codes.insert(a.code);
            codes.insert(b.code);
            n = a.n;
        }
        for (auto c : codes) {
            g.index[c] = static_cast<int>(g.vertices.size());
            g.vertices.push_back(BoxLabel(c, n));
        }
        std::set<std::pair<int, int>> seen;
        for (const auto& [a, b] : es) {
            auto e = std::make_pair(g.vertex_of(a), g.vertex_of(b));
            if (seen.insert(e).second) g.edges.push_back(e);
        }
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }
};

// Edge set of the transition graph: a self-loop for every terminal box,
// and a -> a +/- e_i for every exit direction i of a non-terminal box.
inline BoxGraph build_tg(const NetworkSpec& spec) {
    std::vector<std::pair<BoxLabel, BoxLabel>> es;
    for (std::uint32_t code = 0; code < spec.box_count(); ++code) {
        BoxLabel a = spec.box(code);
        OutDirections d = out_directions(spec, a);
        if (d.terminal()) {
            es.emplace_back(a, a);
            continue;
        }
        for (int i : d.plus) es.emplace_back(a, a.flipped(i));
        for (int i : d.minus) es.emplace_back(a, a.flipped(i));
    }
    return BoxGraph::from_edges(es);
}

// ---------------------------------------------------------------------------
// Strongly connected components (Tarjan, iterative).  Components are
// returned sorted by their smallest vertex id, vertices sorted within.

inline std::vector<std::vector<int>> scc_decompose(const Digraph& g) {
    int n = g.n;
    std::vector<int> idx(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (idx[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        idx[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& out = g.adj[static_cast<std::size_t>(f.v)];
            if (f.child < out.size()) {
                int w = out[f.child++];
                if (idx[static_cast<std::size_t>(w)] == -1) {
                    idx[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], idx[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == idx[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] = std::min(
                        low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// ---------------------------------------------------------------------------
// Perron eigenvalue helpers

namespace detail {

// Characteristic polynomial of an integer matrix by Faddeev-LeVerrier,
// monic, coefficients exact.  p(x) = x^m + c[m-1] x^(m-1) + ... + c[0].
inline std::vector<Rat> char_poly(const Mat& a) {
    std::size_t m = a.size();
    Mat nk = identity_mat(m);
    std::vector<Rat> c(m + 1, Rat(0));
    c[m] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        nk = mat_mul(a, nk);
        Rat tr = 0;
        for (std::size_t i = 0; i < m; ++i) tr += nk[i][i];
        Rat ck = -tr / Rat(static_cast<long>(k));
        c[m - k] = ck;
        for (std::size_t i = 0; i < m; ++i) nk[i][i] += ck;
    }
    return c;
}

inline std::vector<Rat> poly_deriv(const std::vector<Rat>& p) {
    if (p.size() <= 1) return {Rat(0)};
    std::vector<Rat> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rat(static_cast<long>(i));
    return d;
}

inline void poly_trim(std::vector<Rat>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Remainder of polynomial division.
inline std::vector<Rat> poly_rem(std::vector<Rat> num, const std::vector<Rat>& den) {
    poly_trim(num);
    std::vector<Rat> d(den);
    poly_trim(d);
    while (num.size() >= d.size() && !(num.size() == 1 && num[0] == 0)) {
        Rat f = num.back() / d.back();
        std::size_t off = num.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) num[off + i] -= f * d[i];
        poly_trim(num);
        if (num.size() < d.size()) break;
        if (num.size() == d.size() && num.back() == 0) poly_trim(num);
    }
    return num;
}

inline Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
    Rat v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

// Sturm chain; count of distinct real roots in (a, b] is V(a) - V(b).
struct SturmChain {
    std::vector<std::vector<Rat>> seq;

    explicit SturmChain(const std::vector<Rat>& p) {
        std::vector<Rat> p0(p), p1 = poly_deriv(p);
        poly_trim(p0);
        poly_trim(p1);
        seq.push_back(p0);
        seq.push_back(p1);
        while (!(seq.back().size() == 1 && seq.back()[0] == 0)) {
            std::vector<Rat> r = poly_rem(seq[seq.size() - 2], seq.back());
            for (auto& x : r) x = -x;
            poly_trim(r);
            if (r.size() == 1 && r[0] == 0) break;
            seq.push_back(r);
        }
    }

    int sign_changes(const Rat& x) const {
        int changes = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(poly_eval(p, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    int roots_in(const Rat& a, const Rat& b) const { return sign_changes(a) - sign_changes(b); }
};

// Largest real root of the characteristic polynomial by Sturm bisection.
inline double perron_char_poly(const Mat& a) {
    std::vector<Rat> p = char_poly(a);
    SturmChain chain(p);
    Rat hi = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rat row = 1;
        for (std::size_t j = 0; j < a.size(); ++j) row += abs(a[i][j]);
        if (row > hi) hi = row;
    }
    Rat lo = 0;
    if (chain.roots_in(lo, hi) == 0) return 0.0;  // no positive root
    for (int iter = 0; iter < 64; ++iter) {
        Rat mid = (lo + hi) / 2;
        if (chain.roots_in(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return rat_double((lo + hi) / 2);
}

// Power iteration on A+I (primitive for irreducible A); returns the Perron
// eigenvalue of A once the Collatz-Wielandt bounds agree to tolerance.
inline double perron_power(const std::vector<std::vector<int>>& adj, double tol = 1e-12) {
    std::size_t m = adj.size();
    std::vector<double> v(m, 1.0), w(m, 0.0);
    double mu = 1.0;
    for (long iter = 0; iter < 500000; ++iter) {
        double lo = 1e300, hi = 0.0, maxw = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = v[i];
            for (int j : adj[i]) s += v[static_cast<std::size_t>(j)];
            w[i] = s;
            double r = s / v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            maxw = std::max(maxw, s);
        }
        mu = 0.5 * (lo + hi) - 1.0;
        if (hi - lo < tol) break;
        for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / maxw;
    }
    return mu;
}

}  // namespace detail

// log2 of the Perron eigenvalue over SCCs; 0 when every component is a
// bare cycle or a single vertex.
inline double graph_entropy(const Digraph& g, double tol = 1e-12) {
    if (g.n == 0) return 0.0;
    auto comps = scc_decompose(g);
    double mu_max = 0.0;
    for (const auto& comp : comps) {
        if (comp.size() == 1) {
            int v = comp[0];
            bool self = false;
            for (int w : g.adj[static_cast<std::size_t>(v)]) self = self || (w == v);
            mu_max = std::max(mu_max, self ? 1.0 : 0.0);
            continue;
        }
        std::map<int, int> local;
        for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> adj(comp.size());
        for (int v : comp)
            for (int w : g.adj[static_cast<std::size_t>(v)])
                if (local.count(w)) adj[static_cast<std::size_t>(local[v])].push_back(local[w]);
        double mu;
        if (comp.size() < 12) {
            Mat a(comp.size(), Vec(comp.size(), Rat(0)));
            for (std::size_t i = 0; i < adj.size(); ++i)
                for (int j : adj[i]) a[i][static_cast<std::size_t>(j)] = 1;
            mu = detail::perron_char_poly(a);
        } else {
            mu = detail::perron_power(adj, tol);
        }
        mu_max = std::max(mu_max, mu);
    }
    if (mu_max <= 1.0) return 0.0;
    return std::log2(mu_max);
}

// ---------------------------------------------------------------------------
// First-return cycles

// A closed wall path through a designated starting edge that does not
// traverse that edge internally.  `boxes` lists the boxes in traversal
// order, starting at the target of the starting edge and ending at its
// source; the number of boxes equals the number of wall crossings.
struct CycleWord {
    std::vector<BoxLabel> boxes;
    WallId starting_edge;
    std::string label;

    std::size_t length() const { return boxes.size(); }

    bool first_return() const {
        if (boxes.empty() || boxes.front() != starting_edge.to ||
            boxes.back() != starting_edge.from)
            return false;
        for (std::size_t i = 0; i + 1 < boxes.size(); ++i)
            if (boxes[i] == starting_edge.from && boxes[i + 1] == starting_edge.to) return false;
        return true;
    }
};

// All first-return cycles through `start` of length <= max_len, emitted in
// lexicographic order of their box sequences.  Edges and vertices other
// than the starting edge may repeat.
inline std::vector<CycleWord> enumerate_first_return_cycles(const BoxGraph& g,
                                                            const WallId& start,
                                                            int max_len) {
    if (!g.has_edge(start.from, start.to))
        throw std::invalid_argument("starting edge " + start.str() + " is not in the graph");
    Digraph d = g.digraph();
    int src = g.vertex_of(start.from);
    int dst = g.vertex_of(start.to);

    std::vector<CycleWord> out;
    std::vector<int> path;  // vertex ids, beginning with dst
    std::function<void(int)> dfs = [&](int cur) {
        // path.size() edges used so far (including the starting edge)
        if (static_cast<int>(path.size()) >= max_len) return;
        for (int nxt : d.adj[static_cast<std::size_t>(cur)]) {
            if (cur == src && nxt == dst) continue;  // starting edge is not reusable
            path.push_back(nxt);
            if (nxt == src) {
                CycleWord c;
                for (int v : path) c.boxes.push_back(g.vertices[static_cast<std::size_t>(v)]);
                c.starting_edge = start;
                out.push_back(std::move(c));
            }
            dfs(nxt);
            path.pop_back();
        }
    };
    path.push_back(dst);
    dfs(dst);
    return out;
}

// Deterministic short names: A..Z, then A1, B1, ...
inline void label_cycles(std::vector<CycleWord>& cycles) {
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        std::string label(1, static_cast<char>('A' + i % 26));
        if (i >= 26) label += std::to_string(i / 26);
        cycles[i].label = label;
    }
}

}  // namespace glass
