#pragma once

// Wall-to-wall dynamics.  With a common decay rate the map from an entry
// wall to the exit wall of a box is fractional linear,
//
//     M_a y = beta_a y / (1 + psi_a . y),
//     beta_a = I - f(a) e_j^T / f_j(a),   psi_a = -e_j / f_j(a),
//
// where j is the exit axis.  Compositions stay fractional linear, which
// gives exact cycle maps, and the same formulas drive the floating-point
// simulator (rays map to rays, so renormalizing to unit L1 norm after
// every crossing does not change the symbol sequence).

#include <glass/errors.hpp>
#include <glass/graph.hpp>
#include <glass/network.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace glass {

struct FracLinMap {
    Mat B;
    Vec psi;
    int exit_axis = -1;  // row of B that is identically zero; -1 once reduced

    std::size_t dim() const { return psi.size(); }
};

inline FracLinMap local_map(const NetworkSpec& spec, const BoxLabel& a, int exit_axis) {
    if (!spec.equal_decay())
        throw ConditionError("wall maps require a common decay rate");
    if (!is_exit_direction(spec, a, exit_axis))
        throw std::invalid_argument("axis y" + std::to_string(exit_axis + 1) +
                                    " is not an exit direction of box " + a.str());
    Vec f = focal_point(spec, a);
    const Rat& fj = f[static_cast<std::size_t>(exit_axis)];
    std::size_t n = static_cast<std::size_t>(spec.n);
    FracLinMap m;
    m.B = identity_mat(n);
    for (std::size_t i = 0; i < n; ++i) m.B[i][static_cast<std::size_t>(exit_axis)] -= f[i] / fj;
    m.psi.assign(n, Rat(0));
    m.psi[static_cast<std::size_t>(exit_axis)] = Rat(-1) / fj;
    m.exit_axis = exit_axis;
    return m;
}

// Composite of maps applied first-to-last:
//   B = B_(m-1) ... B_0,   psi = psi_0 + sum_k (B_(k-1)...B_0)^T psi_k.
inline FracLinMap compose(const std::vector<FracLinMap>& maps) {
    if (maps.empty()) throw std::invalid_argument("compose: empty map list");
    FracLinMap acc = maps[0];
    for (std::size_t k = 1; k < maps.size(); ++k) {
        if (maps[k].dim() != acc.dim()) throw std::invalid_argument("compose: dimension mismatch");
        Vec pulled = vec_mat(maps[k].psi, acc.B);  // (B^(k,0))^T psi_k as a row
        for (std::size_t i = 0; i < acc.psi.size(); ++i) acc.psi[i] += pulled[i];
        acc.B = mat_mul(maps[k].B, acc.B);
        acc.exit_axis = maps[k].exit_axis;
    }
    return acc;
}

namespace detail {

// Exit axes along a closed wall path; validates every crossing is a TG edge.
inline std::vector<int> path_exit_axes(const NetworkSpec& spec, const WallId& start,
                                       const std::vector<BoxLabel>& boxes) {
    if (boxes.empty()) throw std::domain_error("empty wall path");
    if (boxes.front() != start.to || boxes.back() != start.from)
        throw std::domain_error("path is not closed through starting edge " + start.str());
    std::vector<int> axes;
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        BoxLabel cur = boxes[k];
        BoxLabel nxt = (k + 1 < boxes.size()) ? boxes[k + 1] : start.to;
        WallId w = WallId::between(cur, nxt);
        if (!is_exit_direction(spec, cur, w.axis))
            throw std::domain_error("path traverses a non-edge: " + cur.str() + ">" + nxt.str());
        axes.push_back(w.axis);
    }
    return axes;
}

}  // namespace detail

// Composite map of a first-return cycle with the starting wall's axis row
// and column removed; acts on the (n-1)-dimensional starting wall.
inline FracLinMap cycle_map(const NetworkSpec& spec, const CycleWord& cycle) {
    std::vector<int> axes = detail::path_exit_axes(spec, cycle.starting_edge, cycle.boxes);
    std::vector<FracLinMap> maps;
    for (std::size_t k = 0; k < cycle.boxes.size(); ++k)
        maps.push_back(local_map(spec, cycle.boxes[k], axes[k]));
    FracLinMap full = compose(maps);
    int drop = cycle.starting_edge.axis;
    FracLinMap red;
    red.exit_axis = -1;
    for (int r = 0; r < spec.n; ++r) {
        if (r == drop) continue;
        Vec row;
        for (int c = 0; c < spec.n; ++c)
            if (c != drop) row.push_back(full.B[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        red.B.push_back(std::move(row));
    }
    for (int c = 0; c < spec.n; ++c)
        if (c != drop) red.psi.push_back(full.psi[static_cast<std::size_t>(c)]);
    return red;
}

// Time for coordinate i to reach its threshold from y inside box a.
inline double exit_time(const NetworkSpec& spec, const BoxLabel& a,
                        const std::vector<double>& y, int i) {
    if (!is_exit_direction(spec, a, i))
        throw std::invalid_argument("axis y" + std::to_string(i + 1) +
                                    " is not an exit direction of box " + a.str());
    double fi = rat_double(focal_point(spec, a)[static_cast<std::size_t>(i)]);
    double yi = y[static_cast<std::size_t>(i)];
    if (yi == 0.0) return 0.0;
    double ratio = fi / (fi - yi);
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::invalid_argument("point is beyond the exit threshold");
    return -std::log(ratio) / rat_double(spec.lambda[static_cast<std::size_t>(i)]);
}

// ---------------------------------------------------------------------------
// Simulation

struct SimPoint {
    WallId wall;
    std::vector<double> y;  // full coordinates, y[wall.axis] == 0
};

struct ExactPoint {
    WallId wall;
    Vec y;
};

struct SimOptions {
    double tie_tol = 1e-12;  // |tau_i - tau_j| < tie_tol * max(tau) aborts
};

namespace detail {

inline void l1_renormalize(std::vector<double>& y) {
    double s = 0;
    for (double v : y) s += std::fabs(v);
    if (s > 0)
        for (double& v : y) v /= s;
}

}  // namespace detail

namespace detail {

// Per-box data flattened to doubles so the simulator never touches GMP.
struct SimCache {
    int n = 0;
    bool equal_decay = true;
    struct BoxData {
        bool terminal = true;
        std::vector<int> exits;   // sorted exit axes
        std::vector<double> f;    // focal point
    };
    std::vector<BoxData> boxes;
    std::vector<double> lambda;

    explicit SimCache(const NetworkSpec& spec) : n(spec.n), equal_decay(spec.equal_decay()) {
        for (const auto& l : spec.lambda) lambda.push_back(rat_double(l));
        boxes.resize(spec.box_count());
        for (std::uint32_t code = 0; code < spec.box_count(); ++code) {
            BoxData& bd = boxes[code];
            OutDirections d = out_directions(spec, spec.box(code));
            bd.exits = d.plus;
            bd.exits.insert(bd.exits.end(), d.minus.begin(), d.minus.end());
            std::sort(bd.exits.begin(), bd.exits.end());
            bd.terminal = bd.exits.empty();
            Vec f = focal_point(spec, spec.box(code));
            for (const auto& x : f) bd.f.push_back(rat_double(x));
        }
    }
};

// Crossing of one box; y is overwritten with the exit-wall point (unit L1).
// Returns the exit axis.  step_index only feeds error reporting.
inline int cross_box(const SimCache& cache, std::uint32_t box_code, std::vector<double>& y,
                     const SimOptions& opt, std::size_t step_index) {
    const SimCache::BoxData& bd = cache.boxes[box_code];
    if (bd.terminal) throw TerminalBoxError(BoxLabel(box_code, cache.n).str());

    constexpr double inf = std::numeric_limits<double>::infinity();
    double tau_best = inf, tau_second = inf, tau_max = 0;
    int best = -1;
    for (int j : bd.exits) {
        double fj = bd.f[static_cast<std::size_t>(j)];
        double ratio = fj / (fj - y[static_cast<std::size_t>(j)]);
        double t = (y[static_cast<std::size_t>(j)] == 0.0)
                       ? 0.0
                       : -std::log(ratio) / cache.lambda[static_cast<std::size_t>(j)];
        tau_max = std::max(tau_max, t);
        if (t < tau_best) {
            tau_second = tau_best;
            tau_best = t;
            best = j;
        } else if (t < tau_second) {
            tau_second = t;
        }
    }
    if (bd.exits.size() > 1 && tau_second - tau_best < opt.tie_tol * tau_max)
        throw CodimensionTwoError(step_index);

    if (cache.equal_decay) {
        double fj = bd.f[static_cast<std::size_t>(best)];
        double r = fj / (fj - y[static_cast<std::size_t>(best)]);
        for (int i = 0; i < cache.n; ++i)
            y[static_cast<std::size_t>(i)] =
                bd.f[static_cast<std::size_t>(i)] +
                r * (y[static_cast<std::size_t>(i)] - bd.f[static_cast<std::size_t>(i)]);
    } else {
        for (int i = 0; i < cache.n; ++i) {
            double r = std::exp(-cache.lambda[static_cast<std::size_t>(i)] * tau_best);
            y[static_cast<std::size_t>(i)] =
                bd.f[static_cast<std::size_t>(i)] +
                r * (y[static_cast<std::size_t>(i)] - bd.f[static_cast<std::size_t>(i)]);
        }
    }
    y[static_cast<std::size_t>(best)] = 0.0;
    l1_renormalize(y);
    return best;
}

}  // namespace detail

// One wall-to-wall crossing of the box entered through p.wall.
inline SimPoint step(const NetworkSpec& spec, const SimPoint& p, const SimOptions& opt = {},
                     std::size_t step_index = 0) {
    detail::SimCache cache(spec);
    BoxLabel box = p.wall.to;
    SimPoint q;
    q.y = p.y;
    int axis = detail::cross_box(cache, box.code, q.y, opt, step_index);
    q.wall = WallId::between(box, box.flipped(axis));
    return q;
}

// Exact-rational crossing; the reference implementation the float stepper
// is checked against.  Exit selection compares |y_i / f_i| exactly (the
// scale-invariant form of the exit-time order under a common decay rate).
struct ExactStepResult {
    ExactPoint point;
    Rat denominator;   // 1 + psi . y of the local map, must stay positive
    Rat clearance;     // smallest |coordinate| off the new wall, after renormalizing
};

inline ExactStepResult step_exact(const NetworkSpec& spec, const ExactPoint& p,
                                  std::size_t step_index = 0) {
    if (!spec.equal_decay())
        throw ConditionError("exact stepping requires a common decay rate");
    BoxLabel box = p.wall.to;
    OutDirections dirs = out_directions(spec, box);
    if (dirs.terminal()) throw TerminalBoxError(box.str());
    std::vector<int> exits = dirs.plus;
    exits.insert(exits.end(), dirs.minus.begin(), dirs.minus.end());
    std::sort(exits.begin(), exits.end());

    Vec f = focal_point(spec, box);
    int best = -1;
    Rat w_best;
    bool tie = false;
    for (int j : exits) {
        Rat w = abs(p.y[static_cast<std::size_t>(j)] / f[static_cast<std::size_t>(j)]);
        if (best < 0 || w < w_best) {
            w_best = w;
            best = j;
            tie = false;
        } else if (w == w_best) {
            tie = true;
        }
    }
    if (tie) throw CodimensionTwoError(step_index);

    const Rat& fj = f[static_cast<std::size_t>(best)];
    Rat denom = (fj - p.y[static_cast<std::size_t>(best)]) / fj;  // equals 1 + psi . y
    if (denom <= 0) throw DenominatorSignError("negative wall-map denominator in box " + box.str());
    Rat r = 1 / denom;
    Vec out(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i)
        out[static_cast<std::size_t>(i)] =
            f[static_cast<std::size_t>(i)] + r * (p.y[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(best)] = 0;
    out = l1_normalized(out);

    ExactStepResult res;
    res.point.wall = WallId::between(box, box.flipped(best));
    res.point.y = out;
    res.denominator = denom;
    res.clearance = -1;
    for (int i = 0; i < spec.n; ++i) {
        if (i == res.point.wall.axis) continue;
        Rat c = abs(out[static_cast<std::size_t>(i)]);
        if (res.clearance < 0 || c < res.clearance) res.clearance = c;
    }
    return res;
}

struct SimResult {
    std::vector<BoxLabel> symbols;  // boxes traversed, one per wall crossing
    bool terminal = false;
};

// steps crossings from `start`; symbol k is the box traversed during
// crossing k.  A terminal box ends the sequence early.
inline SimResult simulate(const NetworkSpec& spec, SimPoint start, std::uint64_t steps,
                          const SimOptions& opt = {}) {
    detail::SimCache cache(spec);
    SimResult res;
    res.symbols.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(steps, 1u << 24)));
    std::uint32_t box = start.wall.to.code;
    std::vector<double> y = start.y;
    for (std::uint64_t k = 0; k < steps; ++k) {
        res.symbols.push_back(BoxLabel(box, spec.n));
        try {
            int axis = detail::cross_box(cache, box, y, opt, static_cast<std::size_t>(k));
            box ^= 1u << (spec.n - 1 - axis);
        } catch (const TerminalBoxError&) {
            res.terminal = true;
            break;
        }
    }
    return res;
}

}  // namespace glass
