#pragma once

// Exact polyhedral returning cones on a starting wall.
//
// A cone is kept in double description: the inequality rows (wall orthant
// signs plus one row per alternative exit around the cycle, pulled back to
// the starting wall) and the extremal rays they generate.  Rays are
// computed by the incremental double description method with exact
// rational arithmetic; emptiness means empty interior relative to the
// wall, and union containment is decided by recursive hyperplane
// splitting.  No floating point enters any decision here.

#include <glass/dynamics.hpp>
#include <glass/errors.hpp>
#include <glass/graph.hpp>

#include <numeric>
#include <random>
#include <set>
#include <span>
#include <vector>

namespace glass {

namespace dd {

// Scale a rational direction to a primitive integer vector (canonical up
// to the positive factor that ray identity ignores).
inline Vec primitive(const Vec& v) {
    mpz_class l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    mpz_class g = 0;
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class num = v[i].get_num() * (l / v[i].get_den());
        out[i] = Rat(num);
        g = gcd(g, num);
    }
    if (g > 1)
        for (auto& x : out) x /= Rat(g);
    return out;
}

struct Generators {
    Mat rays;       // extremal rays of the pointed part
    Mat lineality;  // basis of the lineality space
};

// Incremental double description: start from the full space and cut with
// one half-space at a time.  Ray adjacency is decided algebraically
// (rank of the common active set), so extremality is maintained exactly.
inline Generators cone_rays(int dim, const Mat& rows) {
    Generators g;
    for (int i = 0; i < dim; ++i) {
        Vec e(static_cast<std::size_t>(dim), Rat(0));
        e[static_cast<std::size_t>(i)] = 1;
        g.lineality.push_back(e);
    }
    Mat processed;

    for (const Vec& row : rows) {
        if (is_zero_vec(row)) continue;

        // Reduce the lineality space first: one basis vector becomes a ray.
        int pivot = -1;
        for (std::size_t i = 0; i < g.lineality.size(); ++i)
            if (dot(row, g.lineality[i]) != 0) { pivot = static_cast<int>(i); break; }
        if (pivot >= 0) {
            Vec l0 = g.lineality[static_cast<std::size_t>(pivot)];
            Rat a0 = dot(row, l0);
            if (a0 < 0)
                for (auto& x : l0) x = -x;
            a0 = abs(a0);
            Mat new_lin;
            for (std::size_t i = 0; i < g.lineality.size(); ++i) {
                if (static_cast<int>(i) == pivot) continue;
                Vec l = g.lineality[i];
                Rat c = dot(row, l) / a0;
                for (std::size_t t = 0; t < l.size(); ++t) l[t] -= c * l0[t];
                new_lin.push_back(primitive(l));
            }
            for (auto& r : g.rays) {
                Rat c = dot(row, r) / a0;
                for (std::size_t t = 0; t < r.size(); ++t) r[t] -= c * l0[t];
                r = primitive(r);
            }
            g.lineality = std::move(new_lin);
            g.rays.push_back(primitive(l0));
            processed.push_back(row);
            continue;
        }

        std::vector<int> sign(g.rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < g.rays.size(); ++i) {
            sign[i] = sgn(dot(row, g.rays[i]));
            any_neg = any_neg || sign[i] < 0;
        }
        if (!any_neg) {  // row is redundant for the current generators
            processed.push_back(row);
            continue;
        }

        Mat next;
        for (std::size_t i = 0; i < g.rays.size(); ++i)
            if (sign[i] >= 0) next.push_back(g.rays[i]);

        int needed_rank = dim - static_cast<int>(g.lineality.size()) - 2;
        for (std::size_t i = 0; i < g.rays.size(); ++i) {
            if (sign[i] <= 0) continue;
            for (std::size_t j = 0; j < g.rays.size(); ++j) {
                if (sign[j] >= 0) continue;
                // adjacency: processed rows active on both span a (d-2)-face
                Mat common;
                for (const auto& pr : processed) {
                    if (dot(pr, g.rays[i]) == 0 && dot(pr, g.rays[j]) == 0) common.push_back(pr);
                }
                if (needed_rank > 0 && mat_rank(common) < needed_rank) continue;
                Rat ai = dot(row, g.rays[i]);
                Rat aj = dot(row, g.rays[j]);
                Vec nr(static_cast<std::size_t>(dim), Rat(0));
                for (int t = 0; t < dim; ++t)
                    nr[static_cast<std::size_t>(t)] = ai * g.rays[j][static_cast<std::size_t>(t)] -
                                                      aj * g.rays[i][static_cast<std::size_t>(t)];
                if (!is_zero_vec(nr)) next.push_back(primitive(nr));
            }
        }
        // dedupe (the same face can be generated once per adjacent pair only,
        // but keep this cheap and safe)
        std::sort(next.begin(), next.end(), lex_less);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        g.rays = std::move(next);
        processed.push_back(row);
    }
    return g;
}

// Minimal H-representation of cone(rays) + span(lineality): the extremal
// rays of the polar cone, plus +/- pairs for its lineality directions.
inline Mat hrep_from_generators(int dim, const Mat& rays, const Mat& lineality = {}) {
    Mat dual_rows;
    for (const auto& r : rays) dual_rows.push_back(r);
    for (const auto& l : lineality) {
        dual_rows.push_back(l);
        Vec neg(l);
        for (auto& x : neg) x = -x;
        dual_rows.push_back(neg);
    }
    Generators polar = cone_rays(dim, dual_rows);
    Mat rows = polar.rays;
    for (const auto& l : polar.lineality) {
        rows.push_back(l);
        Vec neg(l);
        for (auto& x : neg) x = -x;
        rows.push_back(neg);
    }
    std::sort(rows.begin(), rows.end(), lex_less);
    return rows;
}

}  // namespace dd

// ---------------------------------------------------------------------------

// Polyhedral cone on a wall, in reduced coordinates (the wall's axis
// coordinate removed).  `ineqs` always carries the wall orthant rows
// first; `rays` is the canonical extremal ray list (unit L1, lex order).
struct Cone {
    WallId wall;
    int dim = 0;
    Mat ineqs;
    Mat rays;
    Mat lineality;  // nonempty only for degenerate inputs
};

inline Mat wall_orthant_rows(const WallId& wall) {
    int n = wall.from.n;
    Mat rows;
    for (int c = 0; c < n; ++c) {
        if (c == wall.axis) continue;
        Vec row(static_cast<std::size_t>(n - 1), Rat(0));
        int reduced = c < wall.axis ? c : c - 1;
        row[static_cast<std::size_t>(reduced)] = wall.from.bit(c) ? 1 : -1;
        rows.push_back(row);
    }
    return rows;
}

// Assembles orthant + extra rows and computes the canonical ray list.
inline Cone make_cone(const WallId& wall, const Mat& extra_rows) {
    Cone c;
    c.wall = wall;
    c.dim = wall.from.n - 1;
    c.ineqs = wall_orthant_rows(wall);
    for (const auto& r : extra_rows) {
        if (static_cast<int>(r.size()) != c.dim)
            throw std::invalid_argument("cone row has wrong dimension");
        c.ineqs.push_back(r);
    }
    dd::Generators g = dd::cone_rays(c.dim, c.ineqs);
    for (const auto& r : g.rays) c.rays.push_back(l1_normalized(r));
    std::sort(c.rays.begin(), c.rays.end(), lex_less);
    c.lineality = g.lineality;
    return c;
}

inline Mat extremal_rays(const Cone& c) { return c.rays; }

// Empty interior relative to the wall: no point satisfies every
// inequality strictly.  The sum of the extremal rays lies in the relative
// interior, so it is strict on all rows exactly when the cone is
// full-dimensional; boundary-only cones land in excluded codimension-2
// pre-images and count as empty.
inline bool is_empty(const Cone& c) {
    if (c.rays.empty()) return true;
    Vec s(static_cast<std::size_t>(c.dim), Rat(0));
    for (const auto& r : c.rays)
        for (std::size_t t = 0; t < r.size(); ++t) s[t] += r[t];
    for (const auto& row : c.ineqs) {
        if (is_zero_vec(row)) continue;
        if (dot(row, s) <= 0) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Alternative-exit rows

// One row per (wall, alternative exit variable) pair along a closed wall
// path, pulled back to the starting wall and restricted to its reduced
// coordinates:  R_i = -(e_i^T / f_i) * beta^(k) ... beta^(0).
inline Mat alt_exit_rows(const NetworkSpec& spec, const WallId& start,
                         const std::vector<BoxLabel>& boxes) {
    if (!spec.equal_decay())
        throw ConditionError("returning cones require a common decay rate");
    std::vector<int> axes = detail::path_exit_axes(spec, start, boxes);
    Mat comp = identity_mat(static_cast<std::size_t>(spec.n));
    Mat rows;
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        const BoxLabel& b = boxes[k];
        FracLinMap m = local_map(spec, b, axes[k]);
        comp = mat_mul(m.B, comp);
        Vec f = focal_point(spec, b);
        OutDirections d = out_directions(spec, b);
        std::vector<int> exits = d.plus;
        exits.insert(exits.end(), d.minus.begin(), d.minus.end());
        std::sort(exits.begin(), exits.end());
        for (int i : exits) {
            if (i == axes[k]) continue;
            Vec row;
            for (int c = 0; c < spec.n; ++c) {
                if (c == start.axis) continue;
                row.push_back(-comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] /
                              f[static_cast<std::size_t>(i)]);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline Mat alt_exit_rows(const NetworkSpec& spec, const CycleWord& cycle) {
    return alt_exit_rows(spec, cycle.starting_edge, cycle.boxes);
}

// Minimal subset of rows cutting the same cone against the wall orthant.
// A row is dropped when deleting it leaves the extremal rays unchanged.
inline Mat reduce_rows(const Mat& rows, const WallId& wall) {
    auto canonical = [&](const Mat& rs) {
        Cone c = make_cone(wall, rs);
        return c.rays;
    };
    Mat target = canonical(rows);
    std::vector<std::size_t> kept(rows.size());
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    std::size_t i = 0;
    while (i < kept.size()) {
        Mat trial;
        for (std::size_t t = 0; t < kept.size(); ++t)
            if (t != i) trial.push_back(rows[kept[t]]);
        if (canonical(trial) == target)
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    Mat out;
    for (std::size_t k : kept) out.push_back(rows[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Cone algebra

// Image of a cone under a reduced wall-to-wall map: rays map to rays.
// The denominator 1 + psi.r must be positive at every cross-section
// representative, else the cone was not admissible for this map.
inline Cone map_cone(const FracLinMap& m, const Cone& cone) {
    if (static_cast<int>(m.dim()) != cone.dim)
        throw std::invalid_argument("map_cone: dimension mismatch");
    Mat img;
    for (const auto& r : cone.rays) {
        Rat denom = 1 + dot(m.psi, r);
        if (denom <= 0)
            throw DenominatorSignError("denominator 1 + psi.y is not positive on ray of cone at wall " +
                                       cone.wall.str());
        Vec v = mat_vec(m.B, r);
        if (!is_zero_vec(v)) img.push_back(dd::primitive(v));
    }
    Cone out;
    out.wall = cone.wall;
    out.dim = cone.dim;
    out.ineqs = dd::hrep_from_generators(cone.dim, img, cone.lineality);
    dd::Generators g = dd::cone_rays(cone.dim, out.ineqs);
    for (const auto& r : g.rays) out.rays.push_back(l1_normalized(r));
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    out.lineality = g.lineality;
    return out;
}

inline Cone intersect(const Cone& a, const Cone& b) {
    if (!(a.wall == b.wall)) throw std::invalid_argument("intersect: wall mismatch");
    Mat rows = a.ineqs;
    rows.insert(rows.end(), b.ineqs.begin(), b.ineqs.end());
    Cone out;
    out.wall = a.wall;
    out.dim = a.dim;
    out.ineqs = rows;
    dd::Generators g = dd::cone_rays(a.dim, rows);
    for (const auto& r : g.rays) out.rays.push_back(l1_normalized(r));
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    out.lineality = g.lineality;
    return out;
}

// Returning region of a single first-return cycle or a concatenation of
// them: wall orthant constraints plus the alternative-exit rows over the
// full concatenated path, reduced to a minimal row set.
inline Cone returning_region(const NetworkSpec& spec, const std::vector<CycleWord>& word) {
    if (word.empty()) throw std::invalid_argument("empty cycle word");
    const WallId& start = word[0].starting_edge;
    std::vector<BoxLabel> path;
    for (const auto& c : word) {
        if (!(c.starting_edge == start))
            throw std::invalid_argument("concatenated cycles must share the starting edge");
        path.insert(path.end(), c.boxes.begin(), c.boxes.end());
    }
    Mat rows = alt_exit_rows(spec, start, path);
    return make_cone(start, reduce_rows(rows, start));
}

inline Cone returning_region(const NetworkSpec& spec, const CycleWord& cycle) {
    return returning_region(spec, std::vector<CycleWord>{cycle});
}

// ---------------------------------------------------------------------------
// Union containment by recursive hyperplane splitting: slice the target
// along the first container's faces; the slice inside the container is
// done, every outside slice must be covered by the remaining containers.

namespace detail {

inline bool piece_covered(const WallId& wall, int dim, const Mat& piece_rows,
                          std::span<const Cone> containers);

inline bool piece_empty(const WallId& wall, const Mat& piece_rows) {
    return is_empty(make_cone(wall, piece_rows));
}

inline bool split_against(const WallId& wall, int dim, const Mat& piece_rows,
                          const Mat& k_rows, std::size_t next_row,
                          std::span<const Cone> rest) {
    if (piece_empty(wall, piece_rows)) return true;
    if (next_row == k_rows.size()) return true;  // inside every face so far
    const Vec& h = k_rows[next_row];

    Mat inside = piece_rows;
    inside.push_back(h);
    if (!split_against(wall, dim, inside, k_rows, next_row + 1, rest)) return false;

    Vec neg(h);
    for (auto& x : neg) x = -x;
    Mat outside = piece_rows;
    outside.push_back(neg);
    return piece_covered(wall, dim, outside, rest);
}

inline bool piece_covered(const WallId& wall, int dim, const Mat& piece_rows,
                          std::span<const Cone> containers) {
    if (piece_empty(wall, piece_rows)) return true;
    if (containers.empty()) return false;
    return split_against(wall, dim, piece_rows, containers.front().ineqs, 0,
                         containers.subspan(1));
}

}  // namespace detail

inline bool union_contains(const std::vector<Cone>& container, const Cone& target) {
    for (const auto& k : container)
        if (!(k.wall == target.wall)) throw std::invalid_argument("union_contains: wall mismatch");
    if (is_empty(target)) return true;
    // target's own rows restrict every piece
    return detail::piece_covered(target.wall, target.dim, target.ineqs,
                                 std::span<const Cone>(container));
}

// ---------------------------------------------------------------------------
// Trapping regions

struct TrappingReport {
    WallId starting_edge;
    std::vector<CycleWord> cycles;
    std::vector<Cone> cones;            // returning region per cycle
    std::vector<FracLinMap> maps;       // reduced cycle map per cycle
    std::vector<Cone> images;           // image cone per non-empty cycle (empty Cone otherwise)
    std::vector<int> empty_idx;         // F_1
    std::vector<int> transient_idx;     // Pi_1
    std::vector<int> active_idx;
    bool verified = false;

    std::vector<Cone> active_cones() const {
        std::vector<Cone> out;
        for (int i : active_idx) out.push_back(cones[static_cast<std::size_t>(i)]);
        return out;
    }
    std::vector<CycleWord> active_cycles() const {
        std::vector<CycleWord> out;
        for (int i : active_idx) out.push_back(cycles[static_cast<std::size_t>(i)]);
        return out;
    }
};

// Classifies the candidate cycles into empty (F_1), transient (Pi_1, no
// image mass ever re-enters, iterated to a fixpoint) and active, then
// checks that every active image lands inside the union of active cones.
inline TrappingReport verify_trapping(const NetworkSpec& spec, const WallId& starting_edge,
                                      const std::vector<CycleWord>& cycles) {
    TrappingReport rep;
    rep.starting_edge = starting_edge;
    rep.cycles = cycles;
    for (const auto& c : cycles) {
        if (!(c.starting_edge == starting_edge))
            throw std::invalid_argument("cycle " + c.label + " does not share the starting edge");
        if (!c.first_return())
            throw std::invalid_argument("cycle " + c.label + " is not a first-return cycle");
        rep.cones.push_back(returning_region(spec, c));
        rep.maps.push_back(cycle_map(spec, c));
    }
    rep.images.resize(cycles.size());

    std::vector<bool> active(cycles.size(), true);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (is_empty(rep.cones[i])) {
            active[i] = false;
            rep.empty_idx.push_back(static_cast<int>(i));
        } else {
            rep.images[i] = map_cone(rep.maps[i], rep.cones[i]);
        }
    }

    // transient fixpoint: drop cycles whose region receives no image mass
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < cycles.size(); ++j) {
            if (!active[j]) continue;
            bool incoming = false;
            for (std::size_t i = 0; i < cycles.size() && !incoming; ++i) {
                if (!active[i]) continue;
                incoming = !is_empty(intersect(rep.images[i], rep.cones[j]));
            }
            if (!incoming) {
                active[j] = false;
                rep.transient_idx.push_back(static_cast<int>(j));
                changed = true;
            }
        }
    }
    std::sort(rep.transient_idx.begin(), rep.transient_idx.end());

    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (active[i]) rep.active_idx.push_back(static_cast<int>(i));

    rep.verified = !rep.active_idx.empty();
    std::vector<Cone> act = rep.active_cones();
    for (int i : rep.active_idx) {
        if (!union_contains(act, rep.images[static_cast<std::size_t>(i)])) {
            rep.verified = false;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Transient words at refinement level k

struct WordRegion {
    std::vector<int> letters;  // indices into the active cycle alphabet
    Cone region;
};

// Indices of words that are never re-entered: w is transient when for
// every admissible predecessor u (last k-1 letters of u = first k-1 of w)
// the set M_{u_1}(R_u) . R_w has empty interior.  Removals are iterated
// to a fixpoint since they may starve other words.
inline std::vector<int> transient_words(const std::vector<WordRegion>& words,
                                        const std::vector<FracLinMap>& letter_maps) {
    std::size_t m = words.size();
    std::vector<bool> active(m, true);
    std::vector<Cone> images(m);
    for (std::size_t i = 0; i < m; ++i)
        images[i] = map_cone(letter_maps[static_cast<std::size_t>(words[i].letters.at(0))],
                             words[i].region);

    auto follows = [&](std::size_t u, std::size_t w) {
        const auto& a = words[u].letters;
        const auto& b = words[w].letters;
        return std::equal(a.begin() + 1, a.end(), b.begin(), b.end() - 1);
    };

    std::vector<int> transient;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t w = 0; w < m; ++w) {
            if (!active[w]) continue;
            bool incoming = false;
            for (std::size_t u = 0; u < m && !incoming; ++u) {
                if (!active[u] || !follows(u, w)) continue;
                incoming = !is_empty(intersect(images[u], words[w].region));
            }
            if (!incoming) {
                active[w] = false;
                transient.push_back(static_cast<int>(w));
                changed = true;
            }
        }
    }
    std::sort(transient.begin(), transient.end());
    return transient;
}

// ---------------------------------------------------------------------------
// Start-point sampling: uniform over the cone's cross-section polytope in
// the unit-L1 plane, by rejection inside its bounding box.

inline SimPoint sample_start(const NetworkSpec& spec, const Cone& cone, std::uint64_t seed) {
    if (is_empty(cone)) throw std::invalid_argument("cannot sample from an empty cone");
    int d = cone.dim;
    std::vector<std::vector<double>> verts;
    for (const auto& r : cone.rays) {
        std::vector<double> v;
        for (const auto& x : r) v.push_back(rat_double(x));
        verts.push_back(v);
    }
    // parametrize by the first d-1 reduced coordinates; the last is fixed
    // by the unit-L1 plane
    std::vector<double> lo(static_cast<std::size_t>(d - 1), 1e300),
        hi(static_cast<std::size_t>(d - 1), -1e300);
    for (const auto& v : verts)
        for (int c = 0; c + 1 < d; ++c) {
            lo[static_cast<std::size_t>(c)] = std::min(lo[static_cast<std::size_t>(c)], v[static_cast<std::size_t>(c)]);
            hi[static_cast<std::size_t>(c)] = std::max(hi[static_cast<std::size_t>(c)], v[static_cast<std::size_t>(c)]);
        }
    std::vector<std::vector<double>> rows;
    for (const auto& r : cone.ineqs) {
        std::vector<double> v;
        for (const auto& x : r) v.push_back(rat_double(x));
        rows.push_back(v);
    }
    // wall orthant signs in reduced coordinates
    std::vector<double> sign(static_cast<std::size_t>(d));
    {
        int c = 0;
        for (int orig = 0; orig < spec.n; ++orig) {
            if (orig == cone.wall.axis) continue;
            sign[static_cast<std::size_t>(c++)] = cone.wall.from.bit(orig) ? 1.0 : -1.0;
        }
    }

    std::mt19937_64 rng(seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        std::vector<double> y(static_cast<std::size_t>(d), 0.0);
        double acc = 0;
        for (int c = 0; c + 1 < d; ++c) {
            double v = lo[static_cast<std::size_t>(c)] +
                       unit() * (hi[static_cast<std::size_t>(c)] - lo[static_cast<std::size_t>(c)]);
            y[static_cast<std::size_t>(c)] = v;
            acc += sign[static_cast<std::size_t>(c)] * v;
        }
        y[static_cast<std::size_t>(d - 1)] = sign[static_cast<std::size_t>(d - 1)] * (1.0 - acc);
        bool ok = true;
        for (const auto& r : rows) {
            double s = 0;
            for (int c = 0; c < d; ++c) s += r[static_cast<std::size_t>(c)] * y[static_cast<std::size_t>(c)];
            if (s <= 0) { ok = false; break; }
        }
        if (!ok) continue;
        SimPoint p;
        p.wall = cone.wall;
        p.y.assign(static_cast<std::size_t>(spec.n), 0.0);
        int c = 0;
        for (int orig = 0; orig < spec.n; ++orig) {
            if (orig == cone.wall.axis) continue;
            p.y[static_cast<std::size_t>(orig)] = y[static_cast<std::size_t>(c++)];
        }
        return p;
    }
    throw std::runtime_error("rejection sampling failed; cone cross-section too thin");
}

}  // namespace glass
