#pragma once

// Glass network specifications: piecewise-linear systems
//
//     dy/dt = -Lambda y + Gamma(Y),   Y_i = [y_i > 0],
//
// with one threshold per variable, translated to 0.  A box is an orthant
// sign pattern; Gamma is a truth table over the 2^n boxes.  Parsing,
// validation (focal points off thresholds, no black/white walls, common
// decay rate) and the elementary per-box queries live here.

#include <glass/rational.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace glass {

// Sign pattern of a box, e.g. "1110" (bit 1 means y_i > 0).  Bit order
// follows variable order, most significant character is y_1.
struct BoxLabel {
    std::uint32_t code = 0;  // binary value of the bitstring
    int n = 0;

    BoxLabel() = default;
    BoxLabel(std::uint32_t c, int dim) : code(c), n(dim) {}

    static BoxLabel from_string(const std::string& s) {
        if (s.empty() || s.size() > 31) throw std::invalid_argument("bad box label: " + s);
        std::uint32_t c = 0;
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("bad box label: " + s);
            c = (c << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        return BoxLabel(c, static_cast<int>(s.size()));
    }

    int bit(int i) const { return static_cast<int>((code >> (n - 1 - i)) & 1u); }

    BoxLabel flipped(int i) const { return BoxLabel(code ^ (1u << (n - 1 - i)), n); }

    std::string str() const {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = bit(i) ? '1' : '0';
        return s;
    }

    friend bool operator==(const BoxLabel& a, const BoxLabel& b) {
        return a.code == b.code && a.n == b.n;
    }
    friend bool operator!=(const BoxLabel& a, const BoxLabel& b) { return !(a == b); }
    friend bool operator<(const BoxLabel& a, const BoxLabel& b) { return a.code < b.code; }
};

// Wall between two adjacent boxes, identified by the crossing direction.
struct WallId {
    BoxLabel from;
    BoxLabel to;
    int axis = -1;  // switching variable (0-based)
    int dir = 0;    // +1: y_axis crosses upward, -1: downward

    static WallId between(const BoxLabel& from, const BoxLabel& to) {
        if (from.n != to.n) throw std::invalid_argument("wall: dimension mismatch");
        std::uint32_t d = from.code ^ to.code;
        if (d == 0 || (d & (d - 1)) != 0)
            throw std::invalid_argument("wall: boxes " + from.str() + "," + to.str() +
                                        " are not adjacent");
        int axis = 0;
        while (((d >> (from.n - 1 - axis)) & 1u) == 0) ++axis;
        WallId w;
        w.from = from;
        w.to = to;
        w.axis = axis;
        w.dir = to.bit(axis) ? +1 : -1;
        return w;
    }

    std::string str() const { return from.str() + ">" + to.str(); }

    friend bool operator==(const WallId& a, const WallId& b) {
        return a.from == b.from && a.to == b.to;
    }
};

struct NetworkSpec {
    int n = 0;
    Vec lambda;               // decay rates, size n, all positive
    std::vector<Vec> gamma;   // production by box code, size 2^n

    std::size_t box_count() const { return gamma.size(); }
    BoxLabel box(std::uint32_t code) const { return BoxLabel(code, n); }

    const Vec& gamma_of(const BoxLabel& a) const {
        if (a.n != n || a.code >= gamma.size())
            throw std::invalid_argument("label outside spec: " + a.str());
        return gamma[a.code];
    }

    bool equal_decay() const {
        for (int i = 1; i < n; ++i)
            if (lambda[static_cast<std::size_t>(i)] != lambda[0]) return false;
        return true;
    }
};

// f(a) = Gamma(a)/lambda, componentwise.
inline Vec focal_point(const NetworkSpec& spec, const BoxLabel& a) {
    const Vec& g = spec.gamma_of(a);
    Vec f(g);
    for (int i = 0; i < spec.n; ++i) f[static_cast<std::size_t>(i)] /= spec.lambda[static_cast<std::size_t>(i)];
    return f;
}

struct OutDirections {
    std::vector<int> plus;   // exits upward (f_i > 0, box bit 0)
    std::vector<int> minus;  // exits downward (f_i < 0, box bit 1)
    bool terminal() const { return plus.empty() && minus.empty(); }
};

// i is an exit direction of box a iff sign(f_i(a)) differs from the box's
// sign pattern in coordinate i.  f_i = 0 never exits (flagged by validate).
inline OutDirections out_directions(const NetworkSpec& spec, const BoxLabel& a) {
    Vec f = focal_point(spec, a);
    OutDirections out;
    for (int i = 0; i < spec.n; ++i) {
        int s = sgn(f[static_cast<std::size_t>(i)]);
        if (s > 0 && a.bit(i) == 0) out.plus.push_back(i);
        if (s < 0 && a.bit(i) == 1) out.minus.push_back(i);
    }
    return out;
}

inline bool is_exit_direction(const NetworkSpec& spec, const BoxLabel& a, int axis) {
    OutDirections d = out_directions(spec, a);
    return std::find(d.plus.begin(), d.plus.end(), axis) != d.plus.end() ||
           std::find(d.minus.begin(), d.minus.end(), axis) != d.minus.end();
}

inline bool is_terminal(const NetworkSpec& spec, const BoxLabel& a) {
    return out_directions(spec, a).terminal();
}

// ---------------------------------------------------------------------------
// Validation

struct ConditionCheck {
    int condition = 0;
    bool pass = true;
    std::string detail;  // first offender, empty when passing
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const ConditionCheck& check(int condition) const {
        for (const auto& c : checks)
            if (c.condition == condition) return c;
        throw std::out_of_range("no such condition");
    }
};

// Condition 1: no focal coordinate on a threshold.  Condition 2: every wall
// is transparent -- with a single threshold per variable this reduces to
// "exactly one side flows toward the wall" (both sides toward = black wall,
// neither = white wall).  Condition 3: one common decay rate.
inline ConditionReport validate(const NetworkSpec& spec) {
    ConditionReport rep;

    ConditionCheck c1{1, true, ""};
    for (std::uint32_t code = 0; code < spec.box_count(); ++code) {
        Vec f = focal_point(spec, spec.box(code));
        for (int i = 0; i < spec.n; ++i) {
            if (f[static_cast<std::size_t>(i)] == 0) {
                c1.pass = false;
                c1.detail = "focal point of box " + spec.box(code).str() +
                            " lies on threshold y" + std::to_string(i + 1) + " = 0";
                break;
            }
        }
        if (!c1.pass) break;
    }
    rep.checks.push_back(c1);

    ConditionCheck c2{2, true, ""};
    for (std::uint32_t code = 0; code < spec.box_count() && c2.pass; ++code) {
        BoxLabel a = spec.box(code);
        for (int i = 0; i < spec.n && c2.pass; ++i) {
            if (a.bit(i) == 1) continue;  // visit each wall once, from below
            BoxLabel b = a.flipped(i);
            Vec fa = focal_point(spec, a);
            Vec fb = focal_point(spec, b);
            bool lower_toward = sgn(fa[static_cast<std::size_t>(i)]) > 0;
            bool upper_toward = sgn(fb[static_cast<std::size_t>(i)]) < 0;
            if (lower_toward && upper_toward) {
                c2.pass = false;
                c2.detail = "black wall between boxes " + a.str() + " and " + b.str() +
                            " (axis y" + std::to_string(i + 1) + ")";
            } else if (!lower_toward && !upper_toward) {
                c2.pass = false;
                c2.detail = "white wall between boxes " + a.str() + " and " + b.str() +
                            " (axis y" + std::to_string(i + 1) + ")";
            }
        }
    }
    rep.checks.push_back(c2);

    ConditionCheck c3{3, true, ""};
    for (int i = 1; i < spec.n; ++i) {
        if (spec.lambda[static_cast<std::size_t>(i)] != spec.lambda[0]) {
            c3.pass = false;
            c3.detail = "decay rates differ: lambda1 = " + rat_str(spec.lambda[0]) +
                        ", lambda" + std::to_string(i + 1) + " = " +
                        rat_str(spec.lambda[static_cast<std::size_t>(i)]);
            break;
        }
    }
    rep.checks.push_back(c3);
    return rep;
}

// ---------------------------------------------------------------------------
// Parsing
//
// Document layout (all rationals as "p/q" or integer strings):
//   { "n": 4, "lambda": ["1", ...],
//     "gamma": { "1110": ["1","-1","-1","-1"], ... } }
// or a signed sum-of-products form, expanded to the full table at parse time:
//   { ..., "terms": [ { "products": [ {"coeff":"2","literals":["Y3'","Y4"]},
//                                     ... ], "offset": "-1" }, ... ] }
// A literal "Yk" evaluates to the box bit of y_k, "Yk'" to its complement.

using json = nlohmann::json;

inline int parse_literal(const std::string& lit, int n, bool& negated) {
    negated = false;
    std::string body = lit;
    if (!body.empty() && body.back() == '\'') {
        negated = true;
        body.pop_back();
    }
    if (body.size() < 2 || body[0] != 'Y')
        throw std::invalid_argument("bad literal: " + lit);
    int idx = 0;
    for (std::size_t k = 1; k < body.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(body[k])))
            throw std::invalid_argument("bad literal: " + lit);
        idx = idx * 10 + (body[k] - '0');
    }
    if (idx < 1 || idx > n) throw std::invalid_argument("literal out of range: " + lit);
    return idx - 1;
}

inline NetworkSpec parse_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw std::invalid_argument("missing integer field \"n\"");
    NetworkSpec spec;
    spec.n = doc["n"].get<int>();
    if (spec.n < 1 || spec.n > 24) throw std::invalid_argument("n out of range");

    if (!doc.contains("lambda") || !doc["lambda"].is_array() ||
        doc["lambda"].size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("lambda must list one rate per variable");
    for (const auto& x : doc["lambda"]) {
        Rat r = parse_rat(x.get<std::string>());
        if (r <= 0) throw std::invalid_argument("non-positive decay rate " + rat_str(r));
        spec.lambda.push_back(r);
    }

    std::size_t boxes = std::size_t{1} << spec.n;
    spec.gamma.assign(boxes, Vec());

    if (doc.contains("gamma")) {
        const auto& g = doc["gamma"];
        if (!g.is_object()) throw std::invalid_argument("gamma must be an object");
        for (auto it = g.begin(); it != g.end(); ++it) {
            BoxLabel a = BoxLabel::from_string(it.key());
            if (a.n != spec.n)
                throw std::invalid_argument("box label " + it.key() + " has wrong length");
            if (!it.value().is_array() || it.value().size() != static_cast<std::size_t>(spec.n))
                throw std::invalid_argument("gamma row " + it.key() + ": dimension mismatch");
            Vec row;
            for (const auto& x : it.value()) row.push_back(parse_rat(x.get<std::string>()));
            spec.gamma[a.code] = row;
        }
        for (std::uint32_t code = 0; code < boxes; ++code)
            if (spec.gamma[code].empty())
                throw std::invalid_argument("incomplete truth table: no row for box " +
                                            BoxLabel(code, spec.n).str());
    } else if (doc.contains("terms")) {
        const auto& ts = doc["terms"];
        if (!ts.is_array() || ts.size() != static_cast<std::size_t>(spec.n))
            throw std::invalid_argument("terms must list one entry per variable");
        struct Product {
            Rat coeff;
            std::vector<std::pair<int, bool>> lits;  // (variable, negated)
        };
        std::vector<std::vector<Product>> products(static_cast<std::size_t>(spec.n));
        Vec offsets(static_cast<std::size_t>(spec.n), Rat(0));
        for (int i = 0; i < spec.n; ++i) {
            const auto& entry = ts[static_cast<std::size_t>(i)];
            if (entry.contains("offset")) offsets[static_cast<std::size_t>(i)] = parse_rat(entry["offset"].get<std::string>());
            if (!entry.contains("products") || !entry["products"].is_array())
                throw std::invalid_argument("terms entry needs a \"products\" array");
            for (const auto& p : entry["products"]) {
                Product pr;
                pr.coeff = parse_rat(p.at("coeff").get<std::string>());
                for (const auto& l : p.at("literals")) {
                    bool neg = false;
                    int var = parse_literal(l.get<std::string>(), spec.n, neg);
                    pr.lits.emplace_back(var, neg);
                }
                products[static_cast<std::size_t>(i)].push_back(std::move(pr));
            }
        }
        for (std::uint32_t code = 0; code < boxes; ++code) {
            BoxLabel a(code, spec.n);
            Vec row(static_cast<std::size_t>(spec.n), Rat(0));
            for (int i = 0; i < spec.n; ++i) {
                Rat v = offsets[static_cast<std::size_t>(i)];
                for (const auto& pr : products[static_cast<std::size_t>(i)]) {
                    bool on = true;
                    for (auto [var, neg] : pr.lits)
                        on = on && (neg ? a.bit(var) == 0 : a.bit(var) == 1);
                    if (on) v += pr.coeff;
                }
                row[static_cast<std::size_t>(i)] = v;
            }
            spec.gamma[code] = std::move(row);
        }
    } else {
        throw std::invalid_argument("spec needs either \"gamma\" or \"terms\"");
    }
    return spec;
}

// Always emits the explicit truth-table form.
inline std::string serialize(const NetworkSpec& spec) {
    nlohmann::ordered_json doc;
    doc["n"] = spec.n;
    std::vector<std::string> lam;
    for (const auto& l : spec.lambda) lam.push_back(rat_str(l));
    doc["lambda"] = lam;
    nlohmann::ordered_json g;
    for (std::uint32_t code = 0; code < spec.box_count(); ++code) {
        std::vector<std::string> row;
        for (const auto& x : spec.gamma[code]) row.push_back(rat_str(x));
        g[spec.box(code).str()] = row;
    }
    doc["gamma"] = g;
    return doc.dump(2);
}

}  // namespace glass
