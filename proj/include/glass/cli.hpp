#pragma once

// Command-line pipeline.  Subcommands mirror the analysis stages:
//
//   validate  conditions report            tg        transition graph + entropy
//   cycles    first-return cycles          cones     returning cones
//   trap      trapping verification       refine    TG_r(k) bound sequence
//   simulate  wall-to-wall trajectories   blocks    distinct-block counts
//   fit       least-squares entropy fit   report    whole pipeline, one JSON
//
// Exit codes: 0 ok, 2 invalid spec, 3 trapping unverified, 4 cone error,
// 5 codimension-2 tie abort, 1 anything else.

#include <glass/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace glass::cli {

inline constexpr const char* kVersion = "glassent 0.1.0";

namespace detail {

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << v;
    return ss.str();
}

struct Pipeline {
    std::string spec_text;
    std::string spec_hash;
    NetworkSpec spec;
    std::uint64_t seed = 0;

    ojson provenance() const {
        ojson p;
        p["tool_version"] = kVersion;
        p["spec_fnv1a64"] = spec_hash;
        p["seed"] = seed;
        return p;
    }
    std::string provenance_csv() const {
        return std::string("# ") + kVersion + " spec_fnv1a64=" + spec_hash +
               " seed=" + std::to_string(seed) + "\n";
    }
};

inline Pipeline load_spec(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Pipeline p;
    p.spec_text = buf.str();
    p.spec_hash = hex64(fnv1a64(p.spec_text));
    p.spec = parse_network(p.spec_text);
    p.seed = seed;
    return p;
}

inline void write_artifact(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << content;
}

inline WallId parse_edge(const NetworkSpec& spec, const std::string& text) {
    auto gt = text.find('>');
    if (gt == std::string::npos)
        throw std::invalid_argument("--edge expects FROM>TO bitstrings, got " + text);
    BoxLabel from = BoxLabel::from_string(text.substr(0, gt));
    BoxLabel to = BoxLabel::from_string(text.substr(gt + 1));
    if (from.n != spec.n || to.n != spec.n)
        throw std::invalid_argument("--edge labels do not match the network dimension");
    return WallId::between(from, to);
}

// Enumerate, keep the cycles with nonempty returning cones, label them
// A, B, ... in lexicographic order, then restrict to --cycles if given.
struct CycleSelection {
    std::vector<CycleWord> all;       // every first-return cycle <= M
    std::vector<CycleWord> nonempty;  // labeled
    std::vector<CycleWord> chosen;
};

inline CycleSelection select_cycles(const NetworkSpec& spec, const BoxGraph& tg,
                                    const WallId& edge, int max_len,
                                    const std::string& cycles_flag) {
    CycleSelection sel;
    sel.all = enumerate_first_return_cycles(tg, edge, max_len);
    for (const auto& c : sel.all)
        if (!is_empty(returning_region(spec, c))) sel.nonempty.push_back(c);
    label_cycles(sel.nonempty);
    if (cycles_flag.empty()) {
        sel.chosen = sel.nonempty;
        return sel;
    }
    std::set<std::string> want;
    std::stringstream ss(cycles_flag);
    std::string tok;
    while (std::getline(ss, tok, ',')) want.insert(tok);
    for (const auto& c : sel.nonempty)
        if (want.erase(c.label)) sel.chosen.push_back(c);
    if (!want.empty())
        throw std::invalid_argument("--cycles names an unknown cycle label: " + *want.begin());
    return sel;
}

inline std::vector<std::uint64_t> log_checkpoints(std::uint64_t max_steps) {
    std::vector<std::uint64_t> cps;
    std::uint64_t v = 1000;
    while (v < max_steps) {
        cps.push_back(v);
        std::uint64_t next = static_cast<std::uint64_t>(static_cast<double>(v) * 1.5);
        v = std::max(next, v + 1);
    }
    cps.push_back(max_steps);
    return cps;
}

}  // namespace detail

struct RunConfig {
    std::string command;
    std::string spec_path;
    std::string edge;
    std::string cycles;
    int max_cycle_len = 0;
    int k = 1;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    int block_len = 0;
    std::string block_range;
    std::string fit_range;
    std::string counts_path;
    std::string format = "json";
    std::string out_path;
    int threads = 0;
    bool growth = false;
    std::uint64_t discard = 1000;  // transient prefix dropped before counting
    std::vector<std::string> forbid;
};

inline int run(const RunConfig& cfg);

// argv-style entry point used by the binary and by tests.
inline int run_args(const std::vector<std::string>& args) {
    CLI::App app{"entropy bounds for Glass network attractors via symbolic transition graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_edge) {
        sub->add_option("--spec", cfg.spec_path, "network spec JSON")->required();
        auto* e = sub->add_option("--edge", cfg.edge, "starting edge FROM>TO");
        if (needs_edge) e->required();
        sub->add_option("--threads", cfg.threads, "worker threads (default: GLASS_THREADS or machine)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json|csv|dot|bits|bin")
            ->check(CLI::IsMember({"json", "csv", "dot", "bits", "bin"}));
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    auto* validate = app.add_subcommand("validate", "check Conditions 1-3");
    add_common(validate, false);

    auto* tg = app.add_subcommand("tg", "transition graph and its entropy");
    add_common(tg, false);

    auto* cycles = app.add_subcommand("cycles", "first-return cycles through an edge");
    add_common(cycles, true);
    cycles->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M")->required();

    auto* cones = app.add_subcommand("cones", "returning cones of cycles or cycle words");
    add_common(cones, true);
    cones->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M")->required();
    cones->add_option("--cycles", cfg.cycles, "comma-separated cycle labels");
    cones->add_option("--words", cfg.forbid, "cycle words to compute regions for (e.g. BB,BAAB)")
        ->delimiter(',');

    auto* trap = app.add_subcommand("trap", "verify a trapping region");
    add_common(trap, true);
    trap->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M")->required();
    trap->add_option("--cycles", cfg.cycles, "comma-separated cycle labels (default: all nonempty)");

    auto* refine = app.add_subcommand("refine", "TG_r(k) refinement and bound sequence");
    add_common(refine, true);
    refine->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M")->required();
    refine->add_option("--k", cfg.k, "refinement level k")->required();
    refine->add_option("--cycles", cfg.cycles, "comma-separated cycle labels");
    refine->add_option("--forbid", cfg.forbid, "extra forbidden words (e.g. BAAB)")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "wall-to-wall simulation symbol stream");
    add_common(simulate, true);
    simulate->add_option("--max-cycle-len", cfg.max_cycle_len,
                         "cycle length bound M (start cone selection)");
    simulate->add_option("--cycles", cfg.cycles, "start cone cycle label (default: first)");
    simulate->add_option("--steps", cfg.steps, "number of wall transitions")->required();

    auto* blocks = app.add_subcommand("blocks", "distinct-block counts from a simulation");
    add_common(blocks, true);
    blocks->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M");
    blocks->add_option("--cycles", cfg.cycles, "start cone cycle label");
    blocks->add_option("--steps", cfg.steps, "number of wall transitions")->required();
    blocks->add_option("--block-len", cfg.block_len, "single block length n");
    blocks->add_option("--block-range", cfg.block_range, "block length range A:B");
    blocks->add_flag("--growth", cfg.growth, "emit (steps, count) growth table at --block-len");
    blocks->add_option("--discard", cfg.discard, "transient prefix to drop (default 1000)");

    auto* fit = app.add_subcommand("fit", "least-squares entropy estimate from block counts");
    add_common(fit, true);
    fit->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M");
    fit->add_option("--cycles", cfg.cycles, "start cone cycle label");
    fit->add_option("--steps", cfg.steps, "number of wall transitions");
    fit->add_option("--counts", cfg.counts_path, "read (n,count) CSV instead of simulating");
    fit->add_option("--block-range", cfg.block_range, "block length range A:B")->required();
    fit->add_option("--fit-range", cfg.fit_range, "fit range A:B (default: --block-range)");
    fit->add_option("--discard", cfg.discard, "transient prefix to drop (default 1000)");

    auto* report = app.add_subcommand("report", "full pipeline: validate..refine in one JSON");
    add_common(report, true);
    report->add_option("--max-cycle-len", cfg.max_cycle_len, "cycle length bound M")->required();
    report->add_option("--k", cfg.k, "maximum refinement level")->required();
    report->add_option("--cycles", cfg.cycles, "comma-separated cycle labels");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    for (auto* sub : {validate, tg, cycles, cones, trap, refine, simulate, blocks, fit, report})
        if (sub->parsed()) cfg.command = sub->get_name();

    try {
        return run(cfg);
    } catch (const CodimensionTwoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const DenominatorSignError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {  // bad cycle words / wall paths
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace detail {

inline int thread_count(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("GLASS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

inline std::pair<int, int> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must be A:B, got " + text);
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

inline std::vector<Symbol> run_simulation(const Pipeline& p, const RunConfig& cfg,
                                          const WallId& edge, std::string* err = nullptr) {
    BoxGraph tg = build_tg(p.spec);
    int m = cfg.max_cycle_len > 0 ? cfg.max_cycle_len : 2 * p.spec.n + 4;
    CycleSelection sel = select_cycles(p.spec, tg, edge, m, "");
    if (sel.nonempty.empty()) throw std::invalid_argument("no nonempty returning cone on this edge");
    const CycleWord* pick = &sel.nonempty.front();
    if (!cfg.cycles.empty()) {
        pick = nullptr;
        for (const auto& c : sel.nonempty)
            if (c.label == cfg.cycles) pick = &c;
        if (!pick) throw std::invalid_argument("unknown start cone label " + cfg.cycles);
    }
    Cone cone = returning_region(p.spec, *pick);
    SimPoint start = sample_start(p.spec, cone, p.seed);
    SimResult sim = simulate(p.spec, start, cfg.steps);
    if (sim.terminal && err) *err = "trajectory entered a terminal box";
    return to_symbols(sim.symbols);
}

}  // namespace detail

inline int run(const RunConfig& cfg) {
    using namespace detail;
    Pipeline p = load_spec(cfg.spec_path, cfg.seed);
    int threads = thread_count(cfg);

    if (cfg.command == "validate") {
        ConditionReport rep = validate(p.spec);
        ojson j;
        j["provenance"] = p.provenance();
        j["n"] = p.spec.n;
        j["conditions"] = condition_report_json(rep);
        j["valid"] = rep.all_pass();
        write_artifact(cfg.out_path, j.dump(2));
        return rep.all_pass() ? 0 : 2;
    }

    ConditionReport rep = validate(p.spec);
    if (!rep.all_pass() && cfg.command != "tg") {
        std::cerr << "error: spec fails validation: ";
        for (const auto& c : rep.checks)
            if (!c.pass) std::cerr << c.detail << "; ";
        std::cerr << "\n";
        return 2;
    }

    BoxGraph tg = build_tg(p.spec);

    if (cfg.command == "tg") {
        if (cfg.format == "dot") {
            write_artifact(cfg.out_path, to_dot(tg));
            return 0;
        }
        ojson j;
        j["provenance"] = p.provenance();
        j["graph"] = graph_json(tg);
        j["entropy"] = round6(graph_entropy(tg.digraph()));
        write_artifact(cfg.out_path, j.dump(2));
        return 0;
    }

    WallId edge = parse_edge(p.spec, cfg.edge);
    if (!tg.has_edge(edge.from, edge.to))
        throw std::invalid_argument("starting edge " + edge.str() + " is not a TG edge");

    if (cfg.command == "simulate") {
        std::vector<Symbol> seq = run_simulation(p, cfg, edge);
        std::ostringstream out;
        if (cfg.format == "bin") {  // compact binary run of box indices
            for (Symbol s : seq) {
                if (p.spec.n <= 8) {
                    out.put(static_cast<char>(s & 0xff));
                } else {  // little-endian 32-bit codes
                    for (int b = 0; b < 4; ++b) out.put(static_cast<char>((s >> (8 * b)) & 0xff));
                }
            }
        } else if (cfg.format == "csv") {
            out << p.provenance_csv() << "box\n";
            for (Symbol s : seq) out << s << "\n";
        } else {  // newline-delimited bitstrings
            for (Symbol s : seq) out << BoxLabel(s, p.spec.n).str() << "\n";
        }
        write_artifact(cfg.out_path, out.str());
        return 0;
    }

    if (cfg.command == "blocks" || cfg.command == "fit") {
        if (cfg.command == "fit" && cfg.counts_path.empty() && cfg.steps == 0)
            throw std::invalid_argument("fit needs --steps or --counts");
        std::vector<std::pair<int, std::uint64_t>> counts;
        if (cfg.command == "fit" && !cfg.counts_path.empty()) {
            std::ifstream in(cfg.counts_path);
            if (!in) throw std::invalid_argument("cannot open counts file " + cfg.counts_path);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
                auto comma = line.find(',');
                if (comma == std::string::npos) continue;
                counts.emplace_back(std::stoi(line.substr(0, comma)),
                                    std::stoull(line.substr(comma + 1)));
            }
        } else {
            std::vector<Symbol> seq = run_simulation(p, cfg, edge);
            if (seq.size() > cfg.discard)
                seq.erase(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(cfg.discard));

            if (cfg.command == "blocks" && cfg.growth) {
                if (cfg.block_len < 1) throw std::invalid_argument("--growth needs --block-len");
                BlockCounter counter(seq, cfg.block_len);
                std::ostringstream out;
                out << p.provenance_csv() << "steps,count\n";
                for (std::uint64_t cp : log_checkpoints(seq.size())) {
                    counter.advance(static_cast<std::size_t>(cp));
                    out << cp << "," << counter.distinct() << "\n";
                }
                write_artifact(cfg.out_path, out.str());
                return 0;
            }

            int lo = cfg.block_len, hi = cfg.block_len;
            if (!cfg.block_range.empty()) std::tie(lo, hi) = parse_range(cfg.block_range);
            if (lo < 1 || hi < lo) throw std::invalid_argument("bad block length range");
            for (int n = lo; n <= hi; ++n)
                counts.emplace_back(n, count_blocks(seq, n));
        }

        if (cfg.command == "blocks") {
            std::ostringstream out;
            out << p.provenance_csv() << "n,count\n";
            for (auto [n, c] : counts) out << n << "," << c << "\n";
            write_artifact(cfg.out_path, out.str());
            return 0;
        }

        auto [flo, fhi] = cfg.fit_range.empty()
                              ? std::make_pair(counts.front().first, counts.back().first)
                              : parse_range(cfg.fit_range);
        FitResult fit = fit_entropy(counts, flo, fhi);
        ojson j;
        j["provenance"] = p.provenance();
        j["steps"] = cfg.steps;
        j["slope"] = round6(fit.slope);
        j["intercept"] = round6(fit.intercept);
        j["residual"] = round6(fit.residual);
        j["n_range"] = {fit.n_lo, fit.n_hi};
        j["points"] = fit.points;
        write_artifact(cfg.out_path, j.dump(2));
        return 0;
    }

    // remaining commands share the cycle enumeration
    CycleSelection sel = select_cycles(p.spec, tg, edge, cfg.max_cycle_len, cfg.cycles);

    if (cfg.command == "cycles") {
        ojson j;
        j["provenance"] = p.provenance();
        j["starting_edge"] = edge.str();
        j["max_cycle_len"] = cfg.max_cycle_len;
        j["total"] = sel.all.size();
        ojson list = ojson::array();
        for (const auto& c : sel.nonempty) {
            ojson e;
            e["label"] = c.label;
            e["length"] = c.length();
            std::vector<std::string> boxes;
            for (const auto& b : c.boxes) boxes.push_back(b.str());
            e["boxes"] = boxes;
            list.push_back(e);
        }
        j["nonempty"] = list;
        write_artifact(cfg.out_path, j.dump(2));
        return 0;
    }

    if (cfg.command == "cones") {
        ojson j;
        j["provenance"] = p.provenance();
        ojson list = ojson::array();
        if (!cfg.forbid.empty()) {  // --words
            std::vector<std::string> alphabet;
            for (const auto& c : sel.nonempty) alphabet.push_back(c.label);
            for (const auto& word : cfg.forbid) {
                std::vector<int> letters = parse_word(word, alphabet);
                std::vector<CycleWord> path;
                for (int l : letters) path.push_back(sel.nonempty[static_cast<std::size_t>(l)]);
                Cone region = returning_region(p.spec, path);
                ojson e = cone_json(region);
                e["word"] = word;
                list.push_back(e);
            }
        } else {
            for (const auto& c : sel.chosen) {
                ojson e = cone_json(returning_region(p.spec, c));
                e["word"] = c.label;
                list.push_back(e);
            }
        }
        if (cfg.format == "csv") {  // cross-section polygons for plotting
            std::ostringstream out;
            out << p.provenance_csv();
            for (const auto& c : sel.chosen)
                out << "# " << c.label << "\n" << cross_section_csv(returning_region(p.spec, c));
            write_artifact(cfg.out_path, out.str());
            return 0;
        }
        j["cones"] = list;
        write_artifact(cfg.out_path, j.dump(2));
        return 0;
    }

    TrappingReport trap = verify_trapping(p.spec, edge, sel.chosen);

    auto trap_json = [&]() {
        ojson t;
        t["starting_edge"] = edge.str();
        t["verified"] = trap.verified;
        auto labels = [&](const std::vector<int>& idx) {
            std::vector<std::string> out;
            for (int i : idx) out.push_back(trap.cycles[static_cast<std::size_t>(i)].label);
            return out;
        };
        t["active"] = labels(trap.active_idx);
        t["empty"] = labels(trap.empty_idx);
        t["transient"] = labels(trap.transient_idx);
        return t;
    };

    if (cfg.command == "trap") {
        ojson j;
        j["provenance"] = p.provenance();
        j["trap"] = trap_json();
        write_artifact(cfg.out_path, j.dump(2));
        return trap.verified ? 0 : 3;
    }

    if (cfg.command == "refine") {
        if (!trap.verified) {
            std::cerr << "error: trapping region not verified\n";
            return 3;
        }
        if (!cfg.forbid.empty()) {
            RefinedGraph base = build_tgr_k(p.spec, trap, cfg.k, {}, threads);
            RefinedGraph banned = forbid_words(p.spec, trap, base, cfg.forbid, threads);
            if (cfg.format == "dot") {
                write_artifact(cfg.out_path, to_dot(banned));
                return 0;
            }
            ojson j;
            j["provenance"] = p.provenance();
            j["trap"] = trap_json();
            j["forbidden"] = cfg.forbid;
            j["level"] = banned.level;
            j["entropy"] = round6(banned.entropy());
            j["graph"] = graph_json(banned);
            write_artifact(cfg.out_path, j.dump(2));
            return 0;
        }
        std::vector<LevelRow> rows = entropy_sequence(p.spec, trap, cfg.k, threads);
        if (cfg.format == "csv") {
            std::ostringstream out;
            out << p.provenance_csv() << "k,entropy,forbidden,transient,vertices,edges\n";
            for (const auto& r : rows)
                out << r.k << "," << round6(r.entropy) << "," << r.empty_count << ","
                    << r.transient_count << "," << r.vertex_count << "," << r.edge_count << "\n";
            write_artifact(cfg.out_path, out.str());
            return 0;
        }
        if (cfg.format == "dot") {
            RefinedGraph gk = build_tgr_k(p.spec, trap, cfg.k, {}, threads);
            write_artifact(cfg.out_path, to_dot(gk));
            return 0;
        }
        ojson j;
        j["provenance"] = p.provenance();
        j["trap"] = trap_json();
        ojson seq = ojson::array();
        for (const auto& r : rows) {
            ojson e;
            e["k"] = r.k;
            e["entropy"] = round6(r.entropy);
            e["forbidden"] = r.empty_count;
            e["transient"] = r.transient_count;
            e["vertices"] = r.vertex_count;
            e["edges"] = r.edge_count;
            seq.push_back(e);
        }
        j["levels"] = seq;
        write_artifact(cfg.out_path, j.dump(2));
        return 0;
    }

    if (cfg.command == "report") {
        ojson j;
        j["provenance"] = p.provenance();
        j["conditions"] = condition_report_json(rep);
        j["tg"] = {{"vertices", tg.vertices.size()},
                   {"edges", tg.edges.size()},
                   {"entropy", round6(graph_entropy(tg.digraph()))}};
        ojson cyc;
        cyc["max_cycle_len"] = cfg.max_cycle_len;
        cyc["total"] = sel.all.size();
        std::vector<std::string> labels;
        for (const auto& c : sel.chosen) labels.push_back(c.label);
        cyc["chosen"] = labels;
        j["cycles"] = cyc;
        j["trap"] = trap_json();
        ojson entropies;
        entropies["TG"] = round6(graph_entropy(tg.digraph()));
        if (trap.verified) {
            std::vector<LevelRow> rows = entropy_sequence(p.spec, trap, cfg.k, threads);
            ojson seq = ojson::array();
            for (const auto& r : rows) {
                ojson e;
                e["k"] = r.k;
                e["entropy"] = round6(r.entropy);
                e["forbidden"] = r.empty_count;
                e["transient"] = r.transient_count;
                e["vertices"] = r.vertex_count;
                e["edges"] = r.edge_count;
                seq.push_back(e);
                entropies[r.k == 0 ? "TG_r" : ("TG_r(" + std::to_string(r.k) + ")")] =
                    round6(r.entropy);
            }
            j["levels"] = seq;
            j["entropies"] = entropies;
            write_artifact(cfg.out_path, j.dump(2));
            return 0;
        }
        j["levels"] = {{"status", "skipped"}, {"reason", "trapping region not verified"}};
        j["entropies"] = entropies;
        write_artifact(cfg.out_path, j.dump(2));
        return 3;
    }

    throw std::invalid_argument("unknown command " + cfg.command);
}

}  // namespace glass::cli
