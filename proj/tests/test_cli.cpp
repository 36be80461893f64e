#include "oracles.hpp"

#include <glass/cli.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace glass;

namespace {

std::string data_spec() { return std::string(GLASS_DATA_DIR) + "/example_network.json"; }

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("glassent-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::vector<std::string>& args) { return cli::run_args(args); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("validate pass and fail exit codes") {
    TempDir tmp;
    CHECK(run({"validate", "--spec", data_spec(), "--out", tmp.file("v.json")}) == 0);
    nlohmann::json v = nlohmann::json::parse(slurp(tmp.file("v.json")));
    CHECK(v["valid"] == true);
    CHECK(v["conditions"].size() == 3);

    std::string bad = tmp.file("bad.json");
    std::ofstream(bad) << R"({"n":1,"lambda":["1"],"gamma":{"0":["1"],"1":["-1"]}})";
    CHECK(run({"validate", "--spec", bad, "--out", tmp.file("b.json")}) == 2);

    std::string broken = tmp.file("broken.json");
    std::ofstream(broken) << R"({"n":2})";
    CHECK(run({"validate", "--spec", broken}) == 2);
}

TEST_CASE("tg command emits entropy and graphs") {
    TempDir tmp;
    CHECK(run({"tg", "--spec", data_spec(), "--out", tmp.file("tg.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("tg.json")));
    CHECK(j["graph"]["vertices"].size() == 16);
    CHECK(j["graph"]["edges"].size() == 32);
    CHECK_THAT(j["entropy"].get<double>(), Catch::Matchers::WithinAbs(0.873, 1e-3));
    CHECK(j["provenance"]["tool_version"] == cli::kVersion);

    CHECK(run({"tg", "--spec", data_spec(), "--format", "dot", "--out", tmp.file("tg.dot")}) == 0);
    CHECK_THAT(slurp(tmp.file("tg.dot")), Catch::Matchers::ContainsSubstring("digraph"));
}

TEST_CASE("cycles command lists labeled nonempty cycles") {
    TempDir tmp;
    CHECK(run({"cycles", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--out", tmp.file("c.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("c.json")));
    CHECK(j["total"] == 155);
    REQUIRE(j["nonempty"].size() == 6);
    CHECK(j["nonempty"][0]["label"] == "A");
    CHECK(j["nonempty"][0]["length"] == 8);
    CHECK(j["nonempty"][1]["label"] == "B");
    CHECK(j["nonempty"][1]["length"] == 10);
}

TEST_CASE("cones command exports regions and word regions") {
    TempDir tmp;
    CHECK(run({"cones", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--cycles", "A,B", "--out", tmp.file("cones.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("cones.json")));
    REQUIRE(j["cones"].size() == 2);
    CHECK(j["cones"][0]["word"] == "A");
    CHECK(j["cones"][0]["rays"].size() == 4);
    CHECK(j["cones"][0]["empty"] == false);

    CHECK(run({"cones", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--words", "BB,BAAB", "--out", tmp.file("w.json")}) == 0);
    nlohmann::json w = nlohmann::json::parse(slurp(tmp.file("w.json")));
    CHECK(w["cones"][0]["empty"] == true);   // BB
    CHECK(w["cones"][1]["empty"] == false);  // BAAB

    // unknown word label is a cone error
    CHECK(run({"cones", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--words", "QQ"}) == 4);
}

TEST_CASE("tg works on specs that fail validation") {
    TempDir tmp;
    std::string allterm = tmp.file("terminal.json");
    std::ofstream(allterm) << R"({"n":1,"lambda":["1"],"gamma":{"0":["-1"],"1":["1"]}})";
    CHECK(run({"tg", "--spec", allterm, "--format", "dot", "--out", tmp.file("t.dot")}) == 0);
    std::string dot = slurp(tmp.file("t.dot"));
    CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("\"0\" -> \"0\""));
    CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("\"1\" -> \"1\""));

    CHECK(run({"tg", "--spec", allterm, "--out", tmp.file("t.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("t.json")));
    CHECK(j["entropy"] == 0.0);
}

TEST_CASE("simulate binary format packs one byte per box") {
    TempDir tmp;
    CHECK(run({"simulate", "--spec", data_spec(), "--edge", "1111>1110", "--steps", "24",
               "--seed", "5", "--format", "bin", "--out", tmp.file("s.bin")}) == 0);
    std::string raw = slurp(tmp.file("s.bin"));
    REQUIRE(raw.size() == 24);
    CHECK(static_cast<unsigned char>(raw[0]) == BoxLabel::from_string("1110").code);
}

TEST_CASE("trap command verifies the designated pair but not all six") {
    TempDir tmp;
    CHECK(run({"trap", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--cycles", "A,B", "--out", tmp.file("t.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("t.json")));
    CHECK(j["trap"]["verified"] == true);
    CHECK(j["trap"]["active"] == nlohmann::json::array({"A", "B"}));

    CHECK(run({"trap", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--out", tmp.file("t6.json")}) == 3);
}

TEST_CASE("refine command produces the bound sequence") {
    TempDir tmp;
    CHECK(run({"refine", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--k", "2", "--cycles", "A,B", "--out", tmp.file("r.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("r.json")));
    REQUIRE(j["levels"].size() == 3);
    CHECK_THAT(j["levels"][0]["entropy"].get<double>(),
               Catch::Matchers::WithinAbs(0.224149, 1e-5));
    CHECK_THAT(j["levels"][1]["entropy"].get<double>(),
               Catch::Matchers::WithinAbs(0.11159, 1e-5));
    CHECK_THAT(j["levels"][2]["entropy"].get<double>(),
               Catch::Matchers::WithinAbs(0.081268, 1e-5));

    CHECK(run({"refine", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--k", "4", "--cycles", "A,B", "--forbid", "BAAB",
               "--out", tmp.file("rb.json")}) == 0);
    nlohmann::json b = nlohmann::json::parse(slurp(tmp.file("rb.json")));
    CHECK_THAT(b["entropy"].get<double>(), Catch::Matchers::WithinAbs(0.070566, 1e-5));

    // csv format
    CHECK(run({"refine", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--k", "1", "--cycles", "A,B", "--format", "csv",
               "--out", tmp.file("r.csv")}) == 0);
    CHECK_THAT(slurp(tmp.file("r.csv")),
               Catch::Matchers::ContainsSubstring("k,entropy,forbidden,transient"));
}

TEST_CASE("simulate emits bitstring symbols and honors ties") {
    TempDir tmp;
    CHECK(run({"simulate", "--spec", data_spec(), "--edge", "1111>1110", "--steps", "16",
               "--seed", "5", "--out", tmp.file("s.txt")}) == 0);
    std::string text = slurp(tmp.file("s.txt"));
    std::istringstream lines(text);
    std::string first;
    std::getline(lines, first);
    CHECK(first == "1110");
    CHECK(std::count(text.begin(), text.end(), '\n') == 16);
}

TEST_CASE("blocks and fit commands") {
    TempDir tmp;
    CHECK(run({"blocks", "--spec", data_spec(), "--edge", "1111>1110", "--steps", "50000",
               "--seed", "3", "--block-range", "5:20", "--out", tmp.file("blocks.csv")}) == 0);
    std::string csv = slurp(tmp.file("blocks.csv"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("n,count"));

    CHECK(run({"fit", "--spec", data_spec(), "--edge", "1111>1110", "--counts",
               tmp.file("blocks.csv"), "--block-range", "5:20", "--fit-range", "10:20",
               "--out", tmp.file("fit.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("fit.json")));
    CHECK(j["slope"].get<double>() > 0.0);
    CHECK(j["n_range"] == nlohmann::json::array({10, 20}));

    CHECK(run({"blocks", "--spec", data_spec(), "--edge", "1111>1110", "--steps", "20000",
               "--seed", "3", "--block-len", "60", "--growth",
               "--out", tmp.file("growth.csv")}) == 0);
    CHECK_THAT(slurp(tmp.file("growth.csv")),
               Catch::Matchers::ContainsSubstring("steps,count"));
}

TEST_CASE("report aggregates the whole pipeline") {
    TempDir tmp;
    CHECK(run({"report", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--k", "2", "--cycles", "A,B", "--out", tmp.file("rep.json")}) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("rep.json")));
    CHECK_THAT(j["entropies"]["TG"].get<double>(), Catch::Matchers::WithinAbs(0.873, 1e-3));
    CHECK_THAT(j["entropies"]["TG_r"].get<double>(), Catch::Matchers::WithinAbs(0.224, 1e-3));
    CHECK_THAT(j["entropies"]["TG_r(1)"].get<double>(), Catch::Matchers::WithinAbs(0.111, 1e-3));
    CHECK_THAT(j["entropies"]["TG_r(2)"].get<double>(), Catch::Matchers::WithinAbs(0.0813, 5e-4));
    CHECK(j["trap"]["verified"] == true);

    // unverified trap marks the stage and exits 3
    CHECK(run({"report", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len", "12",
               "--k", "2", "--out", tmp.file("rep6.json")}) == 3);
    nlohmann::json r6 = nlohmann::json::parse(slurp(tmp.file("rep6.json")));
    CHECK(r6["trap"]["verified"] == false);
    CHECK(r6["entropies"].contains("TG"));
}

TEST_CASE("identical configurations give byte-identical artifacts") {
    TempDir tmp;
    for (int round = 0; round < 2; ++round) {
        CHECK(run({"report", "--spec", data_spec(), "--edge", "1111>1110", "--max-cycle-len",
                   "12", "--k", "2", "--cycles", "A,B", "--seed", "42",
                   "--out", tmp.file("rep" + std::to_string(round) + ".json")}) == 0);
        CHECK(run({"blocks", "--spec", data_spec(), "--edge", "1111>1110", "--steps", "20000",
                   "--seed", "42", "--block-range", "5:15",
                   "--out", tmp.file("blk" + std::to_string(round) + ".csv")}) == 0);
    }
    CHECK(slurp(tmp.file("rep0.json")) == slurp(tmp.file("rep1.json")));
    CHECK(slurp(tmp.file("blk0.csv")) == slurp(tmp.file("blk1.csv")));
}
