#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;
namespace qt = quasirank::testing;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox(const char* name) : dir(fs::temp_directory_path() / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = dir / name;
        std::ofstream(p) << content;
        return p;
    }
};

int run(const std::string& args) {
    const std::string cmd = std::string(QUASIRANK_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// node_label -> (score, rank)
std::map<std::string, std::pair<double, int>> read_scores(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // header
    std::map<std::string, std::pair<double, int>> out;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        out[line.substr(0, c1)] = {std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                                   std::stoi(line.substr(c2 + 1))};
    }
    return out;
}

} // namespace

TEST_CASE("decompose writes the stats and partition") {
    Sandbox sb("qr_cli_decompose");
    const fs::path g3 = sb.write("g3.txt", qt::G3_EDGES);
    const fs::path out = sb.dir / "out";
    REQUIRE(run("decompose --input " + g3.string() + " --out " + out.string()) == 0);

    const auto stats = nlohmann::json::parse(slurp(out / "stats.json"));
    CHECK(stats["total"] == 3);
    CHECK(stats["escc_size"] == 2);
    CHECK(stats["pout_size"] == 1);
    CHECK(slurp(out / "partition.csv").find("2,POUT") != std::string::npos);

    const fs::path g4 = sb.write("g4.txt", qt::G4_EDGES);
    REQUIRE(run("decompose --input " + g4.string() + " --out " + out.string()) == 0);
    const auto stats4 = nlohmann::json::parse(slurp(out / "stats.json"));
    CHECK(stats4["escc_size"] == 3);
    CHECK(stats4["pout_size"] == 1);
}

TEST_CASE("empty input exits with the parse code") {
    Sandbox sb("qr_cli_empty");
    const fs::path empty = sb.write("empty.txt", "");
    CHECK(run("decompose --input " + empty.string() + " --out " + (sb.dir / "o").string()) == 2);
    CHECK_FALSE(fs::exists(sb.dir / "o" / "stats.json"));
}

TEST_CASE("rank reproduces the closed-form scores") {
    Sandbox sb("qr_cli_rank");
    const fs::path g3 = sb.write("g3.txt", qt::G3_EDGES);
    const fs::path out = sb.dir / "out";
    REQUIRE(run("rank --input " + g3.string() + " --out " + out.string()) == 0);

    const auto pi_hat = read_scores(out / "pi_hat.csv");
    CHECK(pi_hat.at("0").first == doctest::Approx(3.0 / 7.0).epsilon(1e-6));
    CHECK(pi_hat.at("1").first == doctest::Approx(4.0 / 7.0).epsilon(1e-6));
    const auto pi_tilde = read_scores(out / "pi_tilde.csv");
    CHECK(pi_tilde.at("1").first == doctest::Approx(0.5857864376).epsilon(1e-6));
    const auto pi_bar = read_scores(out / "pi_bar.csv");
    CHECK(pi_bar.at("0").first == doctest::Approx(0.5).epsilon(1e-6));
    const auto pi_check = read_scores(out / "pi_check.csv");
    CHECK(pi_check.at("0").first == doctest::Approx(0.5).epsilon(1e-6));
    const auto pr = read_scores(out / "pagerank.csv");
    CHECK(pr.size() == 3);  // full-graph domain

    const auto spectral = nlohmann::json::parse(slurp(out / "spectral.json"));
    const double l1 = spectral["lambda1"];
    const double l2 = spectral["lambda1_exit_identity"];
    CHECK(l1 == doctest::Approx(0.7071067811865475).epsilon(1e-6));
    CHECK(std::abs(l1 - l2) <= 1e-8);
}

TEST_CASE("measure selection restricts the outputs") {
    Sandbox sb("qr_cli_measures");
    const fs::path g3 = sb.write("g3.txt", qt::G3_EDGES);
    const fs::path out = sb.dir / "out";
    REQUIRE(run("rank --measures pagerank --input " + g3.string() + " --out " + out.string()) ==
            0);
    CHECK(fs::exists(out / "pagerank.csv"));
    CHECK_FALSE(fs::exists(out / "pi_hat.csv"));
    CHECK_FALSE(fs::exists(out / "spectral.json"));
}

TEST_CASE("identical runs are byte identical") {
    Sandbox sb("qr_cli_repro");
    const fs::path g4 = sb.write("g4.txt", qt::G4_EDGES);
    REQUIRE(run("rank --input " + g4.string() + " --out " + (sb.dir / "a").string()) == 0);
    REQUIRE(run("rank --input " + g4.string() + " --out " + (sb.dir / "b").string()) == 0);
    for (const char* f :
         {"pagerank.csv", "pi_hat.csv", "pi_bar.csv", "pi_tilde.csv", "pi_check.csv",
          "spectral.json"}) {
        CHECK(slurp(sb.dir / "a" / f) == slurp(sb.dir / "b" / f));
    }

    REQUIRE(run("gen-album --seed 7 --out " + (sb.dir / "ga").string()) == 0);
    REQUIRE(run("gen-album --seed 7 --out " + (sb.dir / "gb").string()) == 0);
    CHECK(slurp(sb.dir / "ga" / "album_graph.tsv") == slurp(sb.dir / "gb" / "album_graph.tsv"));
}

TEST_CASE("simulate validates its sample count and writes the walk table") {
    Sandbox sb("qr_cli_sim");
    const fs::path g4 = sb.write("g4.txt", qt::G4_EDGES);
    const fs::path out = sb.dir / "out";
    CHECK(run("simulate --input " + g4.string() + " --out " + out.string() +
              " --start 1 --samples 0") == 3);
    REQUIRE(run("simulate --input " + g4.string() + " --out " + out.string() +
                " --start 1 --horizon 3 --samples 50000 --seed 11") == 0);
    const std::string table = slurp(out / "walks.csv");
    CHECK(table.find("i,j,N,analytic,estimate,std_error,z_score") == 0);
    CHECK(run("simulate --input " + g4.string() + " --out " + out.string() +
              " --start 3 --samples 10") == 3);  // start outside the core
}

TEST_CASE("perturb writes residuals that shrink down the grid") {
    Sandbox sb("qr_cli_perturb");
    const fs::path g3 = sb.write("g3.txt", qt::G3_EDGES);
    const fs::path out = sb.dir / "out";
    REQUIRE(run("perturb --input " + g3.string() + " --out " + out.string()) == 0);
    std::ifstream in(out / "expansion_report.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header.find("epsilon") == 0);
    const std::size_t pi_col = [&] {
        std::size_t col = 0, k = 0;
        std::stringstream hs(header);
        std::string field;
        while (std::getline(hs, field, ',')) {
            if (field == "pi_tilde") col = k;
            ++k;
        }
        return col;
    }();
    double prev = 1e9;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::string field;
        double value = 0;
        for (std::size_t k = 0; k <= pi_col; ++k) {
            std::getline(ls, field, ',');
            value = std::stod(field);
        }
        CHECK(value < prev);
        prev = value;
    }
}

TEST_CASE("gen-album writes the edge list and the node classes") {
    Sandbox sb("qr_cli_album");
    const fs::path out = sb.dir / "out";
    REQUIRE(run("gen-album --albums 2 --pages 3 --hubs 2 --density 1 --seed 5 --leaves 1 "
                "--exits 1 --out " +
                out.string()) == 0);
    const auto meta = nlohmann::json::parse(slurp(out / "album_meta.json"));
    CHECK(meta["nodes"] == 2 + 2 * 4 + 1 + 1);
    CHECK(meta["hubs"].size() == 2);
    CHECK(meta["interiors"].size() == 6);
    // the written edge list is ingestible
    CHECK(run("decompose --input " + (out / "album_graph.tsv").string() + " --out " +
              (sb.dir / "d").string()) == 0);
}

TEST_CASE("bad flag values exit with the validation code") {
    Sandbox sb("qr_cli_bad");
    const fs::path g3 = sb.write("g3.txt", qt::G3_EDGES);
    CHECK(run("rank --input " + g3.string() + " --damping 1.5 --out " +
              (sb.dir / "o").string()) == 3);
    CHECK(run("rank --input " + g3.string() + " --tol 0 --out " + (sb.dir / "o").string()) == 3);
}

TEST_CASE("an exhausted iteration budget exits with the convergence code") {
    Sandbox sb("qr_cli_conv");
    const fs::path g4 = sb.write("g4.txt", qt::G4_EDGES);
    const fs::path out = sb.dir / "out";
    CHECK(run("rank --input " + g4.string() + " --max-iter 2 --out " + out.string()) == 4);
    // failed runs leave no partial outputs behind
    CHECK_FALSE(fs::exists(out / "pagerank.csv"));
    CHECK_FALSE(fs::exists(out / "spectral.json"));
}
