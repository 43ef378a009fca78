#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "qtl/cli.hpp"
#include "qtl/io.hpp"

using namespace qtl;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    std::ostringstream out, err;

    Sandbox() {
        static int counter = 0;
        dir = fs::temp_directory_path() / ("qtl_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    int run(std::vector<std::string> args) {
        out.str("");
        err.str("");
        return cli::run(args, out, err);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string repeat(const std::string& s, int times) {
    std::string out;
    for (int i = 0; i < times; ++i) out += s;
    return out;
}

const std::string kZeros100 = std::string(QTL_DATA_DIR) + "/zeta_zeros_100.txt";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("smap on the diagonal cosine fixture") {
        Sandbox sb;
        write_grid(sb.path("f.json"), oracle::cosine_grid(2, 1, 1), GridTag::fourier_real);
        REQUIRE(sb.run({"smap", "--in", sb.path("f.json"), "--out", sb.path("w.json")}) == cli::kExitOk);
        GridTag tag = GridTag::general;
        const CoeffGrid w = read_grid(sb.path("w.json"), &tag);
        CHECK(tag == GridTag::hermitian);
        CHECK(oracle::max_diff(w, oracle::unit_grid(2, 1, 1, std::sqrt(0.5))) < 1e-16);
        const auto manifest = nlohmann::json::parse(slurp(sb.path("w.json.manifest.json")));
        CHECK(manifest["command"] == "smap");
        CHECK(manifest["inputs"][0] == sb.path("f.json"));
        CHECK(manifest["outputs"][0] == sb.path("w.json"));

        // determinism
        const std::string first = slurp(sb.path("w.json"));
        REQUIRE(sb.run({"smap", "--in", sb.path("f.json"), "--out", sb.path("w.json")}) == cli::kExitOk);
        CHECK(slurp(sb.path("w.json")) == first);
    }

    TEST_CASE("usage errors exit 1") {
        Sandbox sb;
        CHECK(sb.run({"evolve", "--a", "1", "--b", "0", "--t", "1", "--dt", "0.1", "--alpha", "0", "--out", "x",
                      "--trace", "y"}) == cli::kExitUsage);
        CHECK(sb.err.str().find("--field") != std::string::npos);
        CHECK(sb.run({}) == cli::kExitUsage);
        CHECK(sb.run({"smap", "--in", "a", "--out", "b", "--bogus", "1"}) == cli::kExitUsage);
        CHECK(sb.run({"frobnicate"}) == cli::kExitUsage);
        CHECK(sb.run({"norms", "--in", "a", "--alpha", "x"}) == cli::kExitUsage);
        CHECK(sb.run({"--help"}) == cli::kExitOk);
        CHECK(sb.out.str().find("redundancy") != std::string::npos);
    }

    TEST_CASE("data errors exit 2") {
        Sandbox sb;
        oracle::Rng rng(91);
        write_grid(sb.path("f.json"), oracle::cosine_grid(3, 1, 0), GridTag::fourier_real);
        CHECK(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "3", "--zeros", sb.path("missing.txt"),
                      "--counts", "100", "--alpha", "0", "--out", sb.path("r.csv")}) == cli::kExitData);
        CHECK(sb.err.str().find("missing.txt") != std::string::npos);
        CHECK_FALSE(fs::exists(sb.path("r.csv")));

        write_grid(sb.path("g.json"), oracle::random_grid(rng, 2), GridTag::general);
        CHECK(sb.run({"smap", "--in", sb.path("g.json"), "--out", sb.path("w.json")}) == cli::kExitData);
        CHECK_FALSE(fs::exists(sb.path("w.json")));
        CHECK(sb.run({"smap", "--in", sb.path("nope.json"), "--out", sb.path("w.json")}) == cli::kExitData);
        CHECK(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "3", "--zeros", kZeros100, "--counts",
                      "101", "--out", sb.path("r.csv")}) == cli::kExitData);
        CHECK(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "0.5", "--zeros", kZeros100, "--counts",
                      "10", "--out", sb.path("r.csv")}) == cli::kExitData);
    }

    TEST_CASE("qtransform and qinverse") {
        Sandbox sb;
        oracle::Rng rng(92);
        const CoeffGrid f = oracle::random_fourier_real(rng, 3), g = oracle::random_fourier_real(rng, 3);
        write_grid(sb.path("f.json"), f, GridTag::fourier_real);
        write_grid(sb.path("g.json"), g, GridTag::fourier_real);
        REQUIRE(sb.run({"qtransform", "--in", sb.path("f.json"), "--imag", sb.path("g.json"), "--out", sb.path("c.json")}) ==
                cli::kExitOk);
        REQUIRE(sb.run({"qinverse", "--in", sb.path("c.json"), "--out-real", sb.path("fr.json"), "--out-imag",
                        sb.path("gi.json")}) == cli::kExitOk);
        CHECK(oracle::max_diff(read_grid(sb.path("fr.json")), f) < 1e-14);
        CHECK(oracle::max_diff(read_grid(sb.path("gi.json")), g) < 1e-14);
        REQUIRE(sb.run({"qtransform", "--in", sb.path("f.json"), "--out", sb.path("q.json")}) == cli::kExitOk);
        GridTag tag = GridTag::general;
        read_grid(sb.path("q.json"), &tag);
        CHECK(tag == GridTag::hermitian);
    }

    TEST_CASE("norms prints alpha,norm lines") {
        Sandbox sb;
        write_grid(sb.path("a.json"), oracle::unit_grid(2, 1, 0), GridTag::general);
        REQUIRE(sb.run({"norms", "--in", sb.path("a.json"), "--alpha", "0,1,2", "--out", sb.path("n.csv")}) ==
                cli::kExitOk);
        const auto rows = lines(sb.out.str());
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == "alpha,norm");
        CHECK(rows[1] == "0,1");
        CHECK(std::stod(rows[2].substr(2)) == doctest::Approx(std::sqrt(2.0)));
        CHECK(rows[3] == "2,2");
        CHECK(slurp(sb.path("n.csv")) == sb.out.str());
        CHECK(fs::exists(sb.path("n.csv.manifest.json")));
    }

    TEST_CASE("ingest-pgm") {
        Sandbox sb;
        std::ofstream(sb.path("white.pgm")) << "P2\n5 5\n255\n" << repeat("255 ", 25) << "\n";
        REQUIRE(sb.run({"ingest-pgm", "--in", sb.path("white.pgm"), "--n", "2", "--out", sb.path("z.json")}) ==
                cli::kExitOk);
        CHECK(oracle::max_diff(read_grid(sb.path("z.json")), oracle::unit_grid(2, 0, 0)) < 1e-15);
        std::ofstream(sb.path("wide.pgm")) << "P2\n7 5\n10\n" << repeat("10 ", 35) << "\n";
        REQUIRE(sb.run({"ingest-pgm", "--in", sb.path("wide.pgm"), "--n", "2", "--out", sb.path("w.json")}) ==
                cli::kExitOk);
        CHECK(sb.err.str().find("warning") != std::string::npos);
        std::ofstream(sb.path("bad.pgm")) << "P7\n";
        CHECK(sb.run({"ingest-pgm", "--in", sb.path("bad.pgm"), "--n", "2", "--out", sb.path("b.json")}) ==
              cli::kExitData);
    }

    TEST_CASE("evolve writes the trace and the final field") {
        Sandbox sb;
        write_grid(sb.path("f.json"), oracle::cosine_grid(3, 1, 0), GridTag::fourier_real);
        REQUIRE(sb.run({"evolve", "--field", sb.path("f.json"), "--a", "6.283185307179586", "--b", "0", "--t", "0.25",
                        "--dt", "0.001", "--alpha", "1", "--record-every", "50", "--out", sb.path("ft.json"), "--trace",
                        sb.path("trace.csv")}) == cli::kExitOk);
        const auto rows = lines(slurp(sb.path("trace.csv")));
        REQUIRE(rows.size() == 7);
        CHECK(rows[0] == "t,alpha_norm,bound_est_T2,bound_estimate_full");
        GridTag tag = GridTag::general;
        const CoeffGrid ft = read_grid(sb.path("ft.json"), &tag);
        CHECK(tag == GridTag::fourier_real);
        // cos(2 pi x) moved a quarter period: -sin(2 pi x)
        CHECK(std::abs(ft(1, 0) - cplx(0.0, 0.5)) < 1e-12);
        CHECK(std::abs(ft(-1, 0) - cplx(0.0, -0.5)) < 1e-12);
        CHECK(fs::exists(sb.path("trace.csv.manifest.json")));
        CHECK(fs::exists(sb.path("ft.json.manifest.json")));

        oracle::Rng rng(93);
        write_grid(sb.path("l.json"), oracle::random_grid(rng, 3, 0.2), GridTag::general);
        write_grid(sb.path("c.json"), oracle::random_hermitian(rng, 3, 0.2), GridTag::hermitian);
        REQUIRE(sb.run({"evolve", "--field", sb.path("f.json"), "--a", "1", "--b", "0", "--compact", sb.path("c.json"),
                        "--lindblad", sb.path("l.json"), "--lindblad", sb.path("l.json"), "--lambda", "linear:0.5",
                        "--t", "1", "--dt", "0.01", "--alpha", "0.5", "--out", sb.path("o.json"), "--trace",
                        sb.path("t.csv")}) == cli::kExitOk);
        for (const auto& row : lines(slurp(sb.path("t.csv")))) {
            if (row[0] == 't') continue;
            std::vector<double> v;
            std::istringstream in(row);
            for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
            REQUIRE(v.size() == 4);
            CHECK(v[1] <= v[3] * (1 + 1e-12));
        }
        CHECK(sb.run({"evolve", "--field", sb.path("f.json"), "--a", "1", "--b", "0", "--lambda", "quadratic:1", "--t",
                      "1", "--dt", "0.01", "--alpha", "0", "--out", sb.path("o.json"), "--trace", sb.path("t.csv")}) ==
              cli::kExitData);
    }

    TEST_CASE("redundancy CSV") {
        Sandbox sb;
        write_grid(sb.path("f.json"), oracle::cosine_grid(4, 1, 1), GridTag::fourier_real);
        ::setenv("QTL_THREADS", "2", 1);
        REQUIRE(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "3", "--zeros", kZeros100, "--counts",
                        "10,100", "--alpha", "0", "--out", sb.path("r.csv")}) == cli::kExitOk);
        const auto rows = lines(slurp(sb.path("r.csv")));
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == "zero_count,T,l2_error_field,hs_error_operator");
        CHECK(rows[1].rfind("10,", 0) == 0);
        CHECK(rows[2].rfind("100,", 0) == 0);
        const std::string first = slurp(sb.path("r.csv"));
        ::setenv("QTL_THREADS", "zero", 1);
        REQUIRE(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "1.5", "--zeros", kZeros100, "--counts",
                        "10,100", "--alpha", "1", "--out", sb.path("r2.csv")}) == cli::kExitOk);
        CHECK(sb.err.str().find("QTL_THREADS") != std::string::npos);
        CHECK(sb.err.str().find("alpha + 1") != std::string::npos);
        ::unsetenv("QTL_THREADS");
        REQUIRE(sb.run({"redundancy", "--field", sb.path("f.json"), "--sigma", "3", "--zeros", kZeros100, "--counts",
                        "10,100", "--alpha", "0", "--out", sb.path("r.csv")}) == cli::kExitOk);
        CHECK(slurp(sb.path("r.csv")) == first);
    }

    TEST_CASE("commutator") {
        Sandbox sb;
        oracle::Rng rng(94);
        const CoeffGrid f = oracle::random_fourier_real(rng, 3);
        write_grid(sb.path("f.json"), f, GridTag::fourier_real);
        REQUIRE(sb.run({"commutator", "--f", sb.path("f.json"), "--g", sb.path("f.json"), "--out", sb.path("c.json")}) ==
                cli::kExitOk);
        CHECK(oracle::max_abs(read_grid(sb.path("c.json"))) < 1e-12);
    }
}
