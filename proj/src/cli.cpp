#include "qtl/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtl/dynamics.hpp"
#include "qtl/error.hpp"
#include "qtl/io.hpp"
#include "qtl/q_calculus.hpp"
#include "qtl/redundancy.hpp"
#include "qtl/sobolev.hpp"
#include "qtl/spectral.hpp"
#include "qtl/zero_table.hpp"

namespace qtl::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Output grid plus its manifest sidecar.
void emit_grid(const std::string& path, const CoeffGrid& grid, GridTag tag, RunManifest manifest,
               Clock::time_point start) {
    write_grid(path, grid, tag);
    manifest.outputs = {path};
    manifest.wall_clock_seconds = seconds_since(start);
    write_manifest(path, manifest);
}

unsigned worker_count(std::ostream& err) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QTL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            err << "warning: ignoring QTL_THREADS='" << env << "', expected a positive integer\n";
        else
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

// "linear:<c>" -> c
double parse_lambda(const std::string& spec) {
    const std::string prefix = "linear:";
    if (spec.rfind(prefix, 0) != 0) throw ParseError("--lambda expects linear:<c>, got '" + spec + "'");
    const std::string rest = spec.substr(prefix.size());
    char* end = nullptr;
    const double c = std::strtod(rest.c_str(), &end);
    if (rest.empty() || *end != '\0' || !std::isfinite(c)) throw ParseError("--lambda: bad coefficient '" + rest + "'");
    return c;
}

struct SmapOpts {
    std::string in, out;
};
struct QtransformOpts {
    std::string in, imag, out;
};
struct QinverseOpts {
    std::string in, out_real, out_imag;
};
struct IngestOpts {
    std::string in, out;
    int n = 0;
};
struct NormsOpts {
    std::string in, out;
    std::vector<double> alphas;
};
struct EvolveOpts {
    std::string field, compact, out, trace, scheme = "interaction", picture = "heisenberg", lambda;
    std::vector<std::string> lindblad;
    double a = 0.0, b = 0.0, t = 1.0, dt = 1e-3, alpha = 0.0;
    std::optional<int> floor;
    int record_every = 1;
};
struct RedundancyOpts {
    std::string field, zeros, out;
    double sigma = 3.0, alpha = 0.0;
    std::vector<std::size_t> counts;
};
struct CommutatorOpts {
    std::string f, g, out;
};

int do_smap(const SmapOpts& o, std::ostream&, std::ostream&) {
    const auto start = Clock::now();
    const CoeffGrid z = read_grid(o.in);
    RunManifest m{"smap", {o.in}, {}, json::object(), 0.0};
    emit_grid(o.out, s_map(z), GridTag::hermitian, m, start);
    return kExitOk;
}

int do_qtransform(const QtransformOpts& o, std::ostream&, std::ostream&) {
    const auto start = Clock::now();
    const CoeffGrid f = read_grid(o.in);
    RunManifest m{"qtransform", {o.in}, {}, json::object(), 0.0};
    if (o.imag.empty()) {
        emit_grid(o.out, q_transform(f), GridTag::hermitian, m, start);
    } else {
        const CoeffGrid g = read_grid(o.imag);
        m.inputs.push_back(o.imag);
        emit_grid(o.out, q_transform(f, g), GridTag::general, m, start);
    }
    return kExitOk;
}

int do_qinverse(const QinverseOpts& o, std::ostream&, std::ostream&) {
    const auto start = Clock::now();
    const ComplexField u = q_inverse(read_grid(o.in));
    RunManifest m{"qinverse", {o.in}, {}, json::object(), 0.0};
    emit_grid(o.out_real, u.re, GridTag::fourier_real, m, start);
    if (!o.out_imag.empty()) emit_grid(o.out_imag, u.im, GridTag::fourier_real, m, start);
    return kExitOk;
}

int do_ingest(const IngestOpts& o, std::ostream&, std::ostream& err) {
    const auto start = Clock::now();
    const Ingested res = ingest_pgm(std::filesystem::path(o.in), o.n);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    RunManifest m{"ingest-pgm", {o.in}, {}, json{{"n", o.n}}, 0.0};
    emit_grid(o.out, res.grid, GridTag::fourier_real, m, start);
    return kExitOk;
}

int do_norms(const NormsOpts& o, std::ostream& out, std::ostream&) {
    const auto start = Clock::now();
    const CoeffGrid a = read_grid(o.in);
    auto body = [&](std::ostream& s) {
        CsvWriter csv(s);
        csv.header({"alpha", "norm"});
        for (double alpha : o.alphas) csv.row({alpha, norm(a, alpha)});
    };
    body(out);
    if (!o.out.empty()) {
        write_atomic(o.out, body);
        RunManifest m{"norms", {o.in}, {o.out}, json{{"alpha", o.alphas}}, seconds_since(start)};
        write_manifest(o.out, m);
    }
    return kExitOk;
}

int do_evolve(const EvolveOpts& o, std::ostream&, std::ostream& err) {
    const auto start = Clock::now();
    if (!(o.dt > 0.0)) throw DomainError("--dt must be positive");
    if (!(o.t >= 0.0)) throw DomainError("--t must be non-negative");
    if (o.record_every < 1) throw DomainError("--record-every must be at least 1");

    GridTag tag = GridTag::general;
    const CoeffGrid input = read_grid(o.field, &tag);
    // A real field is lifted to its observable; operators are taken as given.
    const bool from_field = tag == GridTag::fourier_real;
    const CoeffGrid a0 = from_field ? q_transform(input) : input;
    const int n = a0.band_limit();

    RunManifest m{"evolve", {o.field}, {}, json::object(), 0.0};
    LindbladSet set;
    if (!o.compact.empty()) {
        CoeffGrid c = read_grid(o.compact);
        require_hermitian(c, "--compact");
        require_same_size(a0, c, "--compact");
        set.compact = std::move(c);
        m.inputs.push_back(o.compact);
    }
    for (const auto& path : o.lindblad) {
        CoeffGrid l = read_grid(path);
        require_same_size(a0, l, "--lindblad");
        set.jumps.push_back(std::move(l));
        m.inputs.push_back(path);
    }
    if (!o.lambda.empty()) set.lambda = DiagonalRates::linear(n, parse_lambda(o.lambda));

    HarmonicSpec h{o.a, o.b, o.floor};
    EvolveConfig cfg;
    cfg.t_end = o.t;
    cfg.dt = o.dt;
    cfg.alpha = o.alpha;
    cfg.record_every = o.record_every;
    cfg.scheme = o.scheme == "classical" ? Scheme::classical : Scheme::interaction;
    cfg.picture = o.picture == "schrodinger" ? Picture::schrodinger : Picture::heisenberg;
    cfg.keep_states = false;

    const Trajectory traj = evolve_rk4(a0, h, set, cfg);
    for (const auto& w : traj.warnings) err << "warning: " << w << '\n';

    const double norm0 = norm(a0, o.alpha);
    write_atomic(o.trace, [&](std::ostream& s) {
        CsvWriter csv(s);
        csv.header({"t", "alpha_norm", "bound_est_T2", "bound_estimate_full"});
        for (const auto& p : traj.points) {
            const GrowthBound gb = growth_bound(o.alpha, set, p.t);
            csv.row({p.t, p.alpha_norm, gb.dissipative * norm0, gb.full * norm0});
        }
    });

    m.parameters = json{{"a", o.a},         {"b", o.b},         {"t", o.t},
                        {"dt", o.dt},       {"alpha", o.alpha}, {"record_every", o.record_every},
                        {"scheme", o.scheme}, {"picture", o.picture}, {"lambda", o.lambda},
                        {"input_kind", from_field ? "field" : "operator"}};
    if (o.floor) m.parameters["floor"] = *o.floor;

    const CoeffGrid& last = traj.points.back().state;
    if (from_field)
        emit_grid(o.out, s_inv(hermitian_split(last).re), GridTag::fourier_real, m, start);
    else
        emit_grid(o.out, last, GridTag::general, m, start);
    m.outputs = {o.trace};
    m.wall_clock_seconds = seconds_since(start);
    write_manifest(o.trace, m);
    return kExitOk;
}

int do_redundancy(const RedundancyOpts& o, std::ostream&, std::ostream& err) {
    const auto start = Clock::now();
    const CoeffGrid f = read_grid(o.field);
    require_fourier_real(f, "--field");
    const ZeroTable zeros = load_zero_table(std::filesystem::path(o.zeros));
    if (o.sigma <= o.alpha + 1.0)
        err << "warning: sigma = " << o.sigma << " does not exceed alpha + 1; convergence in the alpha-norm is not expected\n";
    for (std::size_t c : o.counts)
        if (c == 0 || c > zeros.size())
            throw DimensionError("zero count " + std::to_string(c) + " outside [1, " + std::to_string(zeros.size()) + "]");

    AveragingOptions opts;
    opts.workers = worker_count(err);
    std::vector<RedundancyPoint> points;
    for (std::size_t c : o.counts) points.push_back(redundancy_point(f, o.sigma, zeros, c, o.alpha, opts));

    write_atomic(o.out, [&](std::ostream& s) {
        CsvWriter csv(s);
        csv.header({"zero_count", "T", "l2_error_field", "hs_error_operator"});
        for (const auto& p : points)
            csv.row({static_cast<double>(p.zero_count), p.t, p.l2_error_field, p.hs_error_operator});
    });
    RunManifest m{"redundancy",
                  {o.field, o.zeros},
                  {o.out},
                  json{{"sigma", o.sigma}, {"alpha", o.alpha}, {"counts", o.counts}},
                  seconds_since(start)};
    write_manifest(o.out, m);
    return kExitOk;
}

int do_commutator(const CommutatorOpts& o, std::ostream&, std::ostream&) {
    const auto start = Clock::now();
    const CoeffGrid f = read_grid(o.f);
    const CoeffGrid g = read_grid(o.g);
    RunManifest m{"commutator", {o.f, o.g}, {}, json::object(), 0.0};
    emit_grid(o.out, field_commutator(f, g), GridTag::fourier_real, m, start);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantized torus fields: transforms, norms, dynamics and zero averages", "qtl"};
    app.set_version_flag("--version", QTL_VERSION);
    app.require_subcommand(1, 1);

    std::function<int()> action;

    SmapOpts smap;
    auto* sc = app.add_subcommand("smap", "Rearrange a fourier-real grid into a Hermitian matrix");
    sc->add_option("--in", smap.in, "Input grid JSON")->required();
    sc->add_option("--out", smap.out, "Output grid JSON")->required();
    sc->callback([&] { action = [&] { return do_smap(smap, out, err); }; });

    QtransformOpts qt;
    sc = app.add_subcommand("qtransform", "Observable Q f (or Q(f + i g) with --imag)");
    sc->add_option("--in", qt.in, "Real-part field grid JSON")->required();
    sc->add_option("--imag", qt.imag, "Imaginary-part field grid JSON");
    sc->add_option("--out", qt.out, "Output operator JSON")->required();
    sc->callback([&] { action = [&] { return do_qtransform(qt, out, err); }; });

    QinverseOpts qi;
    sc = app.add_subcommand("qinverse", "Recover the real and imaginary fields of an operator");
    sc->add_option("--in", qi.in, "Operator grid JSON")->required();
    sc->add_option("--out-real", qi.out_real, "Real-part field output")->required();
    sc->add_option("--out-imag", qi.out_imag, "Imaginary-part field output");
    sc->callback([&] { action = [&] { return do_qinverse(qi, out, err); }; });

    IngestOpts ing;
    sc = app.add_subcommand("ingest-pgm", "Fourier coefficients of a PGM image");
    sc->add_option("--in", ing.in, "P2 or P5 image")->required();
    sc->add_option("--n", ing.n, "Band limit N (side 2N+1)")->required()->check(CLI::NonNegativeNumber);
    sc->add_option("--out", ing.out, "Output grid JSON")->required();
    sc->callback([&] { action = [&] { return do_ingest(ing, out, err); }; });

    NormsOpts nrm;
    sc = app.add_subcommand("norms", "Sobolev norms of a grid, one CSV line per alpha");
    sc->add_option("--in", nrm.in, "Grid JSON")->required();
    sc->add_option("--alpha", nrm.alphas, "Comma-separated exponents")->required()->delimiter(',');
    sc->add_option("--out", nrm.out, "Also write the CSV here");
    sc->callback([&] { action = [&] { return do_norms(nrm, out, err); }; });

    EvolveOpts ev;
    sc = app.add_subcommand("evolve", "Integrate the Heisenberg-picture Lindblad flow");
    sc->add_option("--field", ev.field, "Initial field (fourier-real) or operator JSON")->required();
    sc->add_option("--a", ev.a, "Spectrum slope")->required();
    sc->add_option("--b", ev.b, "Spectrum offset")->required();
    sc->add_option("--floor", ev.floor, "Spectrum floor n0");
    sc->add_option("--compact", ev.compact, "Hermitian perturbation JSON");
    sc->add_option("--lindblad", ev.lindblad, "Lindblad operator JSON (repeatable)");
    sc->add_option("--lambda", ev.lambda, "Diagonal Lindblad operator, linear:<c>");
    sc->add_option("--t", ev.t, "End time")->required();
    sc->add_option("--dt", ev.dt, "Step size")->required();
    sc->add_option("--alpha", ev.alpha, "Sobolev exponent for the trace")->required();
    sc->add_option("--out", ev.out, "Final state JSON")->required();
    sc->add_option("--trace", ev.trace, "Trace CSV")->required();
    sc->add_option("--record-every", ev.record_every, "Trace every k-th step");
    sc->add_option("--scheme", ev.scheme, "interaction or classical")
        ->check(CLI::IsMember({"interaction", "classical"}));
    sc->add_option("--picture", ev.picture, "heisenberg or schrodinger")
        ->check(CLI::IsMember({"heisenberg", "schrodinger"}));
    sc->callback([&] { action = [&] { return do_evolve(ev, out, err); }; });

    RedundancyOpts red;
    sc = app.add_subcommand("redundancy", "Error of zero-ordinate averages against the plain transform");
    sc->add_option("--field", red.field, "Field grid JSON")->required();
    sc->add_option("--sigma", red.sigma, "Real part sigma > 1")->required();
    sc->add_option("--zeros", red.zeros, "Zero ordinate table")->required();
    sc->add_option("--counts", red.counts, "Comma-separated zero counts")->required()->delimiter(',');
    sc->add_option("--alpha", red.alpha, "Sobolev exponent of the error norm");
    sc->add_option("--out", red.out, "Output CSV")->required();
    sc->callback([&] { action = [&] { return do_redundancy(red, out, err); }; });

    CommutatorOpts cm;
    sc = app.add_subcommand("commutator", "Induced field commutator [f, g]");
    sc->add_option("--f", cm.f, "First field JSON")->required();
    sc->add_option("--g", cm.g, "Second field JSON")->required();
    sc->add_option("--out", cm.out, "Output field JSON")->required();
    sc->callback([&] { action = [&] { return do_commutator(cm, out, err); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        return action();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitData;
}

}  // namespace qtl::cli
