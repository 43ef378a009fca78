#include "qtl/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include "qtl/error.hpp"

namespace qtl {

using nlohmann::json;

json grid_to_json(const CoeffGrid& grid, GridTag tag) {
    json entries = json::array();
    const int n = grid.band_limit();
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l) entries.push_back({grid(k, l).real(), grid(k, l).imag()});
    return json{{"n", n}, {"tag", std::string(to_string(tag))}, {"entries", std::move(entries)}};
}

CoeffGrid grid_from_json(const json& doc, GridTag* tag_out) {
    if (!doc.is_object()) throw ParseError("grid JSON: expected an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("grid JSON: missing integer 'n'");
    const long n = doc["n"].get<long>();
    if (n < 0 || n > 4096) throw ParseError("grid JSON: 'n' out of range");
    GridTag tag = GridTag::general;
    if (doc.contains("tag")) {
        if (!doc["tag"].is_string()) throw ParseError("grid JSON: 'tag' must be a string");
        tag = parse_tag(doc["tag"].get<std::string>());
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("grid JSON: missing 'entries' array");
    const json& entries = doc["entries"];
    CoeffGrid grid(static_cast<int>(n));
    if (entries.size() != grid.entry_count()) {
        std::ostringstream msg;
        msg << "grid JSON: expected " << grid.entry_count() << " entries for n = " << n << ", found "
            << entries.size();
        throw ParseError(msg.str());
    }
    std::size_t idx = 0;
    for (int k = -static_cast<int>(n); k <= n; ++k) {
        for (int l = -static_cast<int>(n); l <= n; ++l, ++idx) {
            const json& e = entries[idx];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("grid JSON: entry " + std::to_string(idx) + " is not a [re, im] pair");
            grid(k, l) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (tag == GridTag::fourier_real) require_fourier_real(grid, "grid JSON");
    if (tag == GridTag::hermitian) require_hermitian(grid, "grid JSON");
    if (tag_out) *tag_out = tag;
    return grid;
}

CoeffGrid read_grid(const std::filesystem::path& path, GridTag* tag_out) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
    return grid_from_json(doc, tag_out);
}

void write_grid(const std::filesystem::path& path, const CoeffGrid& grid, GridTag tag) {
    const json doc = grid_to_json(grid, tag);
    write_atomic(path, [&](std::ostream& out) { out << doc.dump(1) << '\n'; });
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int pgm_int(std::istream& in, const char* what) {
    const std::string tok = pgm_token(in);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(std::string("PGM: bad ") + what + " '" + tok + "'");
    return v;
}

}  // namespace

PgmImage read_pgm(std::istream& in) {
    const std::string magic = pgm_token(in);
    if (magic != "P2" && magic != "P5") throw ParseError("PGM: unsupported magic '" + magic + "'");
    PgmImage img;
    img.width = pgm_int(in, "width");
    img.height = pgm_int(in, "height");
    img.maxval = pgm_int(in, "maxval");
    if (img.width <= 0 || img.height <= 0) throw ParseError("PGM: dimensions must be positive");
    if (img.maxval <= 0 || img.maxval > 65535) throw ParseError("PGM: maxval must lie in [1, 65535]");
    const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(count);
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) img.pixels[i] = pgm_int(in, "pixel");
    } else {
        // pgm_token consumed the single whitespace byte after maxval
        const std::size_t bytes = img.maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(count * bytes);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw ParseError("PGM: truncated pixel data");
        for (std::size_t i = 0; i < count; ++i)
            img.pixels[i] = bytes == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
    }
    for (int v : img.pixels)
        if (v < 0 || v > img.maxval) throw ParseError("PGM: pixel value outside [0, maxval]");
    return img;
}

PgmImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_pgm(in);
}

void write_pgm(std::ostream& out, const PgmImage& img, bool binary) {
    out << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
    if (binary) {
        for (int v : img.pixels) {
            if (img.maxval > 255) out.put(static_cast<char>((v >> 8) & 0xff));
            out.put(static_cast<char>(v & 0xff));
        }
        return;
    }
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) out << (c ? " " : "") << img(r, c);
        out << '\n';
    }
}

Ingested ingest_pgm(const PgmImage& img, int band_limit) {
    if (band_limit < 0) throw DomainError("ingest_pgm: band limit must be non-negative");
    Ingested res;
    const int m = 2 * band_limit + 1;
    if (img.width != img.height) {
        std::ostringstream msg;
        msg << "image is " << img.width << "x" << img.height << ", not square; center-cropping to " << m << "x" << m;
        res.warnings.push_back(msg.str());
    }
    if (img.width < m || img.height < m) {
        std::ostringstream msg;
        msg << "image smaller than " << m << "x" << m << "; zero-padding";
        res.warnings.push_back(msg.str());
    }
    // offset of the target window inside the image (negative means padding)
    const int off_c = (img.width - m) / 2;
    const int off_r = (img.height - m) / 2;
    SampleGrid samples(m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            const int ir = r + off_r, ic = c + off_c;
            double v = 0.0;
            if (ir >= 0 && ir < img.height && ic >= 0 && ic < img.width)
                v = static_cast<double>(img(ir, ic)) / img.maxval;
            samples(c, r) = v;
        }
    }
    res.grid = analyze(samples, band_limit);
    return res;
}

Ingested ingest_pgm(const std::filesystem::path& path, int band_limit) { return ingest_pgm(read_pgm(path), band_limit); }

void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    namespace fs = std::filesystem;
    const fs::path target = path.has_parent_path() ? path : fs::path(".") / path;
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        try {
            body(out);
        } catch (...) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw;
        }
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot move output into place at '" + path.string() + "'");
    }
}

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
}

json RunManifest::to_json() const {
    return json{{"tool", "qtl"},
                {"version", QTL_VERSION},
                {"command", command},
                {"inputs", inputs},
                {"outputs", outputs},
                {"parameters", parameters},
                {"wall_clock_seconds", wall_clock_seconds}};
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    std::filesystem::path p = output;
    p += ".manifest.json";
    return p;
}

void write_manifest(const std::filesystem::path& output, const RunManifest& manifest) {
    const json doc = manifest.to_json();
    write_atomic(manifest_path(output), [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

}  // namespace qtl
