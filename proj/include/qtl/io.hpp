#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtl/coeff_grid.hpp"
#include "qtl/spectral.hpp"

namespace qtl {

// {"n": N, "tag": "...", "entries": [[re, im], ...]}, k outer, l inner.
nlohmann::json grid_to_json(const CoeffGrid& grid, GridTag tag);

// Parses the JSON form and checks the grid against its declared tag.
// Throws ParseError on malformed input, SymmetryError on a false tag.
CoeffGrid grid_from_json(const nlohmann::json& doc, GridTag* tag_out = nullptr);

CoeffGrid read_grid(const std::filesystem::path& path, GridTag* tag_out = nullptr);
void write_grid(const std::filesystem::path& path, const CoeffGrid& grid, GridTag tag);

struct PgmImage {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<int> pixels;  // row-major, top row first

    int operator()(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

// P2 (ASCII) or P5 (binary; 16-bit big-endian samples when maxval > 255).
PgmImage read_pgm(std::istream& in);
PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const PgmImage& img, bool binary);

struct Ingested {
    CoeffGrid grid;
    std::vector<std::string> warnings;
};

/// Center-crops (or zero-pads) the image to 2N+1 pixels per side, maps
/// pixels to v / maxval and analyzes the samples. Column c is x = c/M and
/// row r is y = r/M. A non-square image is cropped with a warning.
Ingested ingest_pgm(const PgmImage& img, int band_limit);
Ingested ingest_pgm(const std::filesystem::path& path, int band_limit);

// Writes through a temporary file in the target directory and renames it
// into place, so the target never holds a partial file.
void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

// 17 significant digits.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);

private:
    std::ostream& out_;
};

/// JSON sidecar written next to each output as <output>.manifest.json.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::json parameters = nlohmann::json::object();
    double wall_clock_seconds = 0.0;

    nlohmann::json to_json() const;
};

std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& output, const RunManifest& manifest);

}  // namespace qtl
