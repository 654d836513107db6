#include "shnls/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace shnls::io {

namespace {

std::uint64_t to_little_endian(std::uint64_t x) {
    if constexpr (std::endian::native == std::endian::little) {
        return x;
    } else {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
        return r;
    }
}

}  // namespace

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

std::filesystem::path sidecar_path(const std::filesystem::path& bin_path) {
    auto p = bin_path;
    p.replace_extension(".json");
    return p;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir, "cannot create directory: " + ec.message());
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path, "cannot open for writing");
    os << content;
    if (!os) throw IoError(path, "write failed");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_snapshot(const std::filesystem::path& bin_path, const ComplexField& field, double t, long step) {
    std::vector<std::uint64_t> words(2 * field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        words[2 * i] = to_little_endian(std::bit_cast<std::uint64_t>(field.values[i].real()));
        words[2 * i + 1] = to_little_endian(std::bit_cast<std::uint64_t>(field.values[i].imag()));
    }
    {
        std::ofstream os(bin_path, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError(bin_path, "cannot open for writing");
        os.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
        if (!os) throw IoError(bin_path, "write failed");
    }
    nlohmann::ordered_json j;
    j["format"] = kSnapshotFormat;
    j["dim"] = field.grid.dim();
    j["n"] = nlohmann::json::array();
    j["box_length"] = nlohmann::json::array();
    for (int d = 0; d < field.grid.dim(); ++d) {
        j["n"].push_back(field.grid.n(d));
        j["box_length"].push_back(field.grid.length(d));
    }
    j["t"] = t;
    j["step"] = step;
    write_text_file(sidecar_path(bin_path), j.dump(2) + "\n");
}

ComplexField read_snapshot(const std::filesystem::path& bin_path, SnapshotMeta* meta) {
    const auto side = sidecar_path(bin_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(side));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(side, std::string("malformed snapshot sidecar: ") + e.what());
    }
    Grid grid;
    double t = 0.0;
    long step = 0;
    try {
        if (j.at("format").get<std::string>() != kSnapshotFormat) throw IoError(side, "unsupported snapshot format");
        const int dim = j.at("dim").get<int>();
        std::array<std::size_t, 3> n{1, 1, 1};
        std::array<double, 3> len{1.0, 1.0, 1.0};
        if (dim < 1 || dim > 3 || j.at("n").size() != static_cast<std::size_t>(dim) ||
            j.at("box_length").size() != static_cast<std::size_t>(dim)) {
            throw IoError(side, "inconsistent dim/n/box_length");
        }
        for (int d = 0; d < dim; ++d) {
            n[static_cast<std::size_t>(d)] = j["n"][static_cast<std::size_t>(d)].get<std::size_t>();
            len[static_cast<std::size_t>(d)] = j["box_length"][static_cast<std::size_t>(d)].get<double>();
        }
        grid = Grid(dim, n, len);
        t = j.value("t", 0.0);
        step = j.value("step", 0L);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(side, std::string("malformed snapshot sidecar: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(side, e.what());
    }

    std::ifstream is(bin_path, std::ios::binary);
    if (!is) throw IoError(bin_path, "cannot open for reading");
    std::vector<std::uint64_t> words(2 * grid.size());
    is.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
    if (is.gcount() != static_cast<std::streamsize>(words.size() * 8)) {
        throw IoError(bin_path, "expected " + std::to_string(words.size() * 8) + " bytes for " + grid.describe());
    }
    ComplexField field(grid);
    for (std::size_t i = 0; i < field.size(); ++i) {
        field.values[i] = Complex(std::bit_cast<double>(to_little_endian(words[2 * i])),
                                  std::bit_cast<double>(to_little_endian(words[2 * i + 1])));
    }
    if (meta != nullptr) *meta = SnapshotMeta{grid, t, step};
    return field;
}

}  // namespace shnls::io
