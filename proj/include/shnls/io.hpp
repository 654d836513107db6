#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "shnls/grid.hpp"

namespace shnls::io {

/// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline constexpr const char* kSnapshotFormat = "shnls-snapshot-v1";

struct SnapshotMeta {
    Grid grid;
    double t = 0.0;
    long step = 0;
};

/// Raw little-endian float64 (re, im) pairs in row-major order, nothing else, plus a JSON
/// sidecar next to it (same stem, .json) with dim, n, box_length, t, step and format.
void write_snapshot(const std::filesystem::path& bin_path, const ComplexField& field, double t, long step);

/// Reads a snapshot written by write_snapshot; the grid comes from the sidecar.
ComplexField read_snapshot(const std::filesystem::path& bin_path, SnapshotMeta* meta = nullptr);

std::filesystem::path sidecar_path(const std::filesystem::path& bin_path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);
void ensure_directory(const std::filesystem::path& dir);

}  // namespace shnls::io
