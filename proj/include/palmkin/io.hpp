#pragma once

// Voxel exports: CSV (kx,ky,kz,count) and ASCII PLY of voxel centers.
// Both write keys in ascending order so output is byte-stable.

#include "palmkin/error.hpp"
#include "palmkin/voxelize.hpp"

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace palmkin {

inline void write_csv(std::ostream& out, const VoxelSet& set) {
    out << "kx,ky,kz,count\n";
    for (const auto& [k, n] : set.sorted()) out << k.x << ',' << k.y << ',' << k.z << ',' << n << '\n';
}

/// Vertex-only PLY; each vertex is the voxel center (k + 0.5) * delta.
inline void write_ply(std::ostream& out, const VoxelSet& set) {
    const auto cells = set.sorted();
    out << "ply\nformat ascii 1.0\n";
    out << "comment voxel centers, delta " << set.delta() << '\n';
    out << "element vertex " << cells.size() << '\n';
    out << "property float x\nproperty float y\nproperty float z\nproperty uint count\nend_header\n";
    const double d = set.delta();
    char buf[128];
    for (const auto& [k, n] : cells) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f %llu\n", (k.x + 0.5) * d, (k.y + 0.5) * d, (k.z + 0.5) * d,
                      static_cast<unsigned long long>(n));
        out << buf;
    }
}

inline std::string to_csv(const VoxelSet& set) {
    std::ostringstream os;
    write_csv(os, set);
    return os.str();
}

inline std::string to_ply(const VoxelSet& set) {
    std::ostringstream os;
    write_ply(os, set);
    return os.str();
}

inline void save_csv(const std::string& path, const VoxelSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    write_csv(out, set);
    if (!out) throw IoError(path, "write failed");
}

inline void save_ply(const std::string& path, const VoxelSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    write_ply(out, set);
    if (!out) throw IoError(path, "write failed");
}

/// Reads a CSV written by write_csv. The voxel size is not stored in the file.
inline VoxelSet read_csv(std::istream& in, double delta, const std::string& name = "<stream>") {
    VoxelSet set(delta);
    std::string line;
    if (!std::getline(in, line)) throw IoError(name, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "kx,ky,kz,count") throw IoError(name, "unexpected header '" + line + "'");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        long long x = 0, y = 0, z = 0;
        unsigned long long n = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%llu%c", &x, &y, &z, &n, &tail) != 4 || n == 0) {
            throw IoError(name, "malformed row at line " + std::to_string(lineno));
        }
        const auto fits = [](long long v) {
            return v >= std::numeric_limits<std::int32_t>::min() && v <= std::numeric_limits<std::int32_t>::max();
        };
        if (!fits(x) || !fits(y) || !fits(z)) throw IoError(name, "key out of range at line " + std::to_string(lineno));
        set.add({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y), static_cast<std::int32_t>(z)}, n);
    }
    return set;
}

inline VoxelSet load_csv(const std::string& path, double delta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    return read_csv(in, delta, path);
}

}  // namespace palmkin
