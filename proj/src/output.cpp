#include "output.hpp"

#include <cstdio>
#include <filesystem>

#include "core/config.hpp"
#include "core/error.hpp"

namespace perikon {

void write_vtk_points(const std::string& path, const std::string& title,
                      const std::vector<Vec3>& points, const std::vector<VtkField>& fields) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot write VTK file: " + path);
    const std::size_t n = points.size();
    std::fprintf(f, "# vtk DataFile Version 3.0\n%s\nASCII\nDATASET POLYDATA\n",
                 title.c_str());
    std::fprintf(f, "POINTS %zu double\n", n);
    for (const Vec3& p : points) std::fprintf(f, "%.9g %.9g %.9g\n", p.x, p.y, p.z);
    std::fprintf(f, "VERTICES %zu %zu\n", n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) std::fprintf(f, "1 %zu\n", i);
    if (!fields.empty()) {
        std::fprintf(f, "POINT_DATA %zu\n", n);
        for (const VtkField& field : fields) {
            if (field.vectors.empty()) {
                std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n",
                             field.name.c_str());
                for (double v : field.scalars) std::fprintf(f, "%.9g\n", v);
            } else {
                std::fprintf(f, "VECTORS %s double\n", field.name.c_str());
                for (const Vec3& v : field.vectors)
                    std::fprintf(f, "%.9g %.9g %.9g\n", v.x, v.y, v.z);
            }
        }
    }
    if (std::fclose(f) != 0) throw IoError("VTK write failed: " + path);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) throw IoError("cannot write CSV file: " + path);
    for (std::size_t c = 0; c < columns.size(); ++c)
        std::fprintf(f_, "%s%s", columns[c].c_str(), c + 1 < columns.size() ? "," : "\r\n");
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t c = 0; c < values.size(); ++c)
        std::fprintf(f_, "%s%s", format_double(values[c]).c_str(),
                     c + 1 < values.size() ? "," : "\r\n");
}

void CsvWriter::close() {
    if (f_ && std::fclose(f_) != 0) {
        f_ = nullptr;
        throw IoError("CSV write failed: " + path_);
    }
    f_ = nullptr;
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot write summary: " + path);
    for (const auto& [key, value] : entries)
        std::fprintf(f, "%s: %s\n", key.c_str(), value.c_str());
    if (std::fclose(f) != 0) throw IoError("summary write failed: " + path);
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create output directory: " + path);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace perikon
