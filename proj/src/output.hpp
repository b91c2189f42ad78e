// Output writers: VTK legacy ASCII point clouds, RFC 4180 CSV time series,
// run log, and the plain-text metrics summary. CSV numbers use shortest
// round-trip formatting so files are bit-stable for a fixed seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/vec3.hpp"

namespace perikon {

struct VtkField {
    std::string name;
    // Scalar when vectors empty, vector otherwise.
    std::vector<double> scalars;
    std::vector<Vec3> vectors;
};

void write_vtk_points(const std::string& path, const std::string& title,
                      const std::vector<Vec3>& points, const std::vector<VtkField>& fields);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void close();

private:
    std::string path_;
    std::FILE* f_ = nullptr;
};

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

void ensure_directory(const std::string& path);
std::string join_path(const std::string& dir, const std::string& name);

}  // namespace perikon
