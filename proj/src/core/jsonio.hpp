#pragma once

#include <string>

namespace mis3d {

// Serialized floats are canonicalized to 12 significant digits. Rounding before
// insertion (rather than formatting at dump time) both caps the precision and
// scrubs ulp-level noise, so identical runs emit byte-identical files.
double round12(double v);
std::string format12(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace mis3d
