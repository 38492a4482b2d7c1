#pragma once

#include <string>
#include <vector>

#include "p4/numerics.hpp"

namespace p4 {

/// Fixed "%.12e" rendering so identical runs produce byte-identical files.
std::string format_float(double x);

/// Writes a CSV with a header row; all numeric cells go through format_float.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& content);

}  // namespace p4
