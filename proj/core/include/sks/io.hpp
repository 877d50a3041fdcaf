#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace sks {

// 17 significant digits, shortest exponent form
std::string fmt_double(double v);
std::string csv_row(std::initializer_list<double> values);

struct FileRecord {
  std::string name;
  std::size_t rows = 0;  // data rows, header excluded
  std::string crc32;     // 8 hex digits over the file bytes
};

std::string crc32_hex(const std::string& bytes);

// Writes content to dir/name; throws Error(io_error) on failure.
FileRecord write_csv_file(const std::filesystem::path& dir, const std::string& name, const std::string& content);

// Reads a two-column numeric CSV with the given header.
void read_two_column_csv(const std::filesystem::path& path, const std::string& h0, const std::string& h1,
                         std::vector<double>& c0, std::vector<double>& c1);

}  // namespace sks
