#include "sks/io.hpp"

#include <algorithm>
#include <boost/crc.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sks/error.hpp"

namespace sks {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string s;
  bool first = true;
  for (double v : values) {
    if (!first) s += ',';
    s += fmt_double(v);
    first = false;
  }
  s += '\n';
  return s;
}

std::string crc32_hex(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

FileRecord write_csv_file(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::io_error, "cannot open " + path.string());
  os << content;
  os.close();
  if (!os) throw Error(Errc::io_error, "write failed for " + path.string());
  const auto lines = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
  return {name, lines > 0 ? lines - 1 : 0, crc32_hex(content)};
}

void read_two_column_csv(const std::filesystem::path& path, const std::string& h0, const std::string& h1,
                         std::vector<double>& c0, std::vector<double>& c1) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::io_error, "cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::io_error, path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != h0 + "," + h1) throw Error(Errc::io_error, path.string() + ": expected header " + h0 + "," + h1);
  std::size_t ln = 1;
  while (std::getline(is, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t p0 = 0, p1 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      c0.push_back(std::stod(a, &p0));
      c1.push_back(std::stod(b, &p1));
      if (p0 != a.size() || p1 != b.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(Errc::io_error, path.string() + ":" + std::to_string(ln) + ": malformed row");
    }
  }
}

}  // namespace sks
