#include "eip/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "eip/error.hpp"

namespace eip {

namespace {

bool is_skippable(const std::string& line) { return line.empty() || line.front() == '#'; }

i64 parse_int(std::string_view tok, std::size_t line_no) {
  i64 value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (tok.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError("invalid integer '" + std::string(tok) + "'", line_no);
  }
  return value;
}

}  // namespace

template <std::size_t D>
Config<D> read_config(std::istream& in) {
  std::vector<Point<D>> pts;
  std::set<Point<D>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    Point<D> p;
    std::size_t column = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t next = line.find(' ', pos);
      const std::string_view tok(line.data() + pos, (next == std::string::npos ? line.size() : next) - pos);
      if (column >= D) throw ParseError("expected " + std::to_string(D) + " columns", line_no);
      p[column++] = parse_int(tok, line_no);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (column != D) throw ParseError("expected " + std::to_string(D) + " columns", line_no);
    if (!seen.insert(p).second) throw ParseError("duplicate point", line_no);
    pts.push_back(p);
  }
  return Config<D>::from_points(std::move(pts));
}

template <std::size_t D>
Config<D> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_config<D>(in);
}

template <std::size_t D>
void write_config(std::ostream& out, const Config<D>& c) {
  for (const auto& p : c) {
    for (std::size_t i = 0; i < D; ++i) {
      if (i) out << ' ';
      out << p[i];
    }
    out << '\n';
  }
}

template <std::size_t D>
void write_config_file(const std::string& path, const Config<D>& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  write_config(out, c);
}

int sniff_dimension(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    int cols = 1;
    for (char ch : line) cols += ch == ' ' ? 1 : 0;
    return cols;
  }
  return 0;
}

template Config<2> read_config<2>(std::istream&);
template Config<3> read_config<3>(std::istream&);
template Config<2> read_config_file<2>(const std::string&);
template Config<3> read_config_file<3>(const std::string&);
template void write_config<2>(std::ostream&, const Config<2>&);
template void write_config<3>(std::ostream&, const Config<3>&);
template void write_config_file<2>(const std::string&, const Config<2>&);
template void write_config_file<3>(const std::string&, const Config<3>&);

}  // namespace eip
