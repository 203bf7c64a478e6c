#include "ier/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "ier/errors.hpp"

namespace ier {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_complex(std::complex<double> z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  const auto fail = [&] { return ConfigError("cannot parse complex number '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  auto number = [&](std::string_view part) {
    double v = 0.0;
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    const char* first = part.data() + (part.front() == '+' ? 1 : 0);
    const auto [p, ec] = std::from_chars(first, part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size()) throw fail();
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  s.pop_back();
  // split at the last sign that is not an exponent sign and not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(std::string_view(s).substr(0, split)), number(std::string_view(s).substr(split))};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_comment_header(std::ostream& os, const HeaderFields& fields) {
  for (const auto& [key, value] : fields) os << "# " << key << ": " << value << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& h, std::size_t sample_size) {
  os << "bin_lo,bin_hi,count,density\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double width = h.edges[b + 1] - h.edges[b];
    const double density =
        sample_size > 0 ? static_cast<double>(h.counts[b]) / (static_cast<double>(sample_size) * width) : 0.0;
    os << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << ','
       << format_double(density) << '\n';
  }
}

void write_columns_csv(std::ostream& os, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw DomainError("write_columns_csv: names and columns differ in count");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw DomainError("write_columns_csv: ragged columns");
  for (std::size_t c = 0; c < names.size(); ++c) os << (c ? "," : "") << names[c];
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << format_double(columns[c][r]);
    os << '\n';
  }
}

}  // namespace ier
