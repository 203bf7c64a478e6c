#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ier/spectra.hpp"

namespace ier {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
/// "re+imi" with both parts round-trip formatted.
std::string format_complex(std::complex<double> z);
/// Accepts "a+bi", "a-bi", "bi", "a" and the j suffix. ConfigError otherwise.
std::complex<double> parse_complex(std::string_view text);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t h);

/// "# key: value" lines written before a CSV body.
using HeaderFields = std::vector<std::pair<std::string, std::string>>;
void write_comment_header(std::ostream& os, const HeaderFields& fields);

/// bin_lo,bin_hi,count,density
void write_histogram_csv(std::ostream& os, const Histogram& h, std::size_t sample_size);
/// One header row then one row per index; all columns the same length.
void write_columns_csv(std::ostream& os, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);

}  // namespace ier
