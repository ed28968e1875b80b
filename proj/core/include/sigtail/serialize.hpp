#pragma once

#include <iosfwd>
#include <string>

#include "sigtail/path.hpp"
#include "sigtail/tensor_series.hpp"

namespace sigtail {

/// Shortest round-trip decimal form of a double; deterministic, used by
/// every CSV/JSON writer so identical runs produce identical bytes.
std::string format_double(double x);

/// Text form: header line "d N", then one line per level 0..N with
/// space-separated coefficients in lexicographic word order.
void write_tensor_series_text(std::ostream& os, const TruncatedTensorSeries& s);
TruncatedTensorSeries read_tensor_series_text(std::istream& is);

/// JSON form with the same layout: {"d":..,"N":..,"levels":[[..],..]}.
std::string tensor_series_to_json(const TruncatedTensorSeries& s);
TruncatedTensorSeries tensor_series_from_json(const std::string& text);

/// Path CSV: header "t,x1,...,xd", one row per sample.
void write_path_csv(std::ostream& os, const PiecewiseLinearPath& p);
PiecewiseLinearPath read_path_csv(std::istream& is);

void save_text_file(const std::string& path, const std::string& content);
std::string load_text_file(const std::string& path);

}  // namespace sigtail
