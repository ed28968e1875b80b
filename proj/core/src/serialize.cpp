#include "sigtail/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sigtail {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_tensor_series_text(std::ostream& os, const TruncatedTensorSeries& s) {
    os << s.dim() << ' ' << s.trunc() << '\n';
    for (int n = 0; n <= s.trunc(); ++n) {
        auto lv = s.level(n);
        for (std::size_t i = 0; i < lv.size(); ++i) {
            if (i) os << ' ';
            os << format_double(lv[i]);
        }
        os << '\n';
    }
}

TruncatedTensorSeries read_tensor_series_text(std::istream& is) {
    int d = 0, N = -1;
    if (!(is >> d >> N)) throw std::runtime_error("tensor series text: bad header");
    TruncatedTensorSeries s(d, N);
    for (int n = 0; n <= N; ++n) {
        auto lv = s.level(n);
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (!(is >> lv[i])) throw std::runtime_error("tensor series text: truncated data");
    }
    return s;
}

std::string tensor_series_to_json(const TruncatedTensorSeries& s) {
    nlohmann::json j;
    j["d"] = s.dim();
    j["N"] = s.trunc();
    auto levels = nlohmann::json::array();
    for (int n = 0; n <= s.trunc(); ++n) {
        auto lv = s.level(n);
        levels.push_back(std::vector<double>(lv.begin(), lv.end()));
    }
    j["levels"] = std::move(levels);
    return j.dump();
}

TruncatedTensorSeries tensor_series_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    TruncatedTensorSeries s(j.at("d").get<int>(), j.at("N").get<int>());
    const auto& levels = j.at("levels");
    if (static_cast<int>(levels.size()) != s.trunc() + 1)
        throw std::runtime_error("tensor series json: level count mismatch");
    for (int n = 0; n <= s.trunc(); ++n) {
        auto lv = s.level(n);
        const auto& src = levels[static_cast<std::size_t>(n)];
        if (src.size() != lv.size()) throw std::runtime_error("tensor series json: level size mismatch");
        for (std::size_t i = 0; i < lv.size(); ++i) lv[i] = src[i].get<double>();
    }
    return s;
}

void write_path_csv(std::ostream& os, const PiecewiseLinearPath& p) {
    os << 't';
    for (int j = 1; j <= p.d; ++j) os << ",x" << j;
    os << '\n';
    for (std::size_t i = 0; i < p.times.size(); ++i) {
        os << format_double(p.times[i]);
        for (int j = 0; j < p.d; ++j) os << ',' << format_double(p.points[i][static_cast<std::size_t>(j)]);
        os << '\n';
    }
}

PiecewiseLinearPath read_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("path csv: empty input");
    int d = 0;
    {
        std::stringstream header(line);
        std::string col;
        bool first = true;
        while (std::getline(header, col, ',')) {
            if (first) {
                if (col != "t") throw std::runtime_error("path csv: first column must be t");
                first = false;
            } else {
                ++d;
            }
        }
    }
    if (d < 1) throw std::runtime_error("path csv: no coordinate columns");
    PiecewiseLinearPath p;
    p.d = d;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) throw std::runtime_error("path csv: bad row");
        p.times.push_back(std::stod(cell));
        std::vector<double> pt;
        pt.reserve(static_cast<std::size_t>(d));
        while (std::getline(row, cell, ',')) pt.push_back(std::stod(cell));
        if (static_cast<int>(pt.size()) != d) throw std::runtime_error("path csv: row width mismatch");
        p.points.push_back(std::move(pt));
    }
    p.validate();
    return p;
}

void save_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

std::string load_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace sigtail
