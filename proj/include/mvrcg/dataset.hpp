#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mvrcg/ci_tests.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/graph_io.hpp"

namespace mvrcg {

/// Column-named continuous data, one row per sample.
struct ContinuousData {
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // n x p
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct RawCsv {
    std::vector<std::string> names;
    std::vector<int> arities;  // empty unless a '# arities:' line follows the header
    std::vector<std::vector<std::string>> rows;
};

inline RawCsv read_raw_csv(std::istream& in) {
    RawCsv raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (raw.names.empty()) {
            raw.names = split_csv(t);
            continue;
        }
        if (t.front() == '#') {
            if (raw.rows.empty() && t.rfind("# arities:", 0) == 0) {
                for (const auto& tok : split_ws(t.substr(10))) {
                    int r = 0;
                    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), r);
                    if (ec != std::errc() || ptr != tok.data() + tok.size() || r < 2)
                        throw ParseError("csv line " + std::to_string(lineno) + ": bad arity '" + tok + "'");
                    raw.arities.push_back(r);
                }
                if (raw.arities.size() != raw.names.size())
                    throw ParseError("csv line " + std::to_string(lineno) + ": arity count does not match header");
            }
            continue;
        }
        auto cells = split_csv(t);
        if (cells.size() != raw.names.size())
            throw ParseError("csv line " + std::to_string(lineno) + ": expected " + std::to_string(raw.names.size()) +
                             " cells, got " + std::to_string(cells.size()));
        raw.rows.push_back(std::move(cells));
    }
    if (raw.names.empty()) throw ParseError("csv: missing header row");
    return raw;
}

}  // namespace detail

inline ContinuousData read_continuous_csv(std::istream& in) {
    auto raw = detail::read_raw_csv(in);
    ContinuousData out;
    out.names = raw.names;
    out.values.resize(static_cast<Eigen::Index>(raw.rows.size()), static_cast<Eigen::Index>(raw.names.size()));
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        for (std::size_t j = 0; j < raw.names.size(); ++j) {
            const std::string& c = raw.rows[i][j];
            double x = 0.0;
            auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), x);
            if (ec != std::errc() || ptr != c.data() + c.size())
                throw ParseError("csv row " + std::to_string(i + 1) + ": '" + c + "' is not a number");
            out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
        }
    }
    return out;
}

/// Arities come from a '# arities:' line after the header, else max + 1
/// (at least 2).
inline DiscreteData read_discrete_csv(std::istream& in) {
    auto raw = detail::read_raw_csv(in);
    DiscreteData out;
    out.names = raw.names;
    const std::size_t p = raw.names.size();
    out.columns.assign(p, std::vector<int>(raw.rows.size()));
    std::vector<int> max_seen(p, 0);
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            const std::string& c = raw.rows[i][j];
            int x = 0;
            auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), x);
            if (ec != std::errc() || ptr != c.data() + c.size() || x < 0)
                throw ParseError("csv row " + std::to_string(i + 1) + ": '" + c + "' is not a non-negative integer");
            out.columns[j][i] = x;
            max_seen[j] = std::max(max_seen[j], x);
        }
    }
    if (raw.arities.empty()) {
        for (int m : max_seen) out.arities.push_back(std::max(2, m + 1));
    } else {
        out.arities = raw.arities;
    }
    try {
        out.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return out;
}

inline ContinuousData read_continuous_csv_file(const std::string& path) {
    auto in = detail::open_input(path);
    return read_continuous_csv(in);
}

inline DiscreteData read_discrete_csv_file(const std::string& path) {
    auto in = detail::open_input(path);
    return read_discrete_csv(in);
}

inline void write_continuous_csv(std::ostream& out, const std::vector<std::string>& names, const Eigen::MatrixXd& values) {
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

inline void write_discrete_csv(std::ostream& out, const DiscreteData& data) {
    for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.names[j];
    out << "\n# arities:";
    for (int r : data.arities) out << ' ' << r;
    out << '\n';
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.columns[j][i];
        out << '\n';
    }
}

}  // namespace mvrcg
