#include "puc/rank_data.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace puc {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace

TiesError::TiesError(std::size_t column, double value)
    : std::runtime_error("tied values in column " + std::to_string(column + 1) + " (value " +
                         std::to_string(value) + ")"),
      column_(column),
      value_(value) {}

DataTable read_csv(std::istream& in) {
    DataTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t cols = 0;
    bool saw_data = false;
    bool header_allowed = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_fields(line);
        std::vector<double> values(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_double(fields[c], values[c])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (header_allowed) {  // single header line
                header_allowed = false;
                continue;
            }
            throw CsvParseError("non-numeric field", line_no);
        }
        header_allowed = false;
        if (!saw_data) {
            cols = fields.size();
            table.columns.assign(cols, {});
            saw_data = true;
        } else if (fields.size() != cols) {
            throw CsvParseError("expected " + std::to_string(cols) + " fields, got " +
                                    std::to_string(fields.size()),
                                line_no);
        }
        for (std::size_t c = 0; c < cols; ++c) table.columns[c].push_back(values[c]);
    }
    if (!saw_data) throw CsvParseError("no data rows", line_no);
    return table;
}

DataTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return read_csv(in);
}

RankData compute_ranks(const DataTable& data, TiesPolicy policy) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();
    if (d < 2) throw std::invalid_argument("compute_ranks: need at least two columns");
    if (n < 1) throw std::invalid_argument("compute_ranks: need at least one row");

    RankData rd;
    rd.n = n;
    rd.d = d;
    rd.ranks.assign(d, std::vector<std::uint32_t>(n));

    std::vector<std::size_t> order(n);
    for (std::size_t c = 0; c < d; ++c) {
        const auto& col = data.columns[c];
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
        if (policy == TiesPolicy::Error) {
            for (std::size_t k = 1; k < n; ++k) {
                if (col[order[k]] == col[order[k - 1]]) throw TiesError(c, col[order[k]]);
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            rd.ranks[c][order[k]] = static_cast<std::uint32_t>(k + 1);
        }
    }
    return rd;
}

RankData ranks_from_vectors(std::vector<std::vector<std::uint32_t>> ranks) {
    if (ranks.size() < 2) throw std::invalid_argument("ranks_from_vectors: need d >= 2");
    const std::size_t n = ranks.front().size();
    if (n == 0) throw std::invalid_argument("ranks_from_vectors: need n >= 1");
    std::vector<bool> seen(n);
    for (const auto& r : ranks) {
        if (r.size() != n) throw std::invalid_argument("ranks_from_vectors: unequal lengths");
        seen.assign(n, false);
        for (auto v : r) {
            if (v < 1 || v > n || seen[v - 1]) {
                throw std::invalid_argument("ranks_from_vectors: not a permutation of 1..n");
            }
            seen[v - 1] = true;
        }
    }
    RankData rd;
    rd.n = n;
    rd.d = ranks.size();
    rd.ranks = std::move(ranks);
    return rd;
}

std::vector<std::vector<double>> relative_ranks(const RankData& rd) {
    std::vector<std::vector<double>> pts(rd.n, std::vector<double>(rd.d));
    const double denom = static_cast<double>(rd.n) + 1.0;
    for (std::size_t i = 0; i < rd.n; ++i) {
        for (std::size_t c = 0; c < rd.d; ++c) {
            pts[i][c] = static_cast<double>(rd.ranks[c][i]) / denom;
        }
    }
    return pts;
}

} // namespace puc
