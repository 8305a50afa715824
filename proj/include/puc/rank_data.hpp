#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace puc {

/// Column-major numeric table, as read from CSV.
struct DataTable {
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t cols() const { return columns.size(); }
};

class CsvParseError : public std::runtime_error {
public:
    CsvParseError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Comma-separated numeric columns with an optional single header line.
/// Decimal points, scientific notation; every data row must have the same
/// number of fields.
DataTable read_csv(std::istream& in);
DataTable read_csv_file(const std::string& path);

class TiesError : public std::runtime_error {
public:
    TiesError(std::size_t column, double value);

    std::size_t column() const noexcept { return column_; }
    double value() const noexcept { return value_; }

private:
    std::size_t column_;
    double value_;
};

enum class TiesPolicy {
    Error,             // duplicates within a column are rejected
    BreakByInputOrder  // deterministic tie-break, earlier row gets the smaller rank
};

/// Rank vectors of an n x d sample; each vector is a permutation of 1..n.
struct RankData {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<std::uint32_t>> ranks;  // ranks[c][i] in 1..n
};

/// Ranks per column, smallest value gets rank 1. Requires d >= 2 and
/// continuous-looking data: any duplicate raises TiesError unless the
/// tie-break policy is selected explicitly.
RankData compute_ranks(const DataTable& data, TiesPolicy policy = TiesPolicy::Error);

/// Wraps externally supplied rank vectors, validating the permutation
/// property.
RankData ranks_from_vectors(std::vector<std::vector<std::uint32_t>> ranks);

/// The n points (r_1i/(n+1), ..., r_di/(n+1)).
std::vector<std::vector<double>> relative_ranks(const RankData& rd);

} // namespace puc
