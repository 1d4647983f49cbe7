#include "sparsepen/dataset.hpp"

#include "sparsepen/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace sparsepen {

namespace {

constexpr double kInvariantTol = 1e-10;

// Splits one CSV record. Handles double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw DataError("unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& text, double& out) {
    const std::string cell = trim(text);
    if (cell.empty()) return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

} // namespace

RawTable parse_csv(std::istream& in, const std::string& response_column) {
    std::string line;
    auto next_line = [&](std::string& dst) {
        while (std::getline(in, dst)) {
            if (!dst.empty() && dst.back() == '\r') dst.pop_back();
            if (!trim(dst).empty()) return true;
        }
        return false;
    };

    if (!next_line(line)) throw DataError("CSV input is empty (header row required)");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header = split_record(line);
    for (auto& name : header) name = trim(name);
    std::set<std::string> seen;
    for (const auto& name : header) {
        if (!seen.insert(name).second)
            throw DataError(fmt::format("duplicate column name '{}'", name));
    }
    if (header.size() < 2) throw DataError("CSV needs at least two columns");

    std::size_t response_index = header.size();
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == response_column) response_index = c;
    if (response_index == header.size())
        throw DataError(fmt::format("response column '{}' not found", response_column));

    std::vector<std::vector<double>> rows;
    std::size_t row_number = 1; // 1-based data row index, header excluded
    while (next_line(line)) {
        std::vector<std::string> fields = split_record(line);
        if (fields.size() != header.size())
            throw DataError(fmt::format("row {} has {} fields, expected {}", row_number,
                                        fields.size(), header.size()));
        std::vector<double> values(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_number(fields[c], values[c]))
                throw DataError(fmt::format("non-numeric cell '{}' at row {}, column '{}'",
                                            trim(fields[c]), row_number, header[c]));
        }
        rows.push_back(std::move(values));
        ++row_number;
    }
    if (rows.size() < 3) throw DataError("CSV needs at least three data rows");

    RawTable table;
    table.response_name = response_column;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(header.size() - 1);
    table.X.resize(n, p);
    table.y.resize(n);
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != response_index) table.predictor_names.push_back(header[c]);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        Eigen::Index j = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == response_index)
                table.y(i) = row[c];
            else
                table.X(i, j++) = row[c];
        }
    }
    return table;
}

RawTable load_csv(const std::filesystem::path& path, const std::string& response_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
    return parse_csv(in, response_column);
}

Dataset::Dataset(Eigen::MatrixXd X, Eigen::VectorXd y, Standardization record,
                 std::vector<std::string> names, bool unit_scaled)
    : X_(std::move(X)), y_(std::move(y)), record_(std::move(record)), names_(std::move(names)),
      unit_scaled_(unit_scaled) {
    if (names_.empty()) {
        names_.reserve(static_cast<std::size_t>(X_.cols()));
        for (Eigen::Index j = 0; j < X_.cols(); ++j) names_.push_back(fmt::format("x{}", j + 1));
    }
}

Dataset Dataset::from_standardized(Eigen::MatrixXd X, Eigen::VectorXd y,
                                   std::vector<std::string> names) {
    const Eigen::Index n = X.rows();
    if (n < 2 || X.cols() < 1) throw DataError("dataset needs n >= 2 and p >= 1");
    if (y.size() != n) throw DataError("response length does not match design rows");
    if (!X.allFinite() || !y.allFinite()) throw DataError("dataset contains non-finite values");
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double mean = X.col(j).sum() * inv_n;
        const double msq = X.col(j).squaredNorm() * inv_n;
        if (std::abs(mean) >= kInvariantTol || std::abs(msq - 1.0) >= kInvariantTol)
            throw DataError(fmt::format("column {} is not standardized (mean {}, mean square {})",
                                        j + 1, mean, msq));
    }
    if (std::abs(y.sum() * inv_n) >= kInvariantTol) throw DataError("response is not centered");

    Standardization record;
    record.column_means = Eigen::VectorXd::Zero(X.cols());
    record.column_scales = Eigen::VectorXd::Ones(X.cols());
    if (!names.empty() && names.size() != static_cast<std::size_t>(X.cols()))
        throw DataError("name count does not match column count");
    return Dataset(std::move(X), std::move(y), std::move(record), std::move(names), true);
}

OriginalCoefficients Dataset::to_original(const Eigen::VectorXd& beta) const {
    if (beta.size() != p()) throw std::invalid_argument("coefficient length does not match p");
    OriginalCoefficients out;
    out.slopes = record_.response_scale * beta.cwiseQuotient(record_.column_scales);
    out.intercept = record_.response_mean - out.slopes.dot(record_.column_means);
    return out;
}

Eigen::VectorXd Dataset::predict_original(const Eigen::MatrixXd& raw_rows,
                                          const Eigen::VectorXd& beta) const {
    if (raw_rows.cols() != p()) throw std::invalid_argument("row width does not match p");
    const OriginalCoefficients coef = to_original(beta);
    return (raw_rows * coef.slopes).array() + coef.intercept;
}

Dataset standardize(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    const StandardizeOptions& options, std::vector<std::string> names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (n < 2 || p < 1) throw DataError("dataset needs n >= 2 and p >= 1");
    if (y.size() != n) throw DataError("response length does not match design rows");
    if (!names.empty() && names.size() != static_cast<std::size_t>(p))
        throw DataError("name count does not match column count");
    if (!y.allFinite()) throw DataError("response contains non-finite values");

    auto column_label = [&](Eigen::Index j) {
        return names.empty() ? fmt::format("#{}", j + 1) : names[static_cast<std::size_t>(j)];
    };

    const double inv_n = 1.0 / static_cast<double>(n);
    Standardization record;
    record.column_means.resize(p);
    record.column_scales.resize(p);
    Eigen::MatrixXd Z(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!X.col(j).allFinite())
            throw DataError(fmt::format("column '{}' contains non-finite values", column_label(j)));
        const double mean = X.col(j).sum() * inv_n;
        Z.col(j) = X.col(j).array() - mean;
        const double scale = std::sqrt(Z.col(j).squaredNorm() * inv_n);
        const double magnitude = X.col(j).cwiseAbs().maxCoeff();
        if (!(scale > 1e-12 * std::max(1.0, magnitude)))
            throw DataError(fmt::format("column '{}' has zero variance", column_label(j)));
        Z.col(j) /= scale;
        record.column_means(j) = mean;
        record.column_scales(j) = scale;
    }

    record.response_mean = y.sum() * inv_n;
    Eigen::VectorXd yc = y.array() - record.response_mean;
    if (options.standardize_response) {
        const double scale = std::sqrt(yc.squaredNorm() * inv_n);
        if (!(scale > 0.0)) throw DataError("response has zero variance");
        yc /= scale;
        record.response_scale = scale;
    }
    return Dataset(std::move(Z), std::move(yc), std::move(record), std::move(names), true);
}

Dataset standardize(const RawTable& table, const StandardizeOptions& options) {
    return standardize(table.X, table.y, options, table.predictor_names);
}

Dataset center_with_scales(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Standardization& reference, std::vector<std::string> names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (n < 2 || p < 1) throw DataError("dataset needs n >= 2 and p >= 1");
    if (y.size() != n) throw DataError("response length does not match design rows");
    if (reference.column_scales.size() != p) throw DataError("reference scale count does not match p");
    if (!X.allFinite() || !y.allFinite()) throw DataError("dataset contains non-finite values");
    if (!(reference.column_scales.array() > 0.0).all() || !(reference.response_scale > 0.0))
        throw DataError("reference scales must be positive");

    const double inv_n = 1.0 / static_cast<double>(n);
    Standardization record;
    record.column_means = X.colwise().sum().transpose() * inv_n;
    record.column_scales = reference.column_scales;
    record.response_mean = y.sum() * inv_n;
    record.response_scale = reference.response_scale;

    Eigen::MatrixXd Z = (X.rowwise() - record.column_means.transpose()).array().rowwise() /
                        record.column_scales.transpose().array();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!(Z.col(j).squaredNorm() > 0.0))
            throw DataError(fmt::format("column {} has zero variance", j + 1));
    }
    Eigen::VectorXd yc = (y.array() - record.response_mean) / record.response_scale;
    return Dataset(std::move(Z), std::move(yc), std::move(record), std::move(names), false);
}

} // namespace sparsepen
