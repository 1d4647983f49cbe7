#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sparsepen {

/// Numeric table as read from disk: predictors and response kept apart.
struct RawTable {
    std::vector<std::string> predictor_names;
    std::string response_name;
    Eigen::MatrixXd X; // n x p
    Eigen::VectorXd y; // n

    Eigen::Index n() const noexcept { return X.rows(); }
    Eigen::Index p() const noexcept { return X.cols(); }
};

/// Reads a header-first, comma-separated numeric table. Throws DataError.
RawTable load_csv(const std::filesystem::path& path, const std::string& response_column);
RawTable parse_csv(std::istream& in, const std::string& response_column);

/// Per-column centering/scaling applied to the raw data.
struct Standardization {
    Eigen::VectorXd column_means;
    Eigen::VectorXd column_scales;
    double response_mean = 0.0;
    double response_scale = 1.0;
};

struct StandardizeOptions {
    /// Divide the centered response by its (1/n) standard deviation as well.
    bool standardize_response = false;
};

/// Coefficients on the scale of the raw predictors.
struct OriginalCoefficients {
    double intercept = 0.0;
    Eigen::VectorXd slopes;
};

/**
 * Standardized design and centered response.
 *
 * Every column has mean 0 and (1/n) * sum(x^2) == 1, the response has mean 0.
 * These are established by standardize() or checked by from_standardized();
 * the solver relies on them to make its coordinate update an exact
 * one-dimensional minimization.
 *
 * center_with_scales() is the one exception: columns are centered but divided
 * by externally supplied scales, so unit_scaled() is false and the solver falls
 * back to the curvature-weighted threshold.
 */
class Dataset {
public:
    /// Wraps data that already satisfies the invariants. Throws DataError otherwise.
    static Dataset from_standardized(Eigen::MatrixXd X, Eigen::VectorXd y,
                                     std::vector<std::string> names = {});

    const Eigen::MatrixXd& X() const noexcept { return X_; }
    const Eigen::VectorXd& y() const noexcept { return y_; }
    const Standardization& standardization() const noexcept { return record_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    Eigen::Index n() const noexcept { return X_.rows(); }
    Eigen::Index p() const noexcept { return X_.cols(); }
    bool unit_scaled() const noexcept { return unit_scaled_; }

    OriginalCoefficients to_original(const Eigen::VectorXd& beta) const;

    /// Fitted values for raw-scale rows, given standardized-scale coefficients.
    Eigen::VectorXd predict_original(const Eigen::MatrixXd& raw_rows,
                                     const Eigen::VectorXd& beta) const;

private:
    Dataset(Eigen::MatrixXd X, Eigen::VectorXd y, Standardization record,
            std::vector<std::string> names, bool unit_scaled);

    friend Dataset standardize(const Eigen::MatrixXd&, const Eigen::VectorXd&,
                               const StandardizeOptions&, std::vector<std::string>);
    friend Dataset center_with_scales(const Eigen::MatrixXd&, const Eigen::VectorXd&,
                                      const Standardization&, std::vector<std::string>);

    Eigen::MatrixXd X_;
    Eigen::VectorXd y_;
    Standardization record_;
    std::vector<std::string> names_;
    bool unit_scaled_ = true;
};

/// Centers and scales with the 1/n variance convention. Throws DataError on
/// non-finite cells or zero-variance columns.
Dataset standardize(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    const StandardizeOptions& options = {},
                    std::vector<std::string> names = {});
Dataset standardize(const RawTable& table, const StandardizeOptions& options = {});

/// Centers with this data's own means but divides by `reference` scales
/// (column_scales and response_scale), e.g. scales computed on a larger sample.
Dataset center_with_scales(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Standardization& reference,
                           std::vector<std::string> names = {});

} // namespace sparsepen
