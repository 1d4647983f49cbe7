#pragma once

#include <string>
#include <string_view>

namespace sparsepen {

enum class Family { Lasso, SCAD, MCP };

std::string_view to_string(Family family);

/// Parses "lasso", "scad" or "mcp" (case-insensitive). Throws std::invalid_argument.
Family parse_family(std::string_view name);

/// Conventional concavity parameter: 3.7 for SCAD, 3 for MCP. Lasso ignores it.
double default_a(Family family);

/**
 * Penalty family together with its tuning parameters.
 *
 * Construction enforces lambda >= 0, a > 2 for SCAD and a > 1 for MCP.
 * For the Lasso the concavity parameter is stored but never read.
 */
class PenaltySpec {
public:
    PenaltySpec(Family family, double lambda, double a);

    static PenaltySpec lasso(double lambda) { return {Family::Lasso, lambda, 0.0}; }
    static PenaltySpec scad(double lambda, double a = 3.7) { return {Family::SCAD, lambda, a}; }
    static PenaltySpec mcp(double lambda, double a = 3.0) { return {Family::MCP, lambda, a}; }

    Family family() const noexcept { return family_; }
    double lambda() const noexcept { return lambda_; }
    double a() const noexcept { return a_; }

    PenaltySpec with_lambda(double lambda) const { return {family_, lambda, a_}; }

private:
    Family family_;
    double lambda_;
    double a_;
};

/// p_lambda(t) for t >= 0. Throws std::invalid_argument for negative t.
double penalty_value(const PenaltySpec& spec, double t);

/// p'_lambda(t) for t > 0; always in [0, lambda]. Throws std::invalid_argument for t <= 0.
double penalty_derivative(const PenaltySpec& spec, double t);

/**
 * Closed-form minimizer of 0.5 * (z - beta)^2 + p_lambda(|beta|).
 *
 * This is the coordinate-descent update for unit-scaled columns. Lasso is the
 * soft threshold, SCAD and MCP reduce to the identity once |z| >= a * lambda.
 */
double threshold(const PenaltySpec& spec, double z) noexcept;

/// Global minimizer of (curvature / 2) * (u - beta)^2 + p_lambda(|beta|) for
/// curvature > 0. Needed when a column's mean square is not exactly one; with
/// curvature == 1 it agrees with threshold(). The one-dimensional problem can be
/// non-convex for small curvature, so each branch's stationary point is compared.
double threshold_scaled(const PenaltySpec& spec, double u, double curvature);

} // namespace sparsepen
