#include "sparsepen/penalty.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparsepen {

std::string_view to_string(Family family) {
    switch (family) {
    case Family::Lasso: return "lasso";
    case Family::SCAD: return "scad";
    case Family::MCP: return "mcp";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "lasso") return Family::Lasso;
    if (lower == "scad") return Family::SCAD;
    if (lower == "mcp") return Family::MCP;
    throw std::invalid_argument("unknown penalty family '" + std::string(name) + "'");
}

double default_a(Family family) {
    switch (family) {
    case Family::SCAD: return 3.7;
    case Family::MCP: return 3.0;
    case Family::Lasso: break;
    }
    return 0.0;
}

PenaltySpec::PenaltySpec(Family family, double lambda, double a)
    : family_(family), lambda_(lambda), a_(a) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("penalty lambda must be finite and >= 0");
    if (family == Family::SCAD && !(a > 2.0 && std::isfinite(a)))
        throw std::invalid_argument("SCAD requires a > 2");
    if (family == Family::MCP && !(a > 1.0 && std::isfinite(a)))
        throw std::invalid_argument("MCP requires a > 1");
}

namespace {

inline double sign(double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); }

inline double soft(double z, double lambda) {
    return sign(z) * std::max(std::abs(z) - lambda, 0.0);
}

} // namespace

double penalty_value(const PenaltySpec& spec, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("penalty_value expects t >= 0");
    const double lam = spec.lambda();
    const double a = spec.a();
    switch (spec.family()) {
    case Family::Lasso:
        return lam * t;
    case Family::SCAD:
        if (t <= lam) return lam * t;
        if (t <= a * lam) return -(t * t - 2.0 * a * lam * t + lam * lam) / (2.0 * (a - 1.0));
        return (a + 1.0) * lam * lam / 2.0;
    case Family::MCP:
        if (t <= a * lam) return lam * t - t * t / (2.0 * a);
        return a * lam * lam / 2.0;
    }
    return 0.0;
}

double penalty_derivative(const PenaltySpec& spec, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("penalty_derivative expects t > 0");
    const double lam = spec.lambda();
    const double a = spec.a();
    switch (spec.family()) {
    case Family::Lasso:
        return lam;
    case Family::SCAD:
        if (t <= lam) return lam;
        if (lam == 0.0) return 0.0;
        return std::max(a * lam - t, 0.0) / (a - 1.0);
    case Family::MCP:
        return std::max(lam - t / a, 0.0);
    }
    return 0.0;
}

double threshold(const PenaltySpec& spec, double z) noexcept {
    const double lam = spec.lambda();
    const double a = spec.a();
    const double az = std::abs(z);
    switch (spec.family()) {
    case Family::Lasso:
        return soft(z, lam);
    case Family::SCAD:
        // |z| == a*lambda belongs to both of the last two branches; they agree
        // there, and taking the identity keeps the unbiased region exact.
        if (az >= a * lam) return z;
        if (az <= 2.0 * lam) return soft(z, lam);
        return sign(z) * ((a - 1.0) * az - a * lam) / (a - 2.0);
    case Family::MCP:
        if (az >= a * lam) return z;
        return soft(z, lam) / (1.0 - 1.0 / a);
    }
    return z;
}

double threshold_scaled(const PenaltySpec& spec, double u, double curvature) {
    if (!(curvature > 0.0)) throw std::invalid_argument("curvature must be > 0");
    const double lam = spec.lambda();
    const double a = spec.a();
    const double d = curvature;
    const double au = std::abs(u);
    if (spec.family() == Family::Lasso) return sign(u) * std::max(d * au - lam, 0.0) / d;

    // Candidates on [0, inf) for |u|; sign restored at the end.
    double candidates[6];
    int count = 0;
    auto clip = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
    candidates[count++] = 0.0;
    if (spec.family() == Family::SCAD) {
        candidates[count++] = clip((d * au - lam) / d, 0.0, lam);
        const double denom = d * (a - 1.0) - 1.0;
        if (denom > 0.0) {
            candidates[count++] = clip((d * au * (a - 1.0) - a * lam) / denom, lam, a * lam);
        } else {
            candidates[count++] = lam;
            candidates[count++] = a * lam;
        }
    } else {
        const double denom = d - 1.0 / a;
        if (denom > 0.0) {
            candidates[count++] = clip((d * au - lam) / denom, 0.0, a * lam);
        } else {
            candidates[count++] = a * lam;
        }
    }
    candidates[count++] = std::max(au, a * lam);

    double best = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int c = 0; c < count; ++c) {
        const double b = candidates[c];
        const double value = 0.5 * d * (au - b) * (au - b) + penalty_value(spec, b);
        if (value < best_value) {
            best_value = value;
            best = b;
        }
    }
    return sign(u) * best;
}

} // namespace sparsepen
