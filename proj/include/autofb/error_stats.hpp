#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "autofb/errors.hpp"

namespace autofb {

// One predicted-vs-clinical measurement pair, both in millimetres.
struct ErrorPair {
    double predicted_mm = 0.0;
    double clinical_mm = 0.0;
};

// Tukey boxplot summary of absolute errors plus the share of cases
// inside the clinically permissible +/-15% band.
struct ErrorStats {
    std::string measurement;
    std::size_t n = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
    double within_tolerance_rate = 0.0;
};

inline constexpr double kClinicalTolerance = 0.15;

namespace detail {

// Tukey hinges: the median of each half, with the overall median
// included in both halves when the count is odd. Matches the classic
// five-number summary (e.g. {1,2,3,4,5} -> hinges 2 and 4).
inline double sorted_median(std::span<const double> v) {
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

inline ErrorStats error_stats(std::span<const ErrorPair> pairs,
                              const std::string& measurement) {
    if (pairs.empty()) throw EmptyInput("error_stats: no pairs for " + measurement);

    ErrorStats out;
    out.measurement = measurement;
    out.n = pairs.size();

    std::vector<double> errors;
    errors.reserve(pairs.size());
    std::size_t within = 0;
    for (const ErrorPair& p : pairs) {
        const double err = std::abs(p.predicted_mm - p.clinical_mm);
        errors.push_back(err);
        if (err <= kClinicalTolerance * p.clinical_mm) ++within;
    }
    out.within_tolerance_rate = static_cast<double>(within) / pairs.size();

    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    out.median = detail::sorted_median(errors);
    const std::size_t half = n / 2 + (n % 2);  // include median in odd halves
    out.q1 = detail::sorted_median(std::span<const double>(errors.data(), half));
    out.q3 = detail::sorted_median(std::span<const double>(errors.data() + n - half, half));

    const double iqr = out.q3 - out.q1;
    const double lo_fence = out.q1 - 1.5 * iqr;
    const double hi_fence = out.q3 + 1.5 * iqr;
    out.whisker_low = errors.back();
    out.whisker_high = errors.front();
    for (double e : errors) {
        if (e < lo_fence || e > hi_fence) {
            out.outliers.push_back(e);
        } else {
            out.whisker_low = std::min(out.whisker_low, e);
            out.whisker_high = std::max(out.whisker_high, e);
        }
    }
    return out;
}

inline ErrorStats error_stats(const std::vector<ErrorPair>& pairs,
                              const std::string& measurement) {
    return error_stats(std::span<const ErrorPair>(pairs), measurement);
}

}  // namespace autofb
