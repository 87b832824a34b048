#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "autofb/errors.hpp"
#include "autofb/point.hpp"
#include "autofb/regions.hpp"

namespace autofb {

// Geometric ellipse parameters: center, semi-axes (a >= b > 0) and the
// orientation of the major axis in radians, normalized into [0, pi).
struct EllipseParams {
    double cx = 0.0;
    double cy = 0.0;
    double a = 0.0;
    double b = 0.0;
    double theta = 0.0;
};

namespace detail {

inline double normalize_angle(double theta) {
    const double pi = std::numbers::pi;
    theta = std::fmod(theta, pi);
    if (theta < 0) theta += pi;
    if (theta >= pi) theta -= pi;
    return theta;
}

// Converts conic coefficients A x^2 + B xy + C y^2 + D x + E y + F = 0
// (with B^2 - 4AC < 0) to geometric parameters by diagonalizing the
// quadratic part about the conic's center.
inline EllipseParams conic_to_ellipse(double A, double B, double C, double D, double E,
                                      double F) {
    const double disc = 4.0 * A * C - B * B;
    if (disc <= 0)
        throw DegenerateConfiguration("fit_ellipse: conic is not an ellipse");
    // Orient so the quadratic form is positive definite.
    if (A + C < 0) {
        A = -A; B = -B; C = -C; D = -D; E = -E; F = -F;
    }
    const double cx = (B * E - 2.0 * C * D) / disc;
    const double cy = (B * D - 2.0 * A * E) / disc;
    const double f_center =
        A * cx * cx + B * cx * cy + C * cy * cy + D * cx + E * cy + F;
    if (!(f_center < 0))
        throw DegenerateConfiguration("fit_ellipse: degenerate (empty) ellipse");

    Eigen::Matrix2d Q;
    Q << A, B / 2.0, B / 2.0, C;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(Q);
    const double l1 = eig.eigenvalues()(0);  // smaller -> major axis
    const double l2 = eig.eigenvalues()(1);
    if (!(l1 > 0))
        throw DegenerateConfiguration("fit_ellipse: indefinite quadratic form");

    EllipseParams out;
    out.cx = cx;
    out.cy = cy;
    out.a = std::sqrt(-f_center / l1);
    out.b = std::sqrt(-f_center / l2);
    const Eigen::Vector2d major = eig.eigenvectors().col(0);
    out.theta = normalize_angle(std::atan2(major.y(), major.x()));
    return out;
}

}  // namespace detail

// Direct least-squares ellipse fit: minimizes the algebraic distance
// sum (A x^2 + B xy + C y^2 + D x + E y + F)^2 subject to the
// ellipse-specificity constraint 4AC - B^2 = 1. Uses the numerically
// stabilized partitioned form: the design matrix is split into its
// quadratic and linear blocks and the constraint is enforced through a
// reduced 3x3 eigenproblem. Input is centered on its mean and scaled by
// the mean radius before solving.
inline EllipseParams fit_ellipse(std::span<const PointD> points) {
    const std::size_t n = points.size();
    if (n < 6)
        throw InsufficientPoints("fit_ellipse: need at least 6 points, got " +
                                 std::to_string(n));

    double mx = 0, my = 0;
    for (const PointD& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double mean_r = 0;
    for (const PointD& p : points) mean_r += std::hypot(p.x - mx, p.y - my);
    mean_r /= static_cast<double>(n);
    if (!(mean_r > 0))
        throw DegenerateConfiguration("fit_ellipse: all points coincide");
    const double scale = mean_r;

    Eigen::MatrixXd d1(n, 3), d2(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (points[i].x - mx) / scale;
        const double v = (points[i].y - my) / scale;
        d1(i, 0) = u * u;
        d1(i, 1) = u * v;
        d1(i, 2) = v * v;
        d2(i, 0) = u;
        d2(i, 1) = v;
        d2(i, 2) = 1.0;
    }

    const Eigen::Matrix3d s1 = d1.transpose() * d1;
    const Eigen::Matrix3d s2 = d1.transpose() * d2;
    const Eigen::Matrix3d s3 = d2.transpose() * d2;

    // With centered coordinates, det(S3)/n^3 vanishes exactly when the
    // scatter is rank deficient (collinear input).
    if (std::abs(s3.determinant()) <
        1e-12 * static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n))
        throw DegenerateConfiguration("fit_ellipse: points are collinear");

    const Eigen::Matrix3d t = -s3.ldlt().solve(s2.transpose());
    const Eigen::Matrix3d m0 = s1 + s2 * t;
    Eigen::Matrix3d m;  // C1^{-1} * M0 for constraint matrix [[0,0,2],[0,-1,0],[2,0,0]]
    m.row(0) = m0.row(2) / 2.0;
    m.row(1) = -m0.row(1);
    m.row(2) = m0.row(0) / 2.0;

    Eigen::EigenSolver<Eigen::Matrix3d> eig(m);
    int best = -1;
    double best_cond = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(eig.eigenvalues()(i).imag()) > 1e-9) continue;
        const Eigen::Vector3d v = eig.eigenvectors().col(i).real();
        const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > best_cond) {
            best_cond = cond;
            best = i;
        }
    }
    if (best < 0)
        throw DegenerateConfiguration("fit_ellipse: no elliptical solution");

    const Eigen::Vector3d a1 = eig.eigenvectors().col(best).real();
    const Eigen::Vector3d a2 = t * a1;

    EllipseParams e = detail::conic_to_ellipse(a1(0), a1(1), a1(2), a2(0), a2(1), a2(2));
    e.cx = mx + scale * e.cx;
    e.cy = my + scale * e.cy;
    e.a *= scale;
    e.b *= scale;
    return e;
}

inline EllipseParams fit_ellipse(const std::vector<PointD>& points) {
    return fit_ellipse(std::span<const PointD>(points));
}

inline EllipseParams fit_ellipse(const Contour& contour) {
    std::vector<PointD> pts;
    pts.reserve(contour.points.size());
    for (const PointI& p : contour.points) pts.push_back(to_pointd(p));
    return fit_ellipse(pts);
}

// Parametric point on an ellipse at angle t. Shared by tests and the
// phantom generator.
inline PointD ellipse_point(const EllipseParams& e, double t) {
    const double ct = std::cos(t), st = std::sin(t);
    const double cth = std::cos(e.theta), sth = std::sin(e.theta);
    return {e.cx + e.a * cth * ct - e.b * sth * st,
            e.cy + e.a * sth * ct + e.b * cth * st};
}

}  // namespace autofb
