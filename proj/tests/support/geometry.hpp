#pragma once

// Small 2-D helpers for layout quality checks: convex hulls, polygon
// clipping and areas. Test-side only.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace testsupport {

using Point = std::array<double, 2>;

inline double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain; returns counter-clockwise hull
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

inline double polygon_area(const std::vector<Point>& poly) {
    if (poly.size() < 3) return 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        area += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(area) / 2.0;
}

// Sutherland-Hodgman clip of a convex subject against a convex clip polygon
inline std::vector<Point> clip_convex(const std::vector<Point>& subject,
                                      const std::vector<Point>& clip) {
    std::vector<Point> output = subject;
    for (std::size_t i = 0; i < clip.size() && !output.empty(); ++i) {
        const Point& a = clip[i];
        const Point& b = clip[(i + 1) % clip.size()];
        std::vector<Point> input;
        input.swap(output);
        for (std::size_t j = 0; j < input.size(); ++j) {
            const Point& p = input[j];
            const Point& q = input[(j + 1) % input.size()];
            const bool p_in = cross(a, b, p) >= 0;
            const bool q_in = cross(a, b, q) >= 0;
            auto intersect = [&] {
                const double a1 = b[1] - a[1], b1 = a[0] - b[0];
                const double c1 = a1 * a[0] + b1 * a[1];
                const double a2 = q[1] - p[1], b2 = p[0] - q[0];
                const double c2 = a2 * p[0] + b2 * p[1];
                const double det = a1 * b2 - a2 * b1;
                return Point{(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det};
            };
            if (p_in && q_in) {
                output.push_back(q);
            } else if (p_in && !q_in) {
                output.push_back(intersect());
            } else if (!p_in && q_in) {
                output.push_back(intersect());
                output.push_back(q);
            }
        }
    }
    return output;
}

inline double hull_overlap_over_union(const std::vector<Point>& a, const std::vector<Point>& b) {
    const auto ha = convex_hull(a);
    const auto hb = convex_hull(b);
    const double area_a = polygon_area(ha);
    const double area_b = polygon_area(hb);
    if (area_a == 0.0 || area_b == 0.0) return 0.0;
    const double inter = polygon_area(clip_convex(ha, hb));
    return inter / (area_a + area_b - inter);
}

} // namespace testsupport
