#include "rpstl/sections.hpp"

#include <cmath>
#include <queue>

namespace rpstl {

namespace {

struct Samples {
    std::vector<double> s;    // progress values, uniform step, exact endpoints
    std::vector<Vec2> p;      // configurations at s
    double step = 0.0;
};

Samples sample_path(const ReferencePath& path, double resolution) {
    const double g = path.g();
    const int n = std::max(1, static_cast<int>(std::ceil(g / resolution)));
    Samples out;
    out.step = g / n;
    out.s.reserve(n + 1);
    out.p.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        double s = std::min(i * out.step, g);
        out.s.push_back(s);
        out.p.push_back(path.configuration_at(s));
    }
    return out;
}

/// Minimum distance from point q to the part of `path` with progress in
/// [s_lo, s_hi].
double min_dist_to_subpath(const ReferencePath& path, double s_lo, double s_hi, const Vec2& q) {
    const auto& cum = path.cumulative_progress();
    const auto& wp = path.waypoints();
    s_lo = std::clamp(s_lo, 0.0, path.g());
    s_hi = std::clamp(s_hi, 0.0, path.g());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < wp.size(); ++i) {
        if (cum[i + 1] < s_lo || cum[i] > s_hi) continue;
        double span = cum[i + 1] - cum[i];
        double t0 = std::clamp((s_lo - cum[i]) / span, 0.0, 1.0);
        double t1 = std::clamp((s_hi - cum[i]) / span, 0.0, 1.0);
        Vec2 a = wp[i] + (wp[i + 1] - wp[i]) * t0;
        Vec2 b = wp[i] + (wp[i + 1] - wp[i]) * t1;
        best = std::min(best, point_segment_distance(q, a, b));
    }
    return best;
}

struct IndexBox {
    int a0, a1, b0, b1;
};

bool touch(const IndexBox& x, const IndexBox& y) {
    return x.a0 <= y.a1 + 1 && y.a0 <= x.a1 + 1 && x.b0 <= y.b1 + 1 && y.b0 <= x.b1 + 1;
}

}  // namespace

std::vector<CriticalSection> find_critical_sections(const ReferencePath& path_a, double radius_a,
                                                    const ReferencePath& path_b, double radius_b,
                                                    double resolution) {
    if (resolution <= 0.0) throw Error("find_critical_sections: resolution must be positive");
    const double reach = radius_a + radius_b;
    Samples sa = sample_path(path_a, resolution);
    Samples sb = sample_path(path_b, resolution);
    const int na = static_cast<int>(sa.s.size());
    const int nb = static_cast<int>(sb.s.size());

    std::vector<char> hit(static_cast<size_t>(na) * nb, 0);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            hit[static_cast<size_t>(i) * nb + j] = distance(sa.p[i], sb.p[j]) < reach;

    // 4-connected components of the collision set, as index bounding boxes.
    std::vector<IndexBox> boxes;
    std::vector<char> seen(hit.size(), 0);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            size_t id = static_cast<size_t>(i) * nb + j;
            if (!hit[id] || seen[id]) continue;
            IndexBox box{i, i, j, j};
            std::queue<std::pair<int, int>> q;
            q.emplace(i, j);
            seen[id] = 1;
            while (!q.empty()) {
                auto [ci, cj] = q.front();
                q.pop();
                box.a0 = std::min(box.a0, ci);
                box.a1 = std::max(box.a1, ci);
                box.b0 = std::min(box.b0, cj);
                box.b1 = std::max(box.b1, cj);
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    int ni = ci + di[k], nj = cj + dj[k];
                    if (ni < 0 || ni >= na || nj < 0 || nj >= nb) continue;
                    size_t nid = static_cast<size_t>(ni) * nb + nj;
                    if (hit[nid] && !seen[nid]) {
                        seen[nid] = 1;
                        q.emplace(ni, nj);
                    }
                }
            }
            boxes.push_back(box);
        }
    }

    // Components whose interval products touch at the sampling resolution are
    // merged.
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t x = 0; x < boxes.size() && !merged; ++x) {
            for (size_t y = x + 1; y < boxes.size() && !merged; ++y) {
                if (touch(boxes[x], boxes[y])) {
                    boxes[x].a0 = std::min(boxes[x].a0, boxes[y].a0);
                    boxes[x].a1 = std::max(boxes[x].a1, boxes[y].a1);
                    boxes[x].b0 = std::min(boxes[x].b0, boxes[y].b0);
                    boxes[x].b1 = std::max(boxes[x].b1, boxes[y].b1);
                    boxes.erase(boxes.begin() + y);
                    merged = true;
                }
            }
        }
    }
    std::sort(boxes.begin(), boxes.end(), [](const IndexBox& x, const IndexBox& y) {
        return std::pair(x.a0, x.b0) < std::pair(y.a0, y.b0);
    });

    const double tol = resolution / 100.0;
    std::vector<CriticalSection> out;
    for (const IndexBox& box : boxes) {
        // Existential collision test against the other side's sampled range.
        double blo = sb.s[box.b0], bhi = sb.s[box.b1];
        double alo = sa.s[box.a0], ahi = sa.s[box.a1];
        auto collide_a = [&](double s) {
            return min_dist_to_subpath(path_b, blo, bhi, path_a.configuration_at(s)) < reach;
        };
        auto collide_b = [&](double s) {
            return min_dist_to_subpath(path_a, alo, ahi, path_b.configuration_at(s)) < reach;
        };
        auto refine = [&](auto&& pred, double inside, double outside) {
            while (std::abs(inside - outside) > tol) {
                double mid = 0.5 * (inside + outside);
                (pred(mid) ? inside : outside) = mid;
            }
            return 0.5 * (inside + outside);
        };

        CriticalSection cs;
        cs.lower_a = box.a0 == 0 ? 0.0 : refine(collide_a, sa.s[box.a0], sa.s[box.a0 - 1]);
        cs.upper_a =
            box.a1 == na - 1 ? path_a.g() : refine(collide_a, sa.s[box.a1], sa.s[box.a1 + 1]);
        cs.lower_b = box.b0 == 0 ? 0.0 : refine(collide_b, sb.s[box.b0], sb.s[box.b0 - 1]);
        cs.upper_b =
            box.b1 == nb - 1 ? path_b.g() : refine(collide_b, sb.s[box.b1], sb.s[box.b1 + 1]);
        auto [da, db] = relax_bounds(cs, path_a, radius_a, path_b, radius_b, resolution);
        cs.relaxed_a = da;
        cs.relaxed_b = db;
        out.push_back(cs);
    }
    return out;
}

std::pair<double, double> relax_bounds(const CriticalSection& section, const ReferencePath& path_a,
                                       double radius_a, const ReferencePath& path_b,
                                       double radius_b, double resolution) {
    if (resolution <= 0.0) throw Error("relax_bounds: resolution must be positive");
    const double reach = radius_a + radius_b;
    const double tol = resolution / 100.0;

    // Smallest progress past which no later point on `path` overlaps the
    // other robot parked at `entry`.
    auto release = [&](const ReferencePath& path, double lower, double upper, const Vec2& entry) {
        const double g = path.g();
        const int n = std::max(1, static_cast<int>(std::ceil((g - lower) / resolution)));
        const double step = (g - lower) / n;
        auto blocked = [&](double d) { return distance(path.configuration_at(d), entry) < reach; };
        int last = -1;
        for (int i = 1; i <= n; ++i)
            if (blocked(std::min(lower + i * step, g))) last = i;
        if (last == -1) return lower;
        if (last == n) return upper;
        double inside = lower + last * step, outside = std::min(lower + (last + 1) * step, g);
        while (std::abs(inside - outside) > tol) {
            double mid = 0.5 * (inside + outside);
            (blocked(mid) ? inside : outside) = mid;
        }
        return std::clamp(0.5 * (inside + outside), lower, upper);
    };

    double delta_a = release(path_a, section.lower_a, section.upper_a,
                             path_b.configuration_at(section.lower_b));
    double delta_b = release(path_b, section.lower_b, section.upper_b,
                             path_a.configuration_at(section.lower_a));
    return {delta_a, delta_b};
}

}  // namespace rpstl
