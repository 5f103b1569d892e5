#include "macroloc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

// Lattice points are kept as integer triples in a basis where squared norms
// are integers, so that shells can be grouped exactly.
struct IntPoint {
    long x, y, z;
    long norm2() const { return x * x + y * y + z * z; }
};

struct Geometry {
    long nn_norm2;   // integer squared norm of a nearest neighbor
    double scale;    // length of one integer step for spacing d = 1
    double volume;   // volume per site for d = 1
};

Geometry geometry(LatticeKind kind) {
    switch (kind) {
    case LatticeKind::FCC:
        // Points (i,j,k) with i+j+k even; nearest neighbors (1,1,0).
        return {2, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    }
    throw InputError("unknown lattice kind");
}

bool is_site(LatticeKind kind, long x, long y, long z) {
    switch (kind) {
    case LatticeKind::FCC:
        return ((x + y + z) % 2 + 2) % 2 == 0;
    }
    return false;
}

// All lattice points with integer squared norm <= max_norm2.
std::vector<IntPoint> points_within(LatticeKind kind, long max_norm2) {
    const long r = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(max_norm2)))) + 1;
    std::vector<IntPoint> out;
    for (long x = -r; x <= r; ++x)
        for (long y = -r; y <= r; ++y)
            for (long z = -r; z <= r; ++z) {
                if (!is_site(kind, x, y, z)) continue;
                IntPoint p{x, y, z};
                if (p.norm2() <= max_norm2) out.push_back(p);
            }
    return out;
}

long max_norm2_for(const Geometry& g, double d, double max_distance) {
    const double steps = max_distance / (d * g.scale);
    // small slack so that shells sitting exactly on the boundary are kept
    return static_cast<long>(std::floor(steps * steps * (1 + 1e-12) + 1e-9));
}

}  // namespace

double volume_per_site(LatticeKind kind, double d) { return geometry(kind).volume * d * d * d; }

LatticeShells enumerate_shells(LatticeKind kind, double d, double max_distance) {
    if (!(d > 0) || !std::isfinite(d)) throw InputError("lattice spacing must be positive");
    if (!(max_distance >= d)) throw InputError("max_distance must be at least the lattice spacing");

    const Geometry g = geometry(kind);
    std::map<long, int> counts;
    for (const IntPoint& p : points_within(kind, max_norm2_for(g, d, max_distance))) {
        const long n2 = p.norm2();
        if (n2 > 0) ++counts[n2];
    }

    LatticeShells out;
    out.kind = kind;
    out.spacing_d = d;
    for (const auto& [n2, c] : counts)
        out.shells.push_back({d * g.scale * std::sqrt(static_cast<double>(n2)), c});
    return out;
}

LatticeShells first_shells(const LatticeShells& shells, std::size_t count) {
    LatticeShells out = shells;
    if (out.shells.size() > count) out.shells.resize(count);
    return out;
}

Cluster build_cluster(LatticeKind kind, double d, int N) {
    if (N <= 0) throw InputError("cluster size must be positive");
    if (!(d > 0) || !std::isfinite(d)) throw InputError("lattice spacing must be positive");

    const Geometry g = geometry(kind);
    // Radius (in integer steps) of a sphere expected to hold ~N sites, grown until it does.
    double radius = std::cbrt(3.0 * N * g.volume / (4.0 * M_PI)) / g.scale + 2.0;
    std::vector<IntPoint> pts;
    for (;;) {
        pts = points_within(kind, static_cast<long>(radius * radius));
        if (pts.size() >= static_cast<std::size_t>(N)) break;
        radius *= 1.5;
    }
    std::sort(pts.begin(), pts.end(), [](const IntPoint& a, const IntPoint& b) {
        return std::make_tuple(a.norm2(), a.x, a.y, a.z) < std::make_tuple(b.norm2(), b.x, b.y, b.z);
    });
    pts.resize(N);

    Cluster c;
    c.count_N = static_cast<std::size_t>(N);
    c.sites.reserve(pts.size());
    Vec3 centroid{0, 0, 0};
    const double s = d * g.scale;
    for (const IntPoint& p : pts) {
        Vec3 v{s * p.x, s * p.y, s * p.z};
        for (int i = 0; i < 3; ++i) centroid[i] += v[i];
        c.sites.push_back(v);
    }
    for (int i = 0; i < 3; ++i) centroid[i] /= N;
    for (Vec3& v : c.sites)
        for (int i = 0; i < 3; ++i) v[i] -= centroid[i];
    return c;
}

}  // namespace macroloc
