#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace macroloc {

using Vec3 = std::array<double, 3>;

enum class LatticeKind { FCC };

struct Shell {
    double distance = 0;   // sigma units
    int coordination = 0;
};

/// Neighbor shells of a Bravais lattice, nearest first.
struct LatticeShells {
    LatticeKind kind = LatticeKind::FCC;
    double spacing_d = 0;
    std::vector<Shell> shells;

    std::size_t size() const { return shells.size(); }
    bool empty() const { return shells.empty(); }
};

struct Cluster {
    std::vector<Vec3> sites;
    std::size_t count_N = 0;
};

/// Default shell truncation radius, as a multiple of the nearest-neighbor spacing.
inline constexpr double kDefaultShellRange = 6.0;

/// Atomic volume per site for nearest-neighbor spacing d.
double volume_per_site(LatticeKind kind, double d);

/// Every distinct inter-site distance <= max_distance with its exact multiplicity.
LatticeShells enumerate_shells(LatticeKind kind, double d, double max_distance);

/// Keeps only the first `count` shells.
LatticeShells first_shells(const LatticeShells& shells, std::size_t count);

/// The N lattice sites nearest the origin, ties broken lexicographically,
/// translated so that their centroid is zero.
Cluster build_cluster(LatticeKind kind, double d, int N);

}  // namespace macroloc
