#pragma once

#include <vector>

namespace fraccol {

/// Graded temporal mesh t_k = T * (k/M)^r for k = 0..M. r = 1 gives the
/// uniform mesh; r > 1 concentrates nodes near t = 0 where the solution of a
/// fractional-order problem is typically weakly singular.
struct TemporalMesh {
    int M = 0;
    double T = 0.0;
    double r = 1.0;
    std::vector<double> nodes;  // size M+1; nodes[0] = 0, nodes[M] = T exactly

    /// Width of interval k (1-based, k = 1..M).
    double tau(int k) const { return nodes[k] - nodes[k - 1]; }
};

/// Build the graded mesh. Requires M >= 1, T > 0, r >= 1.
TemporalMesh make_graded_mesh(int M, double T, double r);

}  // namespace fraccol
