#include "fraccol/mesh.hpp"

#include <cmath>

#include "fraccol/errors.hpp"

namespace fraccol {

TemporalMesh make_graded_mesh(int M, double T, double r) {
    if (M < 1) throw DomainError("make_graded_mesh: M must be >= 1");
    if (!(T > 0.0)) throw DomainError("make_graded_mesh: T must be positive");
    if (!(r >= 1.0)) throw DomainError("make_graded_mesh: grading exponent r must be >= 1");
    TemporalMesh mesh;
    mesh.M = M;
    mesh.T = T;
    mesh.r = r;
    mesh.nodes.resize(M + 1);
    for (int k = 0; k <= M; ++k)
        mesh.nodes[k] = T * std::pow(static_cast<double>(k) / M, r);
    mesh.nodes[0] = 0.0;
    mesh.nodes[M] = T;  // (M/M)^r == 1, restated to make the endpoint explicit
    return mesh;
}

}  // namespace fraccol
