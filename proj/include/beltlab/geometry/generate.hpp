#pragma once

#include <string>

#include "beltlab/geometry/mesh.hpp"

namespace beltlab::geometry {

enum class Domain { Square, Disk, Lshape, Annulus, Cube, Ball, Shell };

struct DomainSpec {
    Domain kind = Domain::Square;
    double r0 = 0.0; // annulus / shell inner radius
    double r1 = 0.0; // annulus / shell outer radius

    static DomainSpec parse(const std::string& name, double r0 = 0.0, double r1 = 0.0);
    std::string describe() const;
    int dimension() const;
    bool excludes_origin() const { return kind == Domain::Annulus || kind == Domain::Shell; }
};

// Structured meshes of the test domains. Straight-sided domains are meshed
// exactly; disk/ball/annulus/shell boundary vertices land exactly on their
// circles and spheres. Cell count grows as O(n^dim).
SimplicialMesh generate_mesh(const DomainSpec& spec, int n);

} // namespace beltlab::geometry
