#pragma once

#include <string>

#include "beltlab/geometry/mesh.hpp"

namespace beltlab::geometry {

class MeshFormatError : public Error {
public:
    MeshFormatError(const std::string& what, int line)
        : Error("mesh file line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

// ASCII line-oriented format:
//   # comment lines (a "# tag <descriptor>" comment round-trips domain_tag)
//   mesh <dim> <nv> <nc> <nbf>
//   nv coordinate lines, nc cell index lines, nbf boundary facet index lines
// Coordinates are written with shortest round-trip formatting, so
// write -> read reproduces every field bit-for-bit. Normals are recomputed on
// read, never stored. Validation failures name the offending line.
void write_mesh(const SimplicialMesh& mesh, const std::string& path);
SimplicialMesh read_mesh(const std::string& path);

} // namespace beltlab::geometry
