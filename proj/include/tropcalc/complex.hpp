#pragma once

#include "tropcalc/polyhedron.hpp"

#include <vector>

namespace tc {

struct Complex {
    int ambient_rank = 0;
    std::vector<Polyhedron> cells;  // face-closed, deduplicated

    std::vector<Polyhedron> maximal() const;
    bool pure() const;
    bool contains_cell(const Polyhedron& P) const;
};

Complex face_closure(int r, const std::vector<Polyhedron>& cells);
// Pairwise intersections are faces of both cells.
bool intersects_properly(const Complex& C);

// Cuts every cell by the hyperplanes of the cells it meets until all pairwise
// intersections are common faces. Returns the pieces of each input cell.
std::vector<std::vector<Polyhedron>> subdivide(const std::vector<Polyhedron>& cells);

enum class RefineMode { Union, Intersection };
Complex common_refinement(const Complex& a, const Complex& b, RefineMode mode = RefineMode::Union);

// x -> lin.x + c
struct AffineForm {
    IVec lin;
    Rat c;
    Rat eval(const Vec& x) const;
};

struct PLDecomposition {
    Complex complex;
    std::vector<Polyhedron> regions;  // maximal cells
    std::vector<int> labels;          // attaining form per region
};
PLDecomposition decomposition_of_pl(const std::vector<AffineForm>& forms, bool is_max);

}  // namespace tc
