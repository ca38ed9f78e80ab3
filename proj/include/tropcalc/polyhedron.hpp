#pragma once

#include "tropcalc/lattice.hpp"
#include "tropcalc/lp.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tc {

// a.x <= b (or = b for equalities); a integral.
struct HalfSpace {
    IVec a;
    Rat b;
    bool operator==(const HalfSpace& o) const { return a == o.a && b == o.b; }
};

struct BoundingBox {
    Vec lo, hi;
    std::vector<bool> lo_inf, hi_inf;
    bool overlaps(const BoundingBox& o) const;
};

// Integral R-affine polyhedron in Q^r. Immutable; copies share state.
class Polyhedron {
public:
    Polyhedron();  // empty subset of R^0

    static Polyhedron make(int r, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs = {});
    static Polyhedron whole(int r);
    static Polyhedron point(const Vec& x);
    static Polyhedron empty_set(int r);
    // conv(points) + cone(rays) + span(lineality)
    static Polyhedron from_generators(int r, const std::vector<Vec>& points, const std::vector<Vec>& rays = {},
                                      const std::vector<Vec>& lineality = {});

    int ambient_rank() const;
    bool empty() const;
    int dim() const;
    bool bounded() const;

    const Vec& relint_point() const;
    const Vec& origin() const;           // canonical point of the affine hull
    const IntMat& basis() const;         // r x dim, columns a canonical basis of N_sigma
    const IntMat& completion() const;    // W unimodular, W * basis == [I; 0]
    Lattice lattice() const;

    const std::vector<HalfSpace>& hull_eqs() const;     // canonical
    const std::vector<HalfSpace>& facet_ineqs() const;  // irredundant, canonical, sorted
    const std::vector<Vec>& vertices() const;
    const std::vector<Vec>& rays() const;
    const std::vector<Vec>& lineality() const;
    const BoundingBox& bbox() const;
    const std::string& key() const;

    // Facets in the order of facet_ineqs().
    const std::vector<Polyhedron>& facets() const;
    std::vector<Polyhedron> faces() const;  // all nonempty faces, including *this

    bool contains(const Vec& x) const;
    bool contains(const Polyhedron& o) const;
    bool in_relint(const Vec& x) const;
    bool meets(const Polyhedron& o) const;
    Polyhedron intersect(const Polyhedron& o) const;
    Polyhedron with(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs = {}) const;

    // Sign pattern of a.x - b over the polyhedron: bit 1 when some point is below, bit 2 when above.
    int side(const Vec& a, const Rat& b) const;

    Vec to_local(const Vec& x) const;    // first dim rows of W applied to x - origin
    Vec from_local(const Vec& y) const;  // origin + basis * y

    std::vector<Constraint> constraints() const;  // facet ineqs followed by hull eqs
    std::vector<Constraint> ineq_constraints() const;
    std::vector<Constraint> eq_constraints() const;

    bool operator==(const Polyhedron& o) const { return key() == o.key(); }
    bool operator!=(const Polyhedron& o) const { return !(*this == o); }

    struct Impl;

private:
    explicit Polyhedron(std::shared_ptr<Impl> p) : p_(std::move(p)) {}
    std::shared_ptr<Impl> p_;
};

std::string describe(const Polyhedron& P);

// Double description: extreme rays of the pointed cone {u : C u <= 0}.
std::vector<Vec> extreme_rays(const std::vector<Vec>& C, int n);

// x is a face of P (the empty set counts)
bool is_face(const Polyhedron& P, const Polyhedron& x);

// Primitive integral normal omega in N_sigma pointing from the facet tau into sigma.
IVec normal_vector(const Polyhedron& sigma, const Polyhedron& tau);

}  // namespace tc
