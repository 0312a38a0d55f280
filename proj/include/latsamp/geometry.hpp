#pragma once

// Exact measure-theoretic geometry on half-open rational boxes, bands (finite
// disjoint unions of boxes) and parallelotopes (affine images of boxes).
//
// Half-open boxes make touching pieces measure-disjoint, so every "almost
// everywhere" condition in the decision procedures becomes a statement about
// open interiors, decided by exact rational LP. Volumes are only ever computed
// for boxes.

#include "latsamp/linalg.hpp"
#include "latsamp/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace latsamp {

// Half-open product  prod_i [lower_i, upper_i).  Requires lower_i < upper_i.
struct Box {
    RatVec lower;
    RatVec upper;

    Box() = default;
    Box(RatVec lo, RatVec hi);

    std::size_t dim() const { return lower.size(); }
    Rat volume() const;
    bool contains(const RatVec& x) const;  // half-open membership
    Box translated(const RatVec& v) const;
    std::optional<Box> intersected(const Box& o) const;

    bool operator==(const Box& o) const { return lower == o.lower && upper == o.upper; }
};

// Finite disjoint union of boxes in canonical form: grid-split along every
// endpoint hyperplane, re-merged axis by axis, then sorted lexicographically.
// Two bands with equal indicator functions canonicalize identically; the
// constructor accepts overlapping boxes (their union is taken).
class Band {
public:
    explicit Band(std::size_t dim) : dim_(dim) {}
    Band(std::size_t dim, std::vector<Box> boxes);

    std::size_t dim() const { return dim_; }
    const std::vector<Box>& boxes() const { return boxes_; }
    bool empty() const { return boxes_.empty(); }
    Rat measure() const;
    bool contains(const RatVec& x) const;

    // Closed hull [min lower, max upper]; only valid for a nonempty band.
    std::pair<RatVec, RatVec> bounding_box() const;

    bool operator==(const Band& o) const { return dim_ == o.dim_ && boxes_ == o.boxes_; }

private:
    std::size_t dim_;
    std::vector<Box> boxes_;  // canonical
};

Rat measure(const Band& b);
Band translate(const Band& b, const RatVec& v);
Band intersect(const Band& a, const Band& b);
Band band_union(const Band& a, const Band& b);

// Convex polytope as an exact half-space intersection  n_i . x <= c_i.
struct HPolytope {
    std::vector<RatVec> normals;
    RatVec offsets;

    std::size_t dim() const { return normals.empty() ? 0 : normals[0].size(); }
    void add_constraint(RatVec n, Rat c);
    void append(const HPolytope& o);
    HPolytope translated(const RatVec& v) const;
};

// Affine image  M * box + shift  of a half-open box under an invertible
// rational matrix, kept both as generator and as 2d half-space constraints.
struct Parallelotope {
    RatMat matrix;
    Box box;
    RatVec shift;
    HPolytope halfspaces;

    Parallelotope(RatMat m, Box b, RatVec v);

    std::size_t dim() const { return box.dim(); }
    Rat volume() const;
    Parallelotope translated(const RatVec& v) const;
    std::pair<RatVec, RatVec> bounding_box() const;  // closed hull via corners
};

std::vector<Parallelotope> linear_image(const Band& b, const RatMat& M, const RatVec& v);

// LP slack test: maximize t subject to n_i.x + t <= c_i.  The interior is
// nonempty iff the optimum is positive.
Rat max_interior_slack(const HPolytope& h);
bool interior_nonempty(const HPolytope& h);
bool interior_overlap(const Parallelotope& p, const Parallelotope& q);
bool interior_overlap(const HPolytope& p, const HPolytope& q);

// All k in Z^d with interior_overlap(p, q + k), found by scanning integer
// points of the bounding box of p - q.  Lexicographically sorted.
std::vector<RatVec> overlap_translates(const Parallelotope& p, const Parallelotope& q);
std::vector<RatVec> overlap_translates(const std::vector<Parallelotope>& ps,
                                       const std::vector<Parallelotope>& qs);

// Integer points z with M z in the closed box [lo, hi], enumerated exactly.
std::vector<RatVec> integer_points_in_preimage(const RatMat& M, const RatVec& lo,
                                               const RatVec& hi);

// Monte Carlo estimate of the intersection volume of two parallelotopes, for
// human-readable reports only; verdicts never use it.
double approx_intersection_volume(const Parallelotope& p, const Parallelotope& q,
                                  unsigned long samples, unsigned long seed);

}  // namespace latsamp
