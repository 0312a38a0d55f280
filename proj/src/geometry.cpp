#include "latsamp/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace latsamp {
namespace {

void for_each_multi_index(const std::vector<std::size_t>& dims,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(dims.size(), 0);
    while (true) {
        fn(idx);
        std::size_t a = 0;
        while (a < dims.size()) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
            ++a;
        }
        if (a == dims.size()) break;
        if (dims.empty()) break;
    }
}

// ---------------------------------------------------------------------------
// Exact two-phase simplex (Bland's rule) over mpq.
// Solves: maximize cost . x  s.t.  rows x = rhs, x >= 0.
// ---------------------------------------------------------------------------
struct SimplexResult {
    enum Status { Optimal, Infeasible, Unbounded } status;
    Rat value;
};

class Simplex {
public:
    Simplex(std::vector<RatVec> rows, RatVec rhs, std::size_t nvars)
        : m_(rows.size()), n_(nvars), a_(std::move(rows)), rhs_(std::move(rhs)) {}

    SimplexResult maximize(const RatVec& cost, const Rat* stop_above = nullptr) {
        // Phase 1: artificial basis.
        for (std::size_t i = 0; i < m_; ++i) {
            if (rhs_[i] < 0) {
                for (auto& v : a_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
        }
        std::size_t total = n_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            a_[i].resize(total, Rat(0));
            a_[i][n_ + i] = 1;
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;

        RatVec phase1(total, Rat(0));
        for (std::size_t j = n_; j < total; ++j) phase1[j] = -1;
        Rat obj = run(phase1, total, /*ban_from=*/total);
        if (obj < 0) return {SimplexResult::Infeasible, Rat(0)};

        // Pivot remaining artificials out (or drop their rows).
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t c = 0;
            while (c < n_ && a_[i][c] == 0) ++c;
            if (c < n_) pivot(i, c);
        }

        RatVec cost2(total, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) cost2[j] = cost[j];
        bool unbounded = false;
        Rat val = run(cost2, total, /*ban_from=*/n_, &unbounded, stop_above);
        if (unbounded) return {SimplexResult::Unbounded, Rat(0)};
        return {SimplexResult::Optimal, val};
    }

private:
    void pivot(std::size_t r, std::size_t c) {
        Rat piv = a_[r][c];
        for (auto& v : a_[r]) v /= piv;
        rhs_[r] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || a_[i][c] == 0) continue;
            Rat f = a_[i][c];
            for (std::size_t j = 0; j < a_[i].size(); ++j) a_[i][j] -= f * a_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = c;
    }

    Rat run(RatVec red, std::size_t total, std::size_t ban_from, bool* unbounded = nullptr,
            const Rat* stop_above = nullptr) {
        // Canonicalize the reduced-cost row against the current basis.
        Rat obj(0);
        RatVec cost = red;
        for (std::size_t i = 0; i < m_; ++i) {
            Rat cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < total; ++j) red[j] -= cb * a_[i][j];
            obj += cb * rhs_[i];
        }
        long iters = 0;
        while (true) {
            if (stop_above && obj > *stop_above) return obj;
            // Dantzig's rule first, Bland's rule after a while to guarantee
            // termination on degenerate tableaus.
            const bool bland = ++iters > 200;
            std::size_t enter = total;
            for (std::size_t j = 0; j < ban_from && j < total; ++j) {
                if (!(red[j] > 0)) continue;
                if (enter == total || (!bland && red[j] > red[enter])) enter = j;
                if (bland) break;
            }
            if (enter == total) break;
            std::size_t leave = m_;
            Rat best(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (a_[i][enter] <= 0) continue;
                Rat ratio = rhs_[i] / a_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) {
                if (unbounded) *unbounded = true;
                return Rat(0);
            }
            Rat f = red[enter];
            pivot(leave, enter);
            for (std::size_t j = 0; j < total; ++j) red[j] -= f * a_[leave][j];
            obj += f * rhs_[leave];
        }
        return obj;
    }

    std::size_t m_, n_;
    std::vector<RatVec> a_;
    RatVec rhs_;
    std::vector<std::size_t> basis_;
};

// Canonical band form: grid split + axiswise re-merge + lexicographic sort.
std::vector<Box> canonicalize_boxes(std::size_t dim, std::vector<Box> boxes) {
    if (boxes.empty()) return {};
    std::vector<std::vector<Rat>> cuts(dim);
    for (const auto& b : boxes) {
        for (std::size_t a = 0; a < dim; ++a) {
            cuts[a].push_back(b.lower[a]);
            cuts[a].push_back(b.upper[a]);
        }
    }
    for (auto& c : cuts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }

    std::vector<Box> cells;
    for (const auto& b : boxes) {
        std::vector<std::vector<std::size_t>> spans(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t i = 0; i + 1 < cuts[a].size(); ++i)
                if (cuts[a][i] >= b.lower[a] && cuts[a][i + 1] <= b.upper[a])
                    spans[a].push_back(i);
        }
        std::vector<std::size_t> counts(dim);
        for (std::size_t a = 0; a < dim; ++a) counts[a] = spans[a].size();
        for_each_multi_index(counts, [&](const std::vector<std::size_t>& idx) {
            RatVec lo(dim), hi(dim);
            for (std::size_t a = 0; a < dim; ++a) {
                lo[a] = cuts[a][spans[a][idx[a]]];
                hi[a] = cuts[a][spans[a][idx[a]] + 1];
            }
            cells.emplace_back(std::move(lo), std::move(hi));
        });
    }

    auto lex = [](const Box& x, const Box& y) {
        if (x.lower != y.lower) return lex_less(x.lower, y.lower);
        return lex_less(x.upper, y.upper);
    };
    std::sort(cells.begin(), cells.end(), lex);
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t axis = dim; axis-- > 0;) {
            auto key_less = [&](const Box& x, const Box& y) {
                for (std::size_t a = 0; a < dim; ++a) {
                    if (a == axis) continue;
                    int c = cmp(x.lower[a], y.lower[a]);
                    if (c != 0) return c < 0;
                    c = cmp(x.upper[a], y.upper[a]);
                    if (c != 0) return c < 0;
                }
                return x.lower[axis] < y.lower[axis];
            };
            auto key_eq = [&](const Box& x, const Box& y) {
                for (std::size_t a = 0; a < dim; ++a) {
                    if (a == axis) continue;
                    if (x.lower[a] != y.lower[a] || x.upper[a] != y.upper[a]) return false;
                }
                return true;
            };
            std::sort(cells.begin(), cells.end(), key_less);
            std::vector<Box> merged;
            for (auto& c : cells) {
                if (!merged.empty() && key_eq(merged.back(), c) &&
                    merged.back().upper[axis] == c.lower[axis]) {
                    merged.back().upper[axis] = c.upper[axis];
                    changed = true;
                } else {
                    merged.push_back(std::move(c));
                }
            }
            cells = std::move(merged);
        }
    }
    std::sort(cells.begin(), cells.end(), lex);
    return cells;
}

}  // namespace

// ---------------------------------------------------------------------------
// Box
// ---------------------------------------------------------------------------

Box::Box(RatVec lo, RatVec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) throw std::invalid_argument("Box: dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument("Box: lower must be strictly below upper");
}

Rat Box::volume() const {
    Rat v(1);
    for (std::size_t i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
    return v;
}

bool Box::contains(const RatVec& x) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] < lower[i] || x[i] >= upper[i]) return false;
    return true;
}

Box Box::translated(const RatVec& v) const { return Box(add(lower, v), add(upper, v)); }

std::optional<Box> Box::intersected(const Box& o) const {
    RatVec lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        lo[i] = std::max(lower[i], o.lower[i]);
        hi[i] = std::min(upper[i], o.upper[i]);
        if (!(lo[i] < hi[i])) return std::nullopt;
    }
    return Box(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// Band
// ---------------------------------------------------------------------------

Band::Band(std::size_t dim, std::vector<Box> boxes) : dim_(dim) {
    for (const auto& b : boxes)
        if (b.dim() != dim) throw std::invalid_argument("Band: box dimension mismatch");
    boxes_ = canonicalize_boxes(dim, std::move(boxes));
}

Rat Band::measure() const {
    Rat m(0);
    for (const auto& b : boxes_) m += b.volume();
    return m;
}

bool Band::contains(const RatVec& x) const {
    for (const auto& b : boxes_)
        if (b.contains(x)) return true;
    return false;
}

std::pair<RatVec, RatVec> Band::bounding_box() const {
    if (boxes_.empty()) throw std::logic_error("bounding_box of empty band");
    RatVec lo = boxes_[0].lower, hi = boxes_[0].upper;
    for (const auto& b : boxes_)
        for (std::size_t i = 0; i < dim_; ++i) {
            lo[i] = std::min(lo[i], b.lower[i]);
            hi[i] = std::max(hi[i], b.upper[i]);
        }
    return {lo, hi};
}

Rat measure(const Band& b) { return b.measure(); }

Band translate(const Band& b, const RatVec& v) {
    std::vector<Box> out;
    out.reserve(b.boxes().size());
    for (const auto& x : b.boxes()) out.push_back(x.translated(v));
    return Band(b.dim(), std::move(out));
}

Band intersect(const Band& a, const Band& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("intersect: dimension mismatch");
    std::vector<Box> out;
    for (const auto& x : a.boxes())
        for (const auto& y : b.boxes())
            if (auto i = x.intersected(y)) out.push_back(*i);
    return Band(a.dim(), std::move(out));
}

Band band_union(const Band& a, const Band& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("band_union: dimension mismatch");
    std::vector<Box> out = a.boxes();
    out.insert(out.end(), b.boxes().begin(), b.boxes().end());
    return Band(a.dim(), std::move(out));
}

// ---------------------------------------------------------------------------
// HPolytope / Parallelotope
// ---------------------------------------------------------------------------

void HPolytope::add_constraint(RatVec n, Rat c) {
    normals.push_back(std::move(n));
    offsets.push_back(std::move(c));
}

void HPolytope::append(const HPolytope& o) {
    normals.insert(normals.end(), o.normals.begin(), o.normals.end());
    offsets.insert(offsets.end(), o.offsets.begin(), o.offsets.end());
}

HPolytope HPolytope::translated(const RatVec& v) const {
    HPolytope t = *this;
    for (std::size_t i = 0; i < normals.size(); ++i) t.offsets[i] += dot(normals[i], v);
    return t;
}

Parallelotope::Parallelotope(RatMat m, Box b, RatVec v)
    : matrix(std::move(m)), box(std::move(b)), shift(std::move(v)) {
    const std::size_t d = box.dim();
    RatMat inv = matrix.inverse();
    for (std::size_t i = 0; i < d; ++i) {
        RatVec r = inv.row(i);
        Rat rv = dot(r, shift);
        halfspaces.add_constraint(r, box.upper[i] + rv);
        halfspaces.add_constraint(neg(r), -(box.lower[i] + rv));
    }
}

Rat Parallelotope::volume() const { return abs(matrix.determinant()) * box.volume(); }

Parallelotope Parallelotope::translated(const RatVec& v) const {
    return Parallelotope(matrix, box, add(shift, v));
}

std::pair<RatVec, RatVec> Parallelotope::bounding_box() const {
    const std::size_t d = dim();
    RatVec lo, hi;
    std::vector<std::size_t> two(d, 2);
    bool first = true;
    for_each_multi_index(two, [&](const std::vector<std::size_t>& idx) {
        RatVec u(d);
        for (std::size_t i = 0; i < d; ++i) u[i] = idx[i] ? box.upper[i] : box.lower[i];
        RatVec x = add(matrix.apply(u), shift);
        if (first) {
            lo = hi = x;
            first = false;
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                lo[i] = std::min(lo[i], x[i]);
                hi[i] = std::max(hi[i], x[i]);
            }
        }
    });
    return {lo, hi};
}

std::vector<Parallelotope> linear_image(const Band& b, const RatMat& M, const RatVec& v) {
    if (M.determinant() == 0) throw std::domain_error("linear_image: singular matrix");
    std::vector<Parallelotope> out;
    out.reserve(b.boxes().size());
    for (const auto& box : b.boxes()) out.emplace_back(M, box, v);
    return out;
}

// ---------------------------------------------------------------------------
// Interior tests via exact LP
// ---------------------------------------------------------------------------

namespace {

// Keep one constraint per distinct normal (the tightest offset). Intersections
// built from translated copies of the same parallelotope repeat normals a lot.
HPolytope dedup_constraints(const HPolytope& h) {
    HPolytope out;
    std::map<RatVec, Rat, bool (*)(const RatVec&, const RatVec&)> best(lex_less);
    for (std::size_t i = 0; i < h.normals.size(); ++i) {
        auto [it, fresh] = best.emplace(h.normals[i], h.offsets[i]);
        if (!fresh && h.offsets[i] < it->second) it->second = h.offsets[i];
    }
    for (auto& [n, c] : best) out.add_constraint(n, c);
    return out;
}

Simplex slack_lp(const HPolytope& h) {
    const std::size_t d = h.dim();
    const std::size_t m = h.normals.size();
    // Free variables x (d) and t, split into positive parts, plus slacks.
    const std::size_t nvars = 2 * (d + 1) + m;
    std::vector<RatVec> rows(m, RatVec(nvars, Rat(0)));
    RatVec rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            rows[i][2 * j] = h.normals[i][j];
            rows[i][2 * j + 1] = -h.normals[i][j];
        }
        rows[i][2 * d] = 1;
        rows[i][2 * d + 1] = -1;
        rows[i][2 * d + 2 + i] = 1;
        rhs[i] = h.offsets[i];
    }
    return Simplex(std::move(rows), std::move(rhs), nvars);
}

RatVec slack_cost(const HPolytope& h) {
    const std::size_t d = h.dim();
    RatVec cost(2 * (d + 1) + h.normals.size(), Rat(0));
    cost[2 * d] = 1;
    cost[2 * d + 1] = -1;
    return cost;
}

}  // namespace

Rat max_interior_slack(const HPolytope& h) {
    HPolytope g = dedup_constraints(h);
    Simplex s = slack_lp(g);
    SimplexResult r = s.maximize(slack_cost(g));
    if (r.status == SimplexResult::Infeasible)
        throw std::logic_error("slack LP cannot be infeasible");
    if (r.status == SimplexResult::Unbounded)
        throw std::domain_error("interior slack unbounded: polytope not bounded");
    return r.value;
}

bool interior_nonempty(const HPolytope& h) {
    // Only the sign of the slack matters; stop as soon as it turns positive.
    HPolytope g = dedup_constraints(h);
    Simplex s = slack_lp(g);
    const Rat zero(0);
    SimplexResult r = s.maximize(slack_cost(g), &zero);
    if (r.status == SimplexResult::Unbounded)
        throw std::domain_error("interior slack unbounded: polytope not bounded");
    return r.value > 0;
}

bool interior_overlap(const HPolytope& p, const HPolytope& q) {
    HPolytope both = p;
    both.append(q);
    return interior_nonempty(both);
}

bool interior_overlap(const Parallelotope& p, const Parallelotope& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("interior_overlap: dimension mismatch");
    // Cheap reject on bounding boxes.
    auto [pl, pu] = p.bounding_box();
    auto [ql, qu] = q.bounding_box();
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (pu[i] <= ql[i] || qu[i] <= pl[i]) return false;
    return interior_overlap(p.halfspaces, q.halfspaces);
}

std::vector<RatVec> overlap_translates(const Parallelotope& p, const Parallelotope& q) {
    return overlap_translates(std::vector<Parallelotope>{p}, std::vector<Parallelotope>{q});
}

std::vector<RatVec> overlap_translates(const std::vector<Parallelotope>& ps,
                                       const std::vector<Parallelotope>& qs) {
    std::vector<RatVec> found;
    for (const auto& p : ps) {
        auto [pl, pu] = p.bounding_box();
        for (const auto& q : qs) {
            auto [ql, qu] = q.bounding_box();
            const std::size_t d = p.dim();
            std::vector<Int> lo(d), hi(d);
            std::vector<std::size_t> counts(d);
            for (std::size_t i = 0; i < d; ++i) {
                lo[i] = ceil_int(pl[i] - qu[i]);
                hi[i] = floor_int(pu[i] - ql[i]);
                Int n = hi[i] - lo[i] + 1;
                if (n <= 0) {
                    counts.clear();
                    break;
                }
                counts[i] = static_cast<std::size_t>(to_long(n));
            }
            if (counts.size() != d) continue;
            for_each_multi_index(counts, [&](const std::vector<std::size_t>& idx) {
                RatVec k(d);
                for (std::size_t i = 0; i < d; ++i) k[i] = Rat(lo[i] + long(idx[i]));
                if (interior_overlap(p, q.translated(k))) found.push_back(k);
            });
        }
    }
    std::sort(found.begin(), found.end(), lex_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<RatVec> integer_points_in_preimage(const RatMat& M, const RatVec& lo,
                                               const RatVec& hi) {
    const std::size_t d = M.dim();
    RatMat inv = M.inverse();
    RatVec zlo, zhi;
    std::vector<std::size_t> two(d, 2);
    bool first = true;
    for_each_multi_index(two, [&](const std::vector<std::size_t>& idx) {
        RatVec c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = idx[i] ? hi[i] : lo[i];
        RatVec z = inv.apply(c);
        if (first) {
            zlo = zhi = z;
            first = false;
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                zlo[i] = std::min(zlo[i], z[i]);
                zhi[i] = std::max(zhi[i], z[i]);
            }
        }
    });
    std::vector<Int> zl(d);
    std::vector<std::size_t> counts(d);
    for (std::size_t i = 0; i < d; ++i) {
        zl[i] = ceil_int(zlo[i]);
        Int n = floor_int(zhi[i]) - zl[i] + 1;
        if (n <= 0) return {};
        counts[i] = static_cast<std::size_t>(to_long(n));
    }
    std::vector<RatVec> out;
    for_each_multi_index(counts, [&](const std::vector<std::size_t>& idx) {
        RatVec z(d);
        for (std::size_t i = 0; i < d; ++i) z[i] = Rat(zl[i] + long(idx[i]));
        RatVec y = M.apply(z);
        for (std::size_t i = 0; i < d; ++i)
            if (y[i] < lo[i] || y[i] > hi[i]) return;
        out.push_back(std::move(z));
    });
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

double approx_intersection_volume(const Parallelotope& p, const Parallelotope& q,
                                  unsigned long samples, unsigned long seed) {
    auto [lo, hi] = p.bounding_box();
    const std::size_t d = p.dim();
    std::vector<double> l(d), u(d);
    for (std::size_t i = 0; i < d; ++i) {
        l[i] = to_double(lo[i]);
        u[i] = to_double(hi[i]);
    }
    auto inside = [&](const HPolytope& h, const std::vector<double>& x) {
        for (std::size_t i = 0; i < h.normals.size(); ++i) {
            double s = 0;
            for (std::size_t j = 0; j < d; ++j) s += to_double(h.normals[i][j]) * x[j];
            if (s > to_double(h.offsets[i])) return false;
        }
        return true;
    };
    std::mt19937_64 rng(seed);
    auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    unsigned long hits = 0;
    std::vector<double> x(d);
    for (unsigned long s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < d; ++i) x[i] = l[i] + (u[i] - l[i]) * unit();
        if (inside(p.halfspaces, x) && inside(q.halfspaces, x)) ++hits;
    }
    double bbox_vol = 1.0;
    for (std::size_t i = 0; i < d; ++i) bbox_vol *= u[i] - l[i];
    return bbox_vol * double(hits) / double(samples);
}

}  // namespace latsamp
