#pragma once

// Finite gluing models: finite sets X_i with shared overlap sets X_ij and
// injections iota^i_j : X_ij -> X_i.  Dually this is a family of function
// algebras B_i = Q^{X_i} with restriction epimorphisms pi^i_j, on which the
// cocycle condition, the iterated-pullback decomposition and every
// surjectivity claim are decidable exactly.  All dimension and rank
// computations are over exact rationals; set iterations follow sorted label
// order so witnesses and generated models are deterministic.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpk/diagram.hpp"
#include "mpk/matrix.hpp"

namespace mpk {

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LiftFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FiniteGluingModel {
    struct Overlap {
        std::vector<std::string> set;                             // sorted labels
        std::map<int, std::map<std::string, std::string>> into;  // component -> injection
    };

    std::vector<int> J;                            // sorted, size 2 or 3
    std::map<int, std::vector<std::string>> X;     // sorted labels per component
    std::map<std::pair<int, int>, Overlap> overlaps;  // key (i < j)

    const std::vector<std::string>& x(int i) const {
        auto it = X.find(i);
        if (it == X.end()) throw std::invalid_argument("model: no component " + std::to_string(i));
        return it->second;
    }
    const Overlap& over(int i, int j) const {
        auto it = overlaps.find(std::minmax(i, j));
        if (it == overlaps.end())
            throw std::invalid_argument("model: no overlap {" + std::to_string(i) + "," +
                                        std::to_string(j) + "}");
        return it->second;
    }
    // iota^i_j applied to an overlap element of {i,j}
    const std::string& iota(int i, int j, const std::string& e) const {
        const Overlap& o = over(i, j);
        auto f = o.into.find(i);
        if (f == o.into.end() || !f->second.count(e))
            throw std::invalid_argument("model: injection into " + std::to_string(i) +
                                        " undefined on " + e);
        return f->second.at(e);
    }

    void validate() const {
        if (J.size() != 2 && J.size() != 3)
            throw std::invalid_argument("model: index set must have two or three elements");
        if (!std::is_sorted(J.begin(), J.end()) ||
            std::adjacent_find(J.begin(), J.end()) != J.end())
            throw std::invalid_argument("model: index set must be strictly increasing");
        for (int i : J) {
            const auto& xs = x(i);
            if (!std::is_sorted(xs.begin(), xs.end()) ||
                std::adjacent_find(xs.begin(), xs.end()) != xs.end())
                throw std::invalid_argument("model: X" + std::to_string(i) +
                                            " must be sorted without duplicates");
        }
        for (std::size_t a = 0; a < J.size(); ++a)
            for (std::size_t b = a + 1; b < J.size(); ++b) {
                int i = J[a], j = J[b];
                const Overlap& o = over(i, j);
                if (!std::is_sorted(o.set.begin(), o.set.end()) ||
                    std::adjacent_find(o.set.begin(), o.set.end()) != o.set.end())
                    throw std::invalid_argument("model: overlap set must be sorted without duplicates");
                if (o.set.empty()) continue;  // the zero algebra; no injections to check
                for (int side : {i, j}) {
                    auto it = o.into.find(side);
                    if (it == o.into.end())
                        throw std::invalid_argument("model: overlap lacks an injection into " +
                                                    std::to_string(side));
                    std::set<std::string> seen;
                    if (it->second.size() != o.set.size())
                        throw std::invalid_argument("model: injection domain mismatch");
                    for (const auto& [e, tgt] : it->second) {
                        if (!std::binary_search(o.set.begin(), o.set.end(), e))
                            throw std::invalid_argument("model: injection defined off the overlap set");
                        const auto& xs = x(side);
                        if (!std::binary_search(xs.begin(), xs.end(), tgt))
                            throw std::invalid_argument("model: injection target " + tgt +
                                                        " is not in X" + std::to_string(side));
                        if (!seen.insert(tgt).second)
                            throw std::invalid_argument("model: map into X" + std::to_string(side) +
                                                        " is not injective (" + tgt + " hit twice)");
                    }
                }
            }
    }

    // overlaps whose set is empty (permitted; the dual algebra is zero)
    std::vector<std::string> degenerate_overlaps() const {
        std::vector<std::string> out;
        for (const auto& [key, o] : overlaps)
            if (o.set.empty())
                out.push_back(std::to_string(key.first) + std::to_string(key.second));
        return out;
    }
};

// ---------------------------------------------------------------------------
// Glued space: the colimit set (disjoint union of the X_i modulo the overlap
// identifications), computed by union-find.  Its size equals the dimension
// of the multi-pullback function algebra.

struct GluedSpace {
    using Point = std::pair<int, std::string>;
    std::vector<std::vector<Point>> classes;  // members sorted; classes sorted by first member
    std::map<Point, int> class_of;

    int size() const { return static_cast<int>(classes.size()); }
    bool class_meets(int cls, int component) const {
        for (const auto& p : classes[static_cast<std::size_t>(cls)])
            if (p.first == component) return true;
        return false;
    }
};

inline GluedSpace glued_space(const FiniteGluingModel& m) {
    std::vector<GluedSpace::Point> points;
    for (int i : m.J)
        for (const auto& l : m.x(i)) points.push_back({i, l});
    std::map<GluedSpace::Point, int> index;
    for (std::size_t k = 0; k < points.size(); ++k) index[points[k]] = static_cast<int>(k);

    std::vector<int> parent(points.size());
    for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };
    for (const auto& [key, o] : m.overlaps)
        for (const auto& e : o.set)
            unite(index.at({key.first, m.iota(key.first, key.second, e)}),
                  index.at({key.second, m.iota(key.second, key.first, e)}));

    std::map<int, std::vector<GluedSpace::Point>> buckets;
    for (std::size_t k = 0; k < points.size(); ++k)
        buckets[find(static_cast<int>(k))].push_back(points[k]);
    GluedSpace gs;
    for (auto& [root, members] : buckets) {
        std::sort(members.begin(), members.end());
        gs.classes.push_back(members);
    }
    std::sort(gs.classes.begin(), gs.classes.end());
    for (std::size_t c = 0; c < gs.classes.size(); ++c)
        for (const auto& p : gs.classes[c]) gs.class_of[p] = static_cast<int>(c);
    return gs;
}

// ---------------------------------------------------------------------------
// Cocycle condition.

struct CocycleWitness {
    int clause = 0;                 // 1 or 2
    std::array<int, 3> triple{};    // (i, j, k)
    std::string element;
    std::string detail;
};

struct CocycleReport {
    bool ok = true;
    std::optional<CocycleWitness> witness;
};

namespace fmdetail {

// D^i_{jk} = elements of X_ij whose image in X_i lies in the image of
// iota^i_k (the k-overlap seen from inside X_ij via side i)
inline std::vector<std::string> d_set(const FiniteGluingModel& m, int i, int j, int k) {
    std::set<std::string> im_k;
    for (const auto& e : m.over(i, k).set) im_k.insert(m.iota(i, k, e));
    std::vector<std::string> out;
    for (const auto& e : m.over(i, j).set)
        if (im_k.count(m.iota(i, j, e))) out.push_back(e);
    return out;
}

// psi^{ij}_k : Y^i_{jk} -> Y^j_{ik}, y |-> iota^j_i((iota^i_j)^{-1}(y));
// defined on images of iota^i_j
inline std::optional<std::string> psi(const FiniteGluingModel& m, int i, int j,
                                      const std::string& y) {
    const auto& o = m.over(i, j);
    for (const auto& e : o.set)
        if (m.iota(i, j, e) == y) return m.iota(j, i, e);
    return std::nullopt;
}

}  // namespace fmdetail

// Clause 1: the two realizations of each pushed-forward kernel agree, i.e.
// D^i_{jk} = D^j_{ik} inside the shared set X_ij.  Clause 2: the induced
// triple-overlap bijections compose, checked pointwise on the dual maps.
// For two indices the condition is vacuous.
inline CocycleReport cocycle_check(const FiniteGluingModel& m) {
    CocycleReport rep;
    if (m.J.size() < 3) return rep;
    const auto& J = m.J;
    auto third = [&](int i, int j) {
        for (int k : J)
            if (k != i && k != j) return k;
        throw std::logic_error("third index");
    };
    for (int i : J)
        for (int j : J) {
            if (i == j) continue;
            int k = third(i, j);
            auto di = fmdetail::d_set(m, i, j, k);
            auto dj = fmdetail::d_set(m, j, i, k);
            if (di != dj) {
                std::vector<std::string> sym;
                std::set_symmetric_difference(di.begin(), di.end(), dj.begin(), dj.end(),
                                              std::back_inserter(sym));
                rep.ok = false;
                rep.witness = CocycleWitness{
                    1,
                    {i, j, k},
                    sym.empty() ? "" : sym.front(),
                    "pushed-forward kernels differ in X" + std::to_string(std::min(i, j)) +
                        std::to_string(std::max(i, j)) + ": sides " + std::to_string(i) + " and " +
                        std::to_string(j) + " disagree at overlap element '" +
                        (sym.empty() ? "?" : sym.front()) + "'"};
                return rep;
            }
        }
    // clause 2 needs clause 1 (the psi maps land where claimed only then)
    for (int i : J)
        for (int j : J) {
            if (i == j) continue;
            int k = third(i, j);
            // Y^i_{jk}: image of iota^i_j meeting image of iota^i_k
            std::set<std::string> im_j, im_k;
            for (const auto& e : m.over(i, j).set) im_j.insert(m.iota(i, j, e));
            for (const auto& e : m.over(i, k).set) im_k.insert(m.iota(i, k, e));
            for (const auto& y : im_j) {
                if (!im_k.count(y)) continue;
                auto lhs = fmdetail::psi(m, i, k, y);
                auto mid = fmdetail::psi(m, i, j, y);
                std::optional<std::string> rhs;
                if (mid) rhs = fmdetail::psi(m, j, k, *mid);
                if (!lhs || !rhs || *lhs != *rhs) {
                    rep.ok = false;
                    rep.witness = CocycleWitness{
                        2,
                        {i, j, k},
                        y,
                        "composed overlap bijection via " + std::to_string(j) +
                            " disagrees with the direct one at '" + y + "' in X" +
                            std::to_string(i) + " (direct " + (lhs ? *lhs : "undefined") +
                            ", composed " + (rhs ? *rhs : "undefined") + ")"};
                    return rep;
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Linear realizations.

namespace fmdetail {

inline int pos(const std::vector<std::string>& v, const std::string& l) {
    auto it = std::lower_bound(v.begin(), v.end(), l);
    if (it == v.end() || *it != l) throw std::logic_error("label lookup failed: " + l);
    return static_cast<int>(it - v.begin());
}

inline int pos(const std::vector<int>& v, int c) {
    auto it = std::lower_bound(v.begin(), v.end(), c);
    if (it == v.end() || *it != c) throw std::logic_error("class lookup failed");
    return static_cast<int>(it - v.begin());
}

// coordinate offsets of the blocks Q^{X_i} inside the ambient product
inline std::map<int, int> offsets(const FiniteGluingModel& m, int& total) {
    std::map<int, int> off;
    total = 0;
    for (int i : m.J) {
        off[i] = total;
        total += static_cast<int>(m.x(i).size());
    }
    return off;
}

// rows: one agreement constraint per overlap element, f_i(iota(e)) = f_j(iota(e))
inline RatMatrix multipullback_constraints(const FiniteGluingModel& m) {
    int total = 0;
    auto off = offsets(m, total);
    int nrows = 0;
    for (const auto& [key, o] : m.overlaps) nrows += static_cast<int>(o.set.size());
    RatMatrix a(nrows, total);
    int r = 0;
    for (const auto& [key, o] : m.overlaps) {
        auto [i, j] = key;
        for (const auto& e : o.set) {
            a(r, off.at(i) + pos(m.x(i), m.iota(i, j, e))) = 1;
            a(r, off.at(j) + pos(m.x(j), m.iota(j, i, e))) -= 1;
            ++r;
        }
    }
    return a;
}

inline RatMatrix select_rows(const RatMatrix& m, int first, int count) {
    RatMatrix s(count, m.cols());
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < m.cols(); ++j) s(i, j) = m(first + i, j);
    return s;
}

}  // namespace fmdetail

// Dimension of the multi-pullback algebra, by the rank of the exact rational
// constraint system.  The union-find value |glued_space| is the independent
// oracle the harness compares against.
inline int multipullback_dim(const FiniteGluingModel& m) {
    RatMatrix a = fmdetail::multipullback_constraints(m);
    return a.cols() - rat_rank(a);
}

// Lemma-level rebracketing: the iterated pullback ((B_1, B_2 over B_12),
// then against B_3 over the pair of side overlaps) carves out the same
// subspace as the one-shot multi-pullback.  Checked by rank equivalence of
// the two constraint systems in the shared ambient coordinates.
inline bool verify_rebracketing(const FiniteGluingModel& m) {
    if (m.J.size() != 3) throw PreconditionViolated("rebracketing check needs three indices");
    RatMatrix direct = fmdetail::multipullback_constraints(m);

    int total = 0;
    auto off = fmdetail::offsets(m, total);
    const int i = m.J[0], j = m.J[1], k = m.J[2];
    std::vector<std::array<int, 2>> pair_order{{i, j}, {i, k}, {j, k}};
    int nrows = 0;
    for (auto [a, b] : pair_order) nrows += static_cast<int>(m.over(a, b).set.size());
    RatMatrix nested(nrows, total);
    int r = 0;
    // inner pullback P1: agreement of f_i and f_j over X_ij
    for (const auto& e : m.over(i, j).set) {
        nested(r, off.at(i) + fmdetail::pos(m.x(i), m.iota(i, j, e))) = 1;
        nested(r, off.at(j) + fmdetail::pos(m.x(j), m.iota(j, i, e))) -= 1;
        ++r;
    }
    // outer pullback: gamma(f_i, f_j) = delta(f_k) coordinatewise
    for (auto [a, b] : {std::pair{i, k}, std::pair{j, k}})
        for (const auto& e : m.over(a, b).set) {
            nested(r, off.at(a) + fmdetail::pos(m.x(a), m.iota(a, b, e))) = 1;
            nested(r, off.at(b) + fmdetail::pos(m.x(b), m.iota(b, a, e))) -= 1;
            ++r;
        }
    int rd = rat_rank(direct), rn = rat_rank(nested);
    return rd == rn && rat_rank(vstack(direct, nested)) == rd &&
           direct.cols() - rd == nested.cols() - rn;
}

// ---------------------------------------------------------------------------
// Quotient presentations (the canonical-surjection picture).

// (a) every restriction pi_i : B^pi -> B_i is onto; (b) dim B^pi/ker pi_i
// equals |X_i|; (c) dim B^pi/(ker pi_i + ker pi_j) equals |X_ij|; (d) the
// family of canonical surjections rebuilds a multi-pullback of the same
// dimension.
inline bool verify_quotient_isos(const FiniteGluingModel& m) {
    if (!cocycle_check(m).ok)
        throw PreconditionViolated("quotient presentations need the cocycle condition");
    int total = 0;
    auto off = fmdetail::offsets(m, total);
    RatMatrix constraints = fmdetail::multipullback_constraints(m);
    RatMatrix basis = rat_kernel_basis(constraints);  // columns span B^pi
    const int dim = basis.cols();

    std::map<int, RatMatrix> proj;  // pi_i on the basis: |X_i| x dim
    for (int i : m.J) {
        int n = static_cast<int>(m.x(i).size());
        RatMatrix p(n, dim);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < dim; ++c) p(r, c) = basis(off.at(i) + r, c);
        proj.emplace(i, std::move(p));
    }

    std::map<int, RatMatrix> ker_in_basis;  // ker pi_i in B^pi-basis coordinates
    for (int i : m.J) {
        int n = static_cast<int>(m.x(i).size());
        if (rat_rank(proj.at(i)) != n) return false;                      // (a)
        RatMatrix kb = rat_kernel_basis(proj.at(i));
        if (dim - kb.cols() != n) return false;                           // (b)
        ker_in_basis.emplace(i, std::move(kb));
    }
    for (const auto& [key, o] : m.overlaps) {
        auto [i, j] = key;
        int sum_dim = rat_rank(hstack(ker_in_basis.at(i), ker_in_basis.at(j)));
        if (dim - sum_dim != static_cast<int>(o.set.size())) return false;  // (c)
    }

    // (d): the canonical surjections B^pi/ker pi_i -> B^pi/(ker pi_i + ker pi_j)
    // realized on the images im pi_i; their multi-pullback must have dim B^pi
    int im_total = 0;
    std::map<int, int> im_off;
    for (int i : m.J) {
        im_off[i] = im_total;
        im_total += static_cast<int>(m.x(i).size());  // im pi_i = Q^{X_i} by (a)
    }
    int nrows = 0;
    for (const auto& [key, o] : m.overlaps) nrows += static_cast<int>(o.set.size());
    RatMatrix canon(nrows, im_total);
    int r = 0;
    for (const auto& [key, o] : m.overlaps) {
        auto [i, j] = key;
        for (const auto& e : o.set) {
            canon(r, im_off.at(i) + fmdetail::pos(m.x(i), m.iota(i, j, e))) = 1;
            canon(r, im_off.at(j) + fmdetail::pos(m.x(j), m.iota(j, i, e))) -= 1;
            ++r;
        }
    }
    return im_total - rat_rank(canon) == dim;
}

// ---------------------------------------------------------------------------
// The iterated quotient diagram, with every object realized on glued-space
// coordinates and every arrow materialized as a rational matrix.

namespace fmdetail {

struct TripleRealization {
    GluedSpace gs;
    std::vector<int> t1, t2, t3, t12, t13, t23, t123;  // class indices, ascending
    RatMatrix p1_basis, p2_basis, p_basis;             // pullback subspace bases
};

inline std::vector<int> classes_meeting(const GluedSpace& gs, std::vector<int> comps) {
    std::vector<int> out;
    for (int c = 0; c < gs.size(); ++c) {
        bool all = true;
        for (int i : comps) all = all && gs.class_meets(c, i);
        if (all) out.push_back(c);
    }
    return out;
}

inline RatMatrix agreement_rows(const std::vector<int>& a, const std::vector<int>& b,
                                const std::vector<int>& both) {
    RatMatrix m(static_cast<int>(both.size()), static_cast<int>(a.size() + b.size()));
    for (std::size_t r = 0; r < both.size(); ++r) {
        m(static_cast<int>(r), pos(a, both[r])) = 1;
        m(static_cast<int>(r), static_cast<int>(a.size()) + pos(b, both[r])) = -1;
    }
    return m;
}

inline TripleRealization realize_triple(const FiniteGluingModel& m) {
    TripleRealization t;
    t.gs = glued_space(m);
    const int i = m.J[0], j = m.J[1], k = m.J[2];
    t.t1 = classes_meeting(t.gs, {i});
    t.t2 = classes_meeting(t.gs, {j});
    t.t3 = classes_meeting(t.gs, {k});
    t.t12 = classes_meeting(t.gs, {i, j});
    t.t13 = classes_meeting(t.gs, {i, k});
    t.t23 = classes_meeting(t.gs, {j, k});
    t.t123 = classes_meeting(t.gs, {i, j, k});
    t.p1_basis = rat_kernel_basis(agreement_rows(t.t1, t.t2, t.t12));
    t.p2_basis = rat_kernel_basis(agreement_rows(t.t13, t.t23, t.t123));

    const int n1 = static_cast<int>(t.t1.size()), n2 = static_cast<int>(t.t2.size()),
              n3 = static_cast<int>(t.t3.size());
    RatMatrix sys(static_cast<int>(t.t12.size() + t.t13.size() + t.t23.size()), n1 + n2 + n3);
    int r = 0;
    for (int c : t.t12) {
        sys(r, pos(t.t1, c)) = 1;
        sys(r, n1 + pos(t.t2, c)) = -1;
        ++r;
    }
    for (int c : t.t13) {
        sys(r, pos(t.t1, c)) = 1;
        sys(r, n1 + n2 + pos(t.t3, c)) = -1;
        ++r;
    }
    for (int c : t.t23) {
        sys(r, n1 + pos(t.t2, c)) = 1;
        sys(r, n1 + n2 + pos(t.t3, c)) = -1;
        ++r;
    }
    t.p_basis = rat_kernel_basis(sys);
    return t;
}

inline int basis_block_rank(const RatMatrix& basis, int first, int count) {
    return rat_rank(select_rows(basis, first, count));
}

}  // namespace fmdetail

// Proposition-level check: materialize all twelve arrows of the iterated
// quotient diagram and rank-test that each is onto, including gamma-tilde,
// delta-tilde and both canonical quotients onto B^pi/(I1+I2+I3).
inline bool verify_surjectivity_iterd(const FiniteGluingModel& m) {
    if (m.J.size() != 3) throw PreconditionViolated("iterated diagram needs three indices");
    if (!cocycle_check(m).ok)
        throw PreconditionViolated("iterated surjectivity needs the cocycle condition");
    auto t = fmdetail::realize_triple(m);
    const int n1 = static_cast<int>(t.t1.size()), n2 = static_cast<int>(t.t2.size()),
              n3 = static_cast<int>(t.t3.size());
    const int n13 = static_cast<int>(t.t13.size()), n23 = static_cast<int>(t.t23.size());
    const int dim_p1 = t.p1_basis.cols(), dim_p2 = t.p2_basis.cols();

    // P -> P1 (drop the third coordinate block) and P -> B^pi/I3
    if (fmdetail::basis_block_rank(t.p_basis, 0, n1 + n2) != dim_p1) return false;
    if (fmdetail::basis_block_rank(t.p_basis, n1 + n2, n3) != n3) return false;
    // P1 -> B^pi/I1, P1 -> B^pi/I2
    if (fmdetail::basis_block_rank(t.p1_basis, 0, n1) != n1) return false;
    if (fmdetail::basis_block_rank(t.p1_basis, n1, n2) != n2) return false;

    // gamma-tilde: (a, b) |-> (a + I3, b + I3), restriction into P2
    RatMatrix g(n13 + n23, n1 + n2);
    for (int r = 0; r < n13; ++r) g(r, fmdetail::pos(t.t1, t.t13[static_cast<std::size_t>(r)])) = 1;
    for (int r = 0; r < n23; ++r)
        g(n13 + r, n1 + fmdetail::pos(t.t2, t.t23[static_cast<std::size_t>(r)])) = 1;
    RatMatrix g_img = g * t.p1_basis;
    RatMatrix p2_constraints = fmdetail::agreement_rows(t.t13, t.t23, t.t123);
    if (!(p2_constraints * g_img).is_zero()) return false;  // must land in P2
    if (rat_rank(g_img) != dim_p2) return false;

    // delta-tilde: c |-> (c + I1, c + I2)
    RatMatrix d(n13 + n23, n3);
    for (int r = 0; r < n13; ++r) d(r, fmdetail::pos(t.t3, t.t13[static_cast<std::size_t>(r)])) = 1;
    for (int r = 0; r < n23; ++r)
        d(n13 + r, fmdetail::pos(t.t3, t.t23[static_cast<std::size_t>(r)])) = 1;
    if (!(p2_constraints * d).is_zero()) return false;
    if (rat_rank(d) != dim_p2) return false;

    // P2 -> B^pi/(I1+I3), P2 -> B^pi/(I2+I3)
    if (fmdetail::basis_block_rank(t.p2_basis, 0, n13) != n13) return false;
    if (fmdetail::basis_block_rank(t.p2_basis, n13, n23) != n23) return false;

    // the four pure restriction quotients, including both onto the triple one
    auto restriction_full_rank = [](const std::vector<int>& from, const std::vector<int>& to) {
        RatMatrix s(static_cast<int>(to.size()), static_cast<int>(from.size()));
        for (std::size_t r = 0; r < to.size(); ++r)
            s(static_cast<int>(r), fmdetail::pos(from, to[r])) = 1;
        return rat_rank(s) == static_cast<int>(to.size());
    };
    if (!restriction_full_rank(t.t1, t.t12) || !restriction_full_rank(t.t2, t.t12)) return false;
    if (!restriction_full_rank(t.t13, t.t123) || !restriction_full_rank(t.t23, t.t123)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// The eta maps of the iterated decomposition, built by explicit lifting.

struct EtaMaps {
    RatMatrix eta1, eta2;  // Q^{X_13} -> Q^{T123} and Q^{X_23} -> Q^{T123}
    bool commutes = false;
    bool lift_independent = false;
};

// eta^i sends a basis function on X_{i3} to the class function of its lifted
// representative, cut down to the triple quotient.  A lift exists iff no two
// points of X_{i3} land in the same glued class; two natural lifts (extend
// by zero / extend by one) must give the same quotient class.
inline EtaMaps eta_maps(const FiniteGluingModel& m) {
    if (m.J.size() != 3) throw PreconditionViolated("eta maps need three indices");
    if (!cocycle_check(m).ok) throw PreconditionViolated("eta maps need the cocycle condition");
    auto gs = glued_space(m);
    const int i1 = m.J[0], i2 = m.J[1], i3 = m.J[2];
    std::vector<int> t123 = fmdetail::classes_meeting(gs, {i1, i2, i3});

    EtaMaps out;
    out.lift_independent = true;
    auto build = [&](int i) {
        const auto& o = m.over(i, i3);
        RatMatrix eta(static_cast<int>(t123.size()), static_cast<int>(o.set.size()));
        std::set<int> prescribed;
        for (std::size_t c = 0; c < o.set.size(); ++c) {
            int cls = gs.class_of.at({i, m.iota(i, i3, o.set[c])});
            if (!prescribed.insert(cls).second)
                throw LiftFailure("no well-defined lift: two points of the overlap X" +
                                  std::to_string(std::min(i, i3)) + std::to_string(std::max(i, i3)) +
                                  " share a glued class");
            auto it = std::lower_bound(t123.begin(), t123.end(), cls);
            if (it != t123.end() && *it == cls)
                eta(static_cast<int>(it - t123.begin()), static_cast<int>(c)) = 1;
        }
        // lift independence: the zero-extension and one-extension lifts agree
        // on the triple quotient iff every triple class is prescribed
        for (int cls : t123)
            if (!prescribed.count(cls)) out.lift_independent = false;
        return eta;
    };
    out.eta1 = build(i1);
    out.eta2 = build(i2);

    // the colimit square commutes: eta1 . (pi^1_3 on P1 part) = eta2 . (pi^2_3)
    // on P1, and eta1 . pi^3_1 = eta2 . pi^3_2 on B_3
    auto restrict_matrix = [&](int a, int b) {  // Q^{X_a} -> Q^{X_ab}
        const auto& o = m.over(a, b);
        RatMatrix r(static_cast<int>(o.set.size()), static_cast<int>(m.x(a).size()));
        for (std::size_t e = 0; e < o.set.size(); ++e)
            r(static_cast<int>(e), fmdetail::pos(m.x(a), m.iota(a, b, o.set[e]))) = 1;
        return r;
    };
    int na = static_cast<int>(m.x(i1).size()), nb = static_cast<int>(m.x(i2).size());
    const auto& o12 = m.over(i1, i2);
    RatMatrix p1_sys(static_cast<int>(o12.set.size()), na + nb);
    for (std::size_t e = 0; e < o12.set.size(); ++e) {
        p1_sys(static_cast<int>(e), fmdetail::pos(m.x(i1), m.iota(i1, i2, o12.set[e]))) = 1;
        p1_sys(static_cast<int>(e), na + fmdetail::pos(m.x(i2), m.iota(i2, i1, o12.set[e]))) = -1;
    }
    RatMatrix p1_basis = rat_kernel_basis(p1_sys);
    RatMatrix r13 = restrict_matrix(i1, i3), r23 = restrict_matrix(i2, i3);
    RatMatrix left(r13.rows(), na + nb), right(r23.rows(), na + nb);
    for (int r = 0; r < r13.rows(); ++r)
        for (int c = 0; c < na; ++c) left(r, c) = r13(r, c);
    for (int r = 0; r < r23.rows(); ++r)
        for (int c = 0; c < nb; ++c) right(r, na + c) = r23(r, c);
    bool gamma_commutes = (out.eta1 * (left * p1_basis)) == (out.eta2 * (right * p1_basis));
    bool delta_commutes =
        (out.eta1 * restrict_matrix(i3, i1)) == (out.eta2 * restrict_matrix(i3, i2));
    out.commutes = gamma_commutes && delta_commutes;
    return out;
}

// ---------------------------------------------------------------------------
// Induced K-theory data: each B_i is a finite-dimensional commutative
// algebra, so K0 is free on the minimal projections and K1 vanishes; the
// induced maps are 0/1 matrices.

inline PullbackFamily k_family(const FiniteGluingModel& m) {
    CocycleReport coc = cocycle_check(m);
    auto gs = glued_space(m);
    PullbackFamily fam;
    fam.J = m.J;
    AbelianGroup zero = AbelianGroup::zero();
    auto ones = [](int n) {
        std::vector<Int> u(static_cast<std::size_t>(n), Int(1));
        return u;
    };
    for (int i : m.J) {
        KNode n;
        n.k = KPair{AbelianGroup::free(static_cast<int>(m.x(i).size())), zero};
        n.unit_k0 = ones(static_cast<int>(m.x(i).size()));
        n.note = "minimal projections of Q^{X" + std::to_string(i) + "}";
        fam.component[i] = n;
    }
    for (const auto& [key, o] : m.overlaps) {
        KNode n;
        n.k = KPair{AbelianGroup::free(static_cast<int>(o.set.size())), zero};
        n.unit_k0 = ones(static_cast<int>(o.set.size()));
        fam.overlap[key] = n;
    }
    auto empty_k1 = GroupHom::known(zero, zero, IntMatrix(0, 0));
    for (const auto& [key, o] : m.overlaps) {
        auto [i, j] = key;
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
            // pi^a_b restricts along iota^a_b: a minimal projection goes to
            // the overlap projection it covers, or to 0
            IntMatrix k0(static_cast<int>(o.set.size()), static_cast<int>(m.x(a).size()));
            for (std::size_t e = 0; e < o.set.size(); ++e)
                k0(static_cast<int>(e), fmdetail::pos(m.x(a), m.iota(a, b, o.set[e]))) = 1;
            ArrowData ad;
            ad.k0 = GroupHom::known(fam.component.at(a).k.k0, fam.overlap.at(key).k.k0, k0);
            ad.k1 = empty_k1;
            fam.pi[{a, b}] = ad;
        }
    }
    if (m.J.size() == 3) {
        std::vector<int> t123 = fmdetail::classes_meeting(gs, {m.J[0], m.J[1], m.J[2]});
        KNode tn;
        tn.k = KPair{AbelianGroup::free(static_cast<int>(t123.size())), zero};
        tn.unit_k0 = ones(static_cast<int>(t123.size()));
        tn.note = "functions on the triple overlap of the glued space";
        fam.triple = tn;
        for (const auto& [key, o] : m.overlaps) {
            auto [i, j] = key;
            IntMatrix k0(static_cast<int>(t123.size()), static_cast<int>(o.set.size()));
            for (std::size_t e = 0; e < o.set.size(); ++e) {
                int cls = gs.class_of.at({i, m.iota(i, j, o.set[e])});
                auto it = std::lower_bound(t123.begin(), t123.end(), cls);
                if (it != t123.end() && *it == cls)
                    k0(static_cast<int>(it - t123.begin()), static_cast<int>(e)) = 1;
            }
            ArrowData ad;
            ad.k0 = GroupHom::known(fam.overlap.at(key).k.k0, fam.triple->k.k0, k0);
            ad.k1 = empty_k1;
            fam.eta[key] = ad;
        }
    }
    fam.cocycle_certified = coc.ok;
    fam.certificate_source = coc.ok ? "finite-model cocycle check" : "";
    return fam;
}

// Run the full K-pipeline on the induced data.  Contract for glue-certified
// models: K0 free of rank |glued space|, K1 = 0.
inline KPair k_pipeline_oracle(const FiniteGluingModel& m) {
    if (!cocycle_check(m).ok)
        throw PreconditionViolated("k_pipeline_oracle needs the cocycle condition");
    PipelineResult res = run_pipeline(k_family(m), {});
    if (res.status != SolveStatus::Solved || !res.k)
        throw std::logic_error("finite-model pipeline did not solve (stage " +
                               std::to_string(res.failed_stage) + ")");
    return *res.k;
}

// ---------------------------------------------------------------------------
// Model generators.  The constructive generator builds a glued space first
// and reads the components and overlaps off it, so the cocycle condition
// holds by construction; the uniform generator draws injections blindly and
// mostly violates clause (2).

namespace fmdetail {

inline int rnd(std::mt19937_64& g, int n) {  // uniform enough for test data
    return static_cast<int>(g() % static_cast<std::uint64_t>(n));
}

inline std::vector<int> shuffled(std::mt19937_64& g, int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(v[static_cast<std::size_t>(i)],
                                              v[static_cast<std::size_t>(rnd(g, i + 1))]);
    return v;
}

}  // namespace fmdetail

inline FiniteGluingModel constructive_model(std::uint64_t seed, int max_size, int j_size = 3) {
    if (max_size < 1 || (j_size != 2 && j_size != 3))
        throw std::invalid_argument("constructive_model: bad parameters");
    std::mt19937_64 g(seed);
    FiniteGluingModel m;
    for (int i = 1; i <= j_size; ++i) m.J.push_back(i);
    const int n = 1 + fmdetail::rnd(g, max_size);
    const int full = (1 << j_size) - 1;
    std::vector<int> member(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) member[static_cast<std::size_t>(p)] = 1 + fmdetail::rnd(g, full);

    // per-component labels in a shuffled order, so the injections are not
    // just identities on a shared alphabet
    std::map<int, std::map<int, std::string>> label;  // component -> point -> label
    for (int i : m.J) {
        std::vector<int> pts;
        for (int p = 0; p < n; ++p)
            if (member[static_cast<std::size_t>(p)] & (1 << (i - 1))) pts.push_back(p);
        auto order = fmdetail::shuffled(g, static_cast<int>(pts.size()));
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::string l = std::string(1, static_cast<char>('a' + i - 1)) + std::to_string(order[k]);
            label[i][pts[k]] = l;
            labels.push_back(l);
        }
        std::sort(labels.begin(), labels.end());
        m.X[i] = labels;
    }
    for (std::size_t a = 0; a < m.J.size(); ++a)
        for (std::size_t b = a + 1; b < m.J.size(); ++b) {
            int i = m.J[a], j = m.J[b];
            FiniteGluingModel::Overlap o;
            std::vector<int> pts;
            int need = (1 << (i - 1)) | (1 << (j - 1));
            for (int p = 0; p < n; ++p)
                if ((member[static_cast<std::size_t>(p)] & need) == need) pts.push_back(p);
            auto order = fmdetail::shuffled(g, static_cast<int>(pts.size()));
            std::vector<std::pair<std::string, int>> named;
            for (std::size_t k = 0; k < pts.size(); ++k)
                named.push_back({"s" + std::to_string(i) + std::to_string(j) + "_" +
                                     std::to_string(order[k]),
                                 pts[k]});
            std::sort(named.begin(), named.end());
            for (const auto& [l, p] : named) {
                o.set.push_back(l);
                o.into[i][l] = label[i][p];
                o.into[j][l] = label[j][p];
            }
            m.overlaps[{i, j}] = o;
        }
    m.validate();
    return m;
}

inline FiniteGluingModel uniform_model(std::uint64_t seed, int max_size, int j_size = 3) {
    if (max_size < 1 || (j_size != 2 && j_size != 3))
        throw std::invalid_argument("uniform_model: bad parameters");
    std::mt19937_64 g(seed);
    FiniteGluingModel m;
    for (int i = 1; i <= j_size; ++i) m.J.push_back(i);
    std::map<int, int> size;
    for (int i : m.J) {
        size[i] = 1 + fmdetail::rnd(g, max_size);
        std::vector<std::string> labels;
        for (int k = 0; k < size[i]; ++k)
            labels.push_back(std::string(1, static_cast<char>('a' + i - 1)) + std::to_string(k));
        std::sort(labels.begin(), labels.end());
        m.X[i] = labels;
    }
    for (std::size_t a = 0; a < m.J.size(); ++a)
        for (std::size_t b = a + 1; b < m.J.size(); ++b) {
            int i = m.J[a], j = m.J[b];
            int cap = std::min(size[i], size[j]);
            int k = fmdetail::rnd(g, cap + 1);
            FiniteGluingModel::Overlap o;
            auto ti = fmdetail::shuffled(g, size[i]);
            auto tj = fmdetail::shuffled(g, size[j]);
            for (int e = 0; e < k; ++e) {
                std::string l = "s" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(e);
                o.set.push_back(l);
                o.into[i][l] = m.X[i][static_cast<std::size_t>(ti[static_cast<std::size_t>(e)])];
                o.into[j][l] = m.X[j][static_cast<std::size_t>(tj[static_cast<std::size_t>(e)])];
            }
            std::sort(o.set.begin(), o.set.end());
            m.overlaps[{i, j}] = o;
        }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// Harness: the full battery of checks on one model.

struct ModelChecks {
    bool cocycle = false;
    std::optional<CocycleWitness> cocycle_witness;
    bool dims_agree = false;
    bool rebracketing = false;
    bool quotient_isos = false;
    bool surjectivity = false;
    bool eta_ok = false;
    bool k_oracle_ok = false;

    bool all() const {
        return cocycle && dims_agree && rebracketing && quotient_isos && surjectivity && eta_ok &&
               k_oracle_ok;
    }
    std::string first_failure() const {
        if (!cocycle) return "cocycle_check";
        if (!dims_agree) return "multipullback_dim vs glued space";
        if (!rebracketing) return "verify_rebracketing";
        if (!quotient_isos) return "verify_quotient_isos";
        if (!surjectivity) return "verify_surjectivity_iterd";
        if (!eta_ok) return "eta lift";
        if (!k_oracle_ok) return "k_pipeline_oracle";
        return "";
    }
};

inline ModelChecks run_all_checks(const FiniteGluingModel& m) {
    ModelChecks c;
    CocycleReport coc = cocycle_check(m);
    c.cocycle = coc.ok;
    c.cocycle_witness = coc.witness;
    auto gs = glued_space(m);
    c.dims_agree = multipullback_dim(m) == gs.size();
    if (!coc.ok) return c;
    c.rebracketing = m.J.size() == 3 ? verify_rebracketing(m) : true;
    c.quotient_isos = verify_quotient_isos(m);
    c.surjectivity = m.J.size() == 3 ? verify_surjectivity_iterd(m) : true;
    if (m.J.size() == 3) {
        try {
            EtaMaps em = eta_maps(m);
            c.eta_ok = em.commutes && em.lift_independent;
        } catch (const LiftFailure&) {
            c.eta_ok = false;
        }
    } else {
        c.eta_ok = true;
    }
    KPair kp = k_pipeline_oracle(m);
    c.k_oracle_ok = kp.k0 == AbelianGroup::free(gs.size()) && kp.k1.is_zero();
    return c;
}

}  // namespace mpk
