#pragma once

// Finitely generated abelian groups in invariant-factor normal form, group
// presentations, and the kernel/cokernel/image machinery built on Smith and
// Hermite normal forms.  All values are immutable after construction and all
// operations are pure.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpk/matrix.hpp"

namespace mpk {

// Z^free_rank + Z/d_1 + ... + Z/d_t with 2 <= d_1 | d_2 | ... | d_t.
// Equality of canonical forms is group isomorphism.
class AbelianGroup {
public:
    AbelianGroup() : free_rank_(0) {}
    AbelianGroup(int free_rank, std::vector<Int> torsion)
        : free_rank_(free_rank), torsion_(std::move(torsion)) {
        if (free_rank_ < 0) throw std::invalid_argument("AbelianGroup: negative rank");
        for (std::size_t k = 0; k < torsion_.size(); ++k) {
            if (torsion_[k] < 2) throw std::invalid_argument("AbelianGroup: invariant factor < 2");
            if (k > 0 && torsion_[k] % torsion_[k - 1] != 0)
                throw std::invalid_argument("AbelianGroup: invariant factors must form a divisibility chain");
        }
    }

    static AbelianGroup zero() { return AbelianGroup(); }
    static AbelianGroup free(int rank) { return AbelianGroup(rank, {}); }
    static AbelianGroup cyclic(const Int& d) { return AbelianGroup(0, {d}); }

    int free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_free() const { return torsion_.empty(); }

    // canonical generators: free ones first, then one per invariant factor
    int generators() const { return free_rank_ + static_cast<int>(torsion_.size()); }

    // relation columns d_k * e_{free_rank + k}
    IntMatrix relations() const {
        IntMatrix r(generators(), static_cast<int>(torsion_.size()));
        for (std::size_t k = 0; k < torsion_.size(); ++k)
            r(free_rank_ + static_cast<int>(k), static_cast<int>(k)) = torsion_[k];
        return r;
    }

    bool operator==(const AbelianGroup& o) const {
        return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    // "0", "Z", "Z^2 + Z/2 + Z/4": free part first, factors ascending
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        if (free_rank_ == 1) s = "Z";
        else if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
        for (const Int& d : torsion_) {
            if (!s.empty()) s += " + ";
            s += "Z/" + d.str();
        }
        return s;
    }

private:
    int free_rank_;
    std::vector<Int> torsion_;
};

// n generators, relation matrix with n rows (columns are relators)
struct Presentation {
    int generators = 0;
    IntMatrix relations;  // generators x (number of relators)

    Presentation() = default;
    Presentation(int gens, IntMatrix rel) : generators(gens), relations(std::move(rel)) {
        if (relations.rows() != generators)
            throw std::invalid_argument("Presentation: relation matrix must have one row per generator");
    }
    static Presentation free(int gens) { return Presentation(gens, IntMatrix(gens, 0)); }
    static Presentation of(const AbelianGroup& g) { return Presentation(g.generators(), g.relations()); }
};

inline AbelianGroup normalize(const Presentation& p) {
    SmithResult s = smith_normal_form(p.relations);
    std::vector<Int> torsion;
    int rk = 0;
    for (const Int& d : s.diagonal()) {
        if (d == 0) continue;
        ++rk;
        if (d >= 2) torsion.push_back(d);
    }
    return AbelianGroup(p.generators - rk, std::move(torsion));
}

// Canonical form of a presented group together with the projection matrix
// phi : Z^gens -> Z^{canonical gens}; [x] |-> phi*x realizes the isomorphism.
struct CanonicalIso {
    AbelianGroup group;
    IntMatrix phi;
};

inline CanonicalIso iso_to_canonical(const Presentation& p) {
    SmithResult s = smith_normal_form(p.relations);
    // in the basis y = U x the relations are diagonal: generator i has order
    // d_i (d_i = 0 means free, d_i = 1 means trivial)
    std::vector<Int> diag = s.diagonal();
    diag.resize(static_cast<std::size_t>(p.generators), Int(0));
    std::vector<int> free_rows, torsion_rows;
    for (int i = 0; i < p.generators; ++i) {
        if (diag[static_cast<std::size_t>(i)] == 0) free_rows.push_back(i);
        else if (diag[static_cast<std::size_t>(i)] >= 2) torsion_rows.push_back(i);
    }
    std::vector<Int> torsion;
    for (int i : torsion_rows) torsion.push_back(diag[static_cast<std::size_t>(i)]);
    AbelianGroup g(static_cast<int>(free_rows.size()), torsion);
    IntMatrix phi(g.generators(), p.generators);
    int r = 0;
    for (int i : free_rows) {
        for (int j = 0; j < p.generators; ++j) phi(r, j) = s.u(i, j);
        ++r;
    }
    for (int i : torsion_rows) {
        for (int j = 0; j < p.generators; ++j) phi(r, j) = s.u(i, j);
        ++r;
    }
    return {std::move(g), std::move(phi)};
}

inline bool is_isomorphic(const AbelianGroup& a, const AbelianGroup& b) { return a == b; }

// ---------------------------------------------------------------------------
// Maps.  A fully known homomorphism from a group with g generators to one
// with h generators is an h x g integer matrix acting on generator columns.

// Kernel of a map between free groups: the abstract group (always free) and
// an explicit basis of the kernel sublattice of the domain.
struct KernelResult {
    AbelianGroup group;
    IntMatrix basis;  // domain_rank x kernel_rank
};

inline KernelResult kernel_of_free_map(const IntMatrix& m) {
    IntMatrix basis = integer_kernel_basis(m);
    return {AbelianGroup::free(basis.cols()), std::move(basis)};
}

// cokernel(f) = codomain / (im f): present by the columns of f together with
// the codomain's own relations.
inline AbelianGroup cokernel_of(const IntMatrix& m, const AbelianGroup& codomain) {
    if (m.rows() != codomain.generators())
        throw std::invalid_argument("cokernel_of: matrix rows must match codomain generators");
    return normalize(Presentation(codomain.generators(), hstack(m, codomain.relations())));
}

inline bool is_surjective_map(const IntMatrix& m, const AbelianGroup& codomain) {
    return cokernel_of(m, codomain).is_zero();
}

// Image of f inside the codomain, as an abstract group: the sublattice
// spanned by the columns of f plus the codomain relations, modulo those
// relations.
inline AbelianGroup image_group_of(const IntMatrix& m, const AbelianGroup& codomain) {
    if (m.rows() != codomain.generators())
        throw std::invalid_argument("image_group_of: matrix rows must match codomain generators");
    IntMatrix rel = codomain.relations();
    IntMatrix basis = lattice_basis(hstack(m, rel));
    // express the relations in the sublattice basis (they lie inside it)
    auto y = integer_solve(basis, rel);
    if (!y) throw std::logic_error("image_group_of: relations escaped their own lattice");
    return normalize(Presentation(basis.cols(), *y));
}

// Kernel of f as an abstract subgroup of the domain: the lattice
// L = {x : f x lies in the codomain relation lattice} modulo the domain
// relations.  Also returns a basis of L (columns in domain coordinates).
struct SubgroupResult {
    AbelianGroup group;
    IntMatrix basis;
};

inline SubgroupResult kernel_group_of(const IntMatrix& m, const AbelianGroup& domain,
                                      const AbelianGroup& codomain) {
    if (m.rows() != codomain.generators() || m.cols() != domain.generators())
        throw std::invalid_argument("kernel_group_of: shape mismatch with domain/codomain");
    IntMatrix cod_rel = codomain.relations();
    // (x, w) with m x = cod_rel w  <=>  [m | -cod_rel] (x; w) = 0
    IntMatrix neg = cod_rel;
    for (int i = 0; i < neg.rows(); ++i)
        for (int j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    IntMatrix kb = integer_kernel_basis(hstack(m, neg));
    IntMatrix proj(domain.generators(), kb.cols());
    for (int i = 0; i < proj.rows(); ++i)
        for (int j = 0; j < kb.cols(); ++j) proj(i, j) = kb(i, j);
    IntMatrix dom_rel = domain.relations();
    IntMatrix basis = lattice_basis(hstack(proj, dom_rel));
    auto y = integer_solve(basis, dom_rel);
    if (!y) throw std::logic_error("kernel_group_of: domain relations escaped the kernel lattice");
    return {normalize(Presentation(basis.cols(), *y)), std::move(basis)};
}

// ---------------------------------------------------------------------------
// Direct sums.  For the canonical form, merge through a presentation; the
// concatenated generators of A then B map onto the canonical generators via
// iso_to_canonical when an explicit change of coordinates is needed.

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    IntMatrix rel(a.generators() + b.generators(),
                  static_cast<int>(a.torsion().size() + b.torsion().size()));
    IntMatrix ra = a.relations(), rb = b.relations();
    for (int i = 0; i < ra.rows(); ++i)
        for (int j = 0; j < ra.cols(); ++j) rel(i, j) = ra(i, j);
    for (int i = 0; i < rb.rows(); ++i)
        for (int j = 0; j < rb.cols(); ++j) rel(a.generators() + i, ra.cols() + j) = rb(i, j);
    return normalize(Presentation(a.generators() + b.generators(), std::move(rel)));
}

}  // namespace mpk
