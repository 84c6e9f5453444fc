#pragma once

// Cyclic six-term exact sequences with partially known groups and maps.
//
// Slots are indexed cyclically:
//   node 0: K0(A)    node 1: K0(A1)+K0(A2)    node 2: K0(A12)
//   node 3: K1(A)    node 4: K1(A1)+K1(A2)    node 5: K1(A12)
// map i goes from node i to node (i+1) mod 6; maps 2 and 5 are the
// connecting maps.  Exactness at every node is the governing contract.
//
// solve() runs a deterministic rule chase to a fixpoint:
//   R1  a zero node forces both adjacent maps to be zero maps
//   R2  exactness transport: a zero incoming map makes the outgoing map
//       injective (and conversely surjectivity forces the next connecting
//       map to vanish); kernels/cokernels of fully known maps determine
//       neighbouring nodes
//   R3  onto cut: a surjective map (directly, or certified for every
//       completion of its unknown entries) zeroes the following map
//   R4  short-exact-sequence extraction: 0 -> A -> X -> B -> 0 with A, B
//       known solves X when B is torsion-free (free quotients split) or one
//       end vanishes; torsion quotients are reported, never guessed
//   R5  any derived value conflicting with a given one yields Inconsistent
//       with the derivation chain as witness
// Unknown matrix entries are never solved for; the chase only derives what
// holds for every integer completion.

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpk/abgroup.hpp"
#include "mpk/matrix.hpp"

namespace mpk {

using MaybeInt = std::optional<Int>;
using PartialMatrix = Mat<MaybeInt>;

// Homomorphism between groups in canonical form; entries may be Unknown.
// Rows follow codomain generators, columns domain generators; entries in
// torsion rows are kept reduced modulo the corresponding invariant factor.
struct GroupHom {
    AbelianGroup domain, codomain;
    PartialMatrix entries;

    GroupHom() = default;
    GroupHom(AbelianGroup dom, AbelianGroup cod, PartialMatrix m)
        : domain(std::move(dom)), codomain(std::move(cod)), entries(std::move(m)) {
        if (entries.rows() != codomain.generators() || entries.cols() != domain.generators())
            throw std::invalid_argument("GroupHom: matrix shape must match generator counts");
        canonicalize();
        validate();
    }

    static GroupHom zero(AbelianGroup dom, AbelianGroup cod) {
        PartialMatrix m(cod.generators(), dom.generators());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = Int(0);
        return GroupHom(std::move(dom), std::move(cod), std::move(m));
    }

    static GroupHom known(AbelianGroup dom, AbelianGroup cod, const IntMatrix& m) {
        PartialMatrix p(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) p(i, j) = m(i, j);
        return GroupHom(std::move(dom), std::move(cod), std::move(p));
    }

    bool fully_known() const {
        for (int i = 0; i < entries.rows(); ++i)
            for (int j = 0; j < entries.cols(); ++j)
                if (!entries(i, j)) return false;
        return true;
    }

    IntMatrix matrix() const {
        IntMatrix m(entries.rows(), entries.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (!entries(i, j)) throw std::logic_error("GroupHom::matrix: unknown entry");
                m(i, j) = *entries(i, j);
            }
        return m;
    }

    bool is_zero_map() const {
        if (!fully_known()) return false;
        for (int i = 0; i < entries.rows(); ++i)
            for (int j = 0; j < entries.cols(); ++j)
                if (*entries(i, j) != 0) return false;
        return true;
    }

    bool has_known_nonzero_entry() const {
        for (int i = 0; i < entries.rows(); ++i)
            for (int j = 0; j < entries.cols(); ++j)
                if (entries(i, j) && *entries(i, j) != 0) return true;
        return false;
    }

    bool operator==(const GroupHom& o) const {
        return domain == o.domain && codomain == o.codomain && entries == o.entries;
    }

private:
    void canonicalize() {
        const int fr = codomain.free_rank();
        for (std::size_t k = 0; k < codomain.torsion().size(); ++k) {
            const Int& d = codomain.torsion()[k];
            int row = fr + static_cast<int>(k);
            for (int j = 0; j < entries.cols(); ++j)
                if (entries(row, j)) {
                    Int e = *entries(row, j) % d;
                    if (e < 0) e += d;
                    entries(row, j) = e;
                }
        }
    }

    // fully known columns of torsion generators must respect the order
    void validate() const {
        const int fr = domain.free_rank();
        IntMatrix cod_rel = codomain.relations();
        for (std::size_t k = 0; k < domain.torsion().size(); ++k) {
            int j = fr + static_cast<int>(k);
            IntMatrix col(entries.rows(), 1);
            bool known = true;
            for (int i = 0; i < entries.rows(); ++i) {
                if (!entries(i, j)) {
                    known = false;
                    break;
                }
                col(i, 0) = *entries(i, j) * domain.torsion()[k];
            }
            if (known && !lattice_contains(cod_rel, col))
                throw std::invalid_argument("GroupHom: matrix does not respect a torsion relation");
        }
    }
};

// True iff the fully known columns alone generate the codomain, so the map
// is onto for every integer assignment of the Unknown entries.  Decided by
// the normal form of the known-column submatrix (for a free codomain: all
// invariant factors 1 and full rank).  Returns false when undecidable.
inline bool surjective_for_all_completions(const GroupHom& f) {
    std::vector<int> known;
    for (int j = 0; j < f.entries.cols(); ++j) {
        bool k = true;
        for (int i = 0; i < f.entries.rows(); ++i)
            if (!f.entries(i, j)) {
                k = false;
                break;
            }
        if (k) known.push_back(j);
    }
    IntMatrix sub(f.entries.rows(), static_cast<int>(known.size()));
    for (int i = 0; i < sub.rows(); ++i)
        for (std::size_t c = 0; c < known.size(); ++c) sub(i, static_cast<int>(c)) = *f.entries(i, known[c]);
    return cokernel_of(sub, f.codomain).is_zero();
}

enum class NodeTag { Given, ExternalFact, Solved };

inline const char* to_string(NodeTag t) {
    switch (t) {
        case NodeTag::Given: return "given";
        case NodeTag::ExternalFact: return "external-fact";
        default: return "solved";
    }
}

struct SixTermSequence {
    std::array<std::optional<AbelianGroup>, 6> nodes;
    std::array<NodeTag, 6> tags{NodeTag::Given, NodeTag::Given, NodeTag::Given,
                                NodeTag::Given, NodeTag::Given, NodeTag::Given};
    std::array<std::string, 6> node_labels{"K0(A)", "K0(A1)+K0(A2)", "K0(A12)",
                                           "K1(A)", "K1(A1)+K1(A2)", "K1(A12)"};
    std::array<std::optional<GroupHom>, 6> maps;
    std::array<std::string, 6> map_labels;

    SixTermSequence() {
        for (int i = 0; i < 6; ++i) {
            std::string kind = (i == 2 || i == 5) ? "connecting " : "";
            map_labels[static_cast<std::size_t>(i)] =
                kind + node_labels[static_cast<std::size_t>(i)] + " -> " +
                node_labels[static_cast<std::size_t>((i + 1) % 6)];
        }
    }

    void relabel_maps() {
        for (int i = 0; i < 6; ++i) {
            std::string kind = (i == 2 || i == 5) ? "connecting " : "";
            map_labels[static_cast<std::size_t>(i)] =
                kind + node_labels[static_cast<std::size_t>(i)] + " -> " +
                node_labels[static_cast<std::size_t>((i + 1) % 6)];
        }
    }
};

enum class SolveStatus { Solved, Underdetermined, Inconsistent };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "Solved";
        case SolveStatus::Underdetermined: return "Underdetermined";
        default: return "Inconsistent";
    }
}

struct DerivationStep {
    std::string rule;    // R1..R5
    std::string target;  // slot description
    std::string value;   // assigned value, rendered
    std::string reason;
};

struct SolveReport {
    SixTermSequence seq;
    SolveStatus status = SolveStatus::Underdetermined;
    std::vector<DerivationStep> steps;
    std::vector<std::string> unresolved;  // per-slot blocking reasons
    std::vector<std::string> witness;     // conflicting rule chain

    const std::optional<AbelianGroup>& node(int i) const {
        return seq.nodes[static_cast<std::size_t>(i)];
    }
};

struct ExactnessReport {
    bool ok = true;
    std::vector<int> failed_nodes;
    std::string detail;
};

// image = kernel at all six nodes, via canonical lattice bases; torsion is
// handled by carrying the relation columns along.  Requires every node and
// map to be fully known.
inline ExactnessReport check_exactness(const SixTermSequence& seq) {
    for (int i = 0; i < 6; ++i) {
        if (!seq.nodes[static_cast<std::size_t>(i)])
            throw std::invalid_argument("check_exactness: node " + std::to_string(i) + " unknown");
        if (!seq.maps[static_cast<std::size_t>(i)] ||
            !seq.maps[static_cast<std::size_t>(i)]->fully_known())
            throw std::invalid_argument("check_exactness: map " + std::to_string(i) + " not fully known");
    }
    ExactnessReport rep;
    for (int i = 0; i < 6; ++i) {
        const AbelianGroup& n = *seq.nodes[static_cast<std::size_t>(i)];
        const GroupHom& in = *seq.maps[static_cast<std::size_t>((i + 5) % 6)];
        const GroupHom& out = *seq.maps[static_cast<std::size_t>(i)];
        IntMatrix rel = n.relations();
        IntMatrix im_gens = hstack(in.matrix(), rel);

        IntMatrix out_m = out.matrix();
        IntMatrix cod_rel = out.codomain.relations();
        IntMatrix neg = cod_rel;
        for (int r = 0; r < neg.rows(); ++r)
            for (int c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
        IntMatrix kb = integer_kernel_basis(hstack(out_m, neg));
        IntMatrix proj(n.generators(), kb.cols());
        for (int r = 0; r < proj.rows(); ++r)
            for (int c = 0; c < kb.cols(); ++c) proj(r, c) = kb(r, c);
        IntMatrix ker_gens = hstack(proj, rel);

        if (!lattices_equal(im_gens, ker_gens)) {
            rep.ok = false;
            rep.failed_nodes.push_back(i);
            rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("image != kernel at ") +
                          seq.node_labels[static_cast<std::size_t>(i)];
        }
    }
    return rep;
}

namespace detail {

class Chase {
public:
    explicit Chase(SixTermSequence seq) : s_(std::move(seq)) {
        for (int i = 0; i < 6; ++i) {
            const auto& m = s_.maps[static_cast<std::size_t>(i)];
            if (!m) continue;
            const auto& dom = s_.nodes[static_cast<std::size_t>(i)];
            const auto& cod = s_.nodes[static_cast<std::size_t>((i + 1) % 6)];
            if (!dom || !cod)
                throw std::invalid_argument("solve: map given next to an unknown node");
            if (m->domain != *dom || m->codomain != *cod)
                throw std::invalid_argument("solve: map endpoints disagree with node data");
        }
        bool any = false;
        for (const auto& n : s_.nodes) any = any || n.has_value();
        if (!any) throw std::invalid_argument("solve: at least one node must be known");
    }

    SolveReport run() {
        for (int guard = 0; guard < 64 && !conflict_; ++guard) {
            changed_ = false;
            pass();
            if (!changed_) break;
        }
        return finalize();
    }

private:
    static int nxt(int i) { return (i + 1) % 6; }
    static int prv(int i) { return (i + 5) % 6; }

    const std::optional<AbelianGroup>& node(int i) const {
        return s_.nodes[static_cast<std::size_t>(i)];
    }
    std::optional<GroupHom>& map(int i) { return s_.maps[static_cast<std::size_t>(i)]; }
    const std::string& nlabel(int i) const { return s_.node_labels[static_cast<std::size_t>(i)]; }
    const std::string& mlabel(int i) const { return s_.map_labels[static_cast<std::size_t>(i)]; }

    bool node_is(int i, bool zero) const {
        return node(i) && node(i)->is_zero() == zero;
    }

    void log(const std::string& rule, const std::string& target, const std::string& value,
             const std::string& reason) {
        steps_.push_back({rule, target, value, reason});
    }

    void fail(const std::string& description) {
        if (!conflict_) conflict_ = description;
    }

    void mark_zero(int j, const std::string& rule, const std::string& reason) {
        if (zero_[static_cast<std::size_t>(j)]) return;
        if (map(j)) {
            if (map(j)->is_zero_map()) {
                zero_[static_cast<std::size_t>(j)] = true;
                return;  // already literally zero, nothing derived
            }
            if (map(j)->has_known_nonzero_entry()) {
                fail("R5: " + mlabel(j) + " must be the zero map (" + reason +
                     ") but has a known nonzero entry");
                return;
            }
        }
        zero_[static_cast<std::size_t>(j)] = true;
        changed_ = true;
        log(rule, "map " + mlabel(j), "0", reason);
        materialize_zero(j);
    }

    void materialize_zero(int j) {
        if (zero_[static_cast<std::size_t>(j)] && node(j) && node(nxt(j))) {
            if (!map(j) || !map(j)->is_zero_map())
                map(j) = GroupHom::zero(*node(j), *node(nxt(j)));
        }
    }

    void assign(int i, const AbelianGroup& g, const std::string& rule, const std::string& reason) {
        auto& slot = s_.nodes[static_cast<std::size_t>(i)];
        if (slot) {
            if (*slot != g)
                fail("R5: derived " + nlabel(i) + " = " + g.to_string() + " (" + reason +
                     ") conflicts with " + std::string(to_string(s_.tags[static_cast<std::size_t>(i)])) +
                     " value " + slot->to_string());
            return;
        }
        slot = g;
        s_.tags[static_cast<std::size_t>(i)] = NodeTag::Solved;
        changed_ = true;
        log(rule, "node " + nlabel(i), g.to_string(), reason);
    }

    void pass() {
        for (int i = 0; i < 6 && !conflict_; ++i) {
            // R1: zero node
            if (node_is(i, true)) {
                mark_zero(i, "R1", nlabel(i) + " = 0");
                mark_zero(prv(i), "R1", nlabel(i) + " = 0");
            }
            // literal zero maps
            if (map(i) && map(i)->is_zero_map()) zero_[static_cast<std::size_t>(i)] = true;
        }
        for (int i = 0; i < 6 && !conflict_; ++i) {
            derive_surjective(i);
            derive_injective(i);
        }
        for (int i = 0; i < 6 && !conflict_; ++i) {
            if (surj_[static_cast<std::size_t>(i)])
                mark_zero(nxt(i), "R3", mlabel(i) + " is onto, so the next map vanishes");
            if (inj_[static_cast<std::size_t>(i)])
                mark_zero(prv(i), "R2", mlabel(i) + " is injective, so the previous map has zero image");
        }
        // run the derivation at every node: unknown slots get solved, known
        // slots are cross-checked against the derivable value (R5)
        for (int i = 0; i < 6 && !conflict_; ++i) solve_node(i, nullptr);
        for (int i = 0; i < 6 && !conflict_; ++i) check_composition(i);
        for (int i = 0; i < 6 && !conflict_; ++i) materialize_zero(i);
    }

    void derive_surjective(int i) {
        auto& f = surj_[static_cast<std::size_t>(i)];
        if (f) return;
        if (node_is(nxt(i), true)) {
            f = true;
            return;
        }
        if (zero_[static_cast<std::size_t>(nxt(i))]) {
            f = true;
            changed_ = true;
            log("R2", "map " + mlabel(i), "onto",
                "the next map vanishes, so exactness makes the image everything");
            return;
        }
        if (map(i) && node(i) && node(nxt(i))) {
            if (map(i)->fully_known()) {
                if (cokernel_of(map(i)->matrix(), *node(nxt(i))).is_zero()) {
                    f = true;
                    changed_ = true;
                    log("R3", "map " + mlabel(i), "onto", "zero cokernel");
                }
            } else if (surjective_for_all_completions(*map(i))) {
                f = true;
                changed_ = true;
                log("R3", "map " + mlabel(i), "onto",
                    "known columns generate the codomain, so every completion is onto");
            }
        }
    }

    void derive_injective(int i) {
        auto& f = inj_[static_cast<std::size_t>(i)];
        if (f) return;
        if (node_is(i, true)) {
            f = true;
            return;
        }
        if (zero_[static_cast<std::size_t>(prv(i))]) {
            f = true;
            changed_ = true;
            log("R2", "map " + mlabel(i), "injective", "the incoming map vanishes");
        }
    }

    struct AbsValue {
        std::optional<AbelianGroup> g;
        std::string how;
        std::string block;
    };

    // im(map[prv(i)]) as an abstract group
    AbsValue incoming_image(int i) {
        int p = prv(i);
        if (zero_[static_cast<std::size_t>(p)]) return {AbelianGroup::zero(), mlabel(p) + " vanishes", ""};
        if (map(p) && map(p)->fully_known() && node(i))
            return {image_group_of(map(p)->matrix(), *node(i)), "image of " + mlabel(p), ""};
        if (inj_[static_cast<std::size_t>(p)] && node(p))
            return {*node(p), mlabel(p) + " is injective", ""};
        return {std::nullopt, "", "image of " + mlabel(p) + " undetermined"};
    }

    // im(map[i]) = ker(map[nxt(i)]) as an abstract group; the concrete kernel
    // route comes first so an explicit sublattice basis is available whenever
    // the next map is fully known
    AbsValue outgoing_image(int i) {
        if (zero_[static_cast<std::size_t>(i)]) return {AbelianGroup::zero(), mlabel(i) + " vanishes", ""};
        int n = nxt(i);
        if (map(n) && node(n) && node(nxt(n))) {
            if (map(n)->fully_known()) {
                auto ker = kernel_group_of(map(n)->matrix(), *node(n), *node(nxt(n)));
                last_kernel_basis_ = ker.basis;
                return {ker.group, "kernel of " + mlabel(n), ""};
            }
            if (node(n)->is_free() && node(nxt(n))->is_free() &&
                surjective_for_all_completions(*map(n))) {
                last_kernel_basis_.reset();
                // kernel of a surjection of free groups is free of complementary rank
                return {AbelianGroup::free(node(n)->free_rank() - node(nxt(n))->free_rank()),
                        "kernel of the certified-onto " + mlabel(n), ""};
            }
        }
        if (surj_[static_cast<std::size_t>(i)] && node(nxt(i)))
            return {*node(nxt(i)), mlabel(i) + " is onto", ""};
        return {std::nullopt, "", "kernel of " + mlabel(nxt(i)) + " undetermined"};
    }

    void solve_node(int i, std::vector<std::string>* reasons) {
        last_kernel_basis_.reset();
        AbsValue a = incoming_image(i);
        AbsValue b = outgoing_image(i);
        if (a.g && b.g) {
            if (a.g->is_zero()) {
                assign(i, *b.g, "R2", "0 -> X -> B exact with B = " + b.g->to_string() + " (" + b.how + ")");
                if (!conflict_) materialize_kernel_embedding(i, *b.g);
                return;
            }
            if (b.g->is_zero()) {
                assign(i, *a.g, "R2", "A -> X -> 0 exact with A = " + a.g->to_string() + " (" + a.how + ")");
                return;
            }
            if (b.g->is_free()) {
                assign(i, direct_sum(*a.g, *b.g), "R4",
                       "0 -> " + a.g->to_string() + " -> X -> " + b.g->to_string() +
                           " -> 0 splits (free quotient); A via " + a.how + ", B via " + b.how);
                return;
            }
            if (reasons)
                reasons->push_back(nlabel(i) + ": extension ambiguity in 0 -> " + a.g->to_string() +
                                   " -> X -> " + b.g->to_string() + " -> 0 (torsion quotient)");
            return;
        }
        // cokernel route: an onto incoming map whose kernel is the image of a
        // fully known map two slots back
        int p = prv(i), pp = prv(p);
        if (surj_[static_cast<std::size_t>(p)] && map(pp) && map(pp)->fully_known() && node(p)) {
            AbelianGroup cok = cokernel_of(map(pp)->matrix(), *node(p));
            assign(i, cok, "R2",
                   nlabel(i) + " = coker(" + mlabel(pp) + ") since " + mlabel(p) + " is onto");
            if (!conflict_) materialize_cokernel_projection(i, p, pp);
            return;
        }
        if (reasons) {
            std::string r = nlabel(i) + ": ";
            r += a.g ? "incoming image known (" + a.how + ")" : a.block;
            r += "; ";
            r += b.g ? "outgoing image known (" + b.how + ")" : b.block;
            reasons->push_back(r);
        }
    }

    // When X ~= ker(map[nxt]) with an explicit basis and everything in sight
    // is free, the inclusion X -> node[nxt] is that basis; record it so a
    // fully solved degenerate sequence can be re-checked for exactness.
    void materialize_kernel_embedding(int i, const AbelianGroup& x) {
        int n = nxt(i);
        if (!last_kernel_basis_ || map(i) || !node(n)) return;
        if (!x.is_free() || !node(n)->is_free()) return;
        if (last_kernel_basis_->cols() != x.free_rank()) return;
        map(i) = GroupHom::known(x, *node(n), *last_kernel_basis_);
        log("R2", "map " + mlabel(i), to_string(*last_kernel_basis_),
            "kernel sublattice basis realizes the injection");
    }

    void materialize_cokernel_projection(int i, int p, int pp) {
        if (map(p) || !node(p) || !node(i)) return;
        Presentation pres(node(p)->generators(),
                          hstack(map(pp)->matrix(), node(p)->relations()));
        CanonicalIso iso = iso_to_canonical(pres);
        if (iso.group != *node(i)) return;
        map(p) = GroupHom::known(*node(p), *node(i), iso.phi);
        log("R2", "map " + mlabel(p), to_string(iso.phi), "canonical projection onto the cokernel");
    }

    void check_composition(int i) {
        int n = nxt(i);
        if (!map(i) || !map(n) || !map(i)->fully_known() || !map(n)->fully_known()) return;
        IntMatrix prod = map(n)->matrix() * map(i)->matrix();
        if (prod.cols() == 0 || prod.rows() == 0) return;
        IntMatrix rel = map(n)->codomain.relations();
        if (!lattice_contains(rel.cols() ? rel : IntMatrix(prod.rows(), 0), prod)) {
            if (!(rel.cols() == 0 && prod.is_zero()))
                fail("R5: composite " + mlabel(i) + " then " + mlabel(n) + " is nonzero");
        } else if (rel.cols() == 0 && !prod.is_zero()) {
            fail("R5: composite " + mlabel(i) + " then " + mlabel(n) + " is nonzero");
        }
    }

    SolveReport finalize() {
        SolveReport rep;
        rep.steps = steps_;
        if (conflict_) {
            rep.status = SolveStatus::Inconsistent;
            for (const auto& st : steps_)
                rep.witness.push_back(st.rule + ": " + st.target + " = " + st.value + " (" + st.reason + ")");
            rep.witness.push_back(*conflict_);
            rep.seq = std::move(s_);
            return rep;
        }
        bool all_nodes = true;
        for (int i = 0; i < 6; ++i) {
            if (node(i)) continue;
            all_nodes = false;
            std::vector<std::string> reasons;
            solve_node(i, &reasons);
            if (reasons.empty()) reasons.push_back(nlabel(i) + ": no applicable rule");
            for (auto& r : reasons) rep.unresolved.push_back(std::move(r));
        }
        for (int i = 0; i < 6; ++i)
            if (!map(i) || !map(i)->fully_known())
                rep.unresolved.push_back("map " + mlabel(i) + " not fully determined");
        if (!all_nodes) {
            rep.status = SolveStatus::Underdetermined;
            rep.seq = std::move(s_);
            return rep;
        }
        bool all_maps = true;
        for (int i = 0; i < 6; ++i)
            all_maps = all_maps && map(i) && map(i)->fully_known();
        if (all_maps) {
            ExactnessReport ex = check_exactness(s_);
            if (!ex.ok) {
                rep.status = SolveStatus::Inconsistent;
                rep.witness.push_back("R5: fully determined sequence is not exact: " + ex.detail);
                rep.seq = std::move(s_);
                return rep;
            }
        }
        rep.status = SolveStatus::Solved;
        rep.seq = std::move(s_);
        return rep;
    }

    SixTermSequence s_;
    std::array<bool, 6> zero_{}, surj_{}, inj_{};
    std::vector<DerivationStep> steps_;
    std::optional<std::string> conflict_;
    std::optional<IntMatrix> last_kernel_basis_;
    bool changed_ = false;
};

}  // namespace detail

inline SolveReport solve(const SixTermSequence& seq) { return detail::Chase(seq).run(); }

}  // namespace mpk
