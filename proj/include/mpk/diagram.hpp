#pragma once

// Triple-pullback families at the K-level: the iterated pullback
// decomposition into three Mayer-Vietoris problems and the pipeline that
// chains their solutions.
//
// A family carries K-data for the components B_i, the shared overlaps
// B_ij = B_ji, and (for three indices) the common quotient B^pi_123, plus
// the induced homomorphisms of every pi^i_j : B_i -> B_ij and of every
// eta : B_ij -> B^pi_123.  The decomposition for an order (a,b,c) is
//   stage 1:  P1 = pb(B_a -> B_ab <- B_b)
//   stage 2:  P2 = pb(B_ac -> B^pi_123 <- B_bc)
//   stage 3:  B^pi = pb(P1 -gamma-> P2 <-delta- B_c)
// and is only valid when the family's cocycle certificate is present.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpk/abgroup.hpp"
#include "mpk/sixterm.hpp"

namespace mpk {

struct KPair {
    AbelianGroup k0, k1;

    bool operator==(const KPair& o) const { return k0 == o.k0 && k1 == o.k1; }
    bool operator!=(const KPair& o) const { return !(*this == o); }
    std::string to_string() const { return "K0 = " + k0.to_string() + ", K1 = " + k1.to_string(); }
};

enum class Provenance { Given, ExternalFact, Derived };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Given: return "given";
        case Provenance::ExternalFact: return "external-fact";
        default: return "derived";
    }
}

struct KNode {
    KPair k;
    // class of the unit in the canonical K0 basis, when tracked
    std::optional<std::vector<Int>> unit_k0;
    Provenance prov = Provenance::Given;
    std::string note;
};

// induced maps of one algebra arrow; an absent slot is a wholly unknown map
struct ArrowData {
    std::optional<GroupHom> k0, k1;
};

struct MissingCertificate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PullbackFamily {
    std::vector<int> J;                              // {1,2} or {1,2,3}
    std::map<int, KNode> component;                  // B_i
    std::map<std::pair<int, int>, KNode> overlap;    // key (i<j): B_ij
    std::optional<KNode> triple;                     // B^pi_123 (|J| = 3)
    std::map<std::pair<int, int>, ArrowData> pi;     // ordered (i,j): pi^i_j
    std::map<std::pair<int, int>, ArrowData> eta;    // key (i<j): B_ij -> B^pi_123
    bool cocycle_certified = false;
    std::string certificate_source;

    const KNode& comp(int i) const {
        auto it = component.find(i);
        if (it == component.end()) throw MissingData("missing K-data for B" + std::to_string(i));
        return it->second;
    }
    const KNode& over(int i, int j) const {
        auto it = overlap.find(std::minmax(i, j));
        if (it == overlap.end())
            throw MissingData("missing K-data for B" + std::to_string(std::min(i, j)) +
                              std::to_string(std::max(i, j)));
        return it->second;
    }
    const ArrowData& pi_arrow(int i, int j) const {
        auto it = pi.find({i, j});
        if (it == pi.end())
            throw MissingData("missing arrow data for pi^" + std::to_string(i) + "_" + std::to_string(j));
        return it->second;
    }
    const ArrowData& eta_arrow(int i, int j) const {
        auto it = eta.find(std::minmax(i, j));
        if (it == eta.end())
            throw MissingData("missing arrow data for eta from B" + std::to_string(std::min(i, j)) +
                              std::to_string(std::max(i, j)));
        return it->second;
    }
};

struct ExternalFact {
    std::string node;  // "P1", "P2" or "B^pi"
    KPair k;
    std::string citation;
    std::optional<std::vector<Int>> unit_k0;
};

struct SixTermProblem {
    std::string label;
    SixTermSequence seq;
};

namespace detail {

// sum.generators() canonical coordinates written in concatenated (A then B)
// generator coordinates
struct SumWithCoords {
    AbelianGroup sum;
    IntMatrix into_concat;
};

inline SumWithCoords direct_sum_with_coords(const AbelianGroup& a, const AbelianGroup& b) {
    const int n = a.generators() + b.generators();
    IntMatrix rel(n, static_cast<int>(a.torsion().size() + b.torsion().size()));
    IntMatrix ra = a.relations(), rb = b.relations();
    for (int i = 0; i < ra.rows(); ++i)
        for (int j = 0; j < ra.cols(); ++j) rel(i, j) = ra(i, j);
    for (int i = 0; i < rb.rows(); ++i)
        for (int j = 0; j < rb.cols(); ++j) rel(a.generators() + i, ra.cols() + j) = rb(i, j);
    Presentation pres(n, rel);
    SmithResult s = smith_normal_form(pres.relations);
    std::vector<Int> diag = s.diagonal();
    diag.resize(static_cast<std::size_t>(n), Int(0));
    std::vector<int> pick;
    for (int i = 0; i < n; ++i)
        if (diag[static_cast<std::size_t>(i)] == 0) pick.push_back(i);
    std::vector<Int> torsion;
    for (int i = 0; i < n; ++i)
        if (diag[static_cast<std::size_t>(i)] >= 2) {
            pick.push_back(i);
            torsion.push_back(diag[static_cast<std::size_t>(i)]);
        }
    int free_rank = 0;
    for (int i = 0; i < n; ++i)
        if (diag[static_cast<std::size_t>(i)] == 0) ++free_rank;
    AbelianGroup sum(free_rank, torsion);
    auto uinv = integer_solve(s.u, IntMatrix::identity(n));
    if (!uinv) throw std::logic_error("direct_sum_with_coords: transform not invertible");
    IntMatrix psi = uinv->select_cols(pick);
    return {std::move(sum), std::move(psi)};
}

// difference map K(A1) + K(A2) -> K(A12): block [f | -g] in canonical
// coordinates of the direct sum, preserving Unknown entries when the
// summands are free
inline GroupHom assemble_difference(const std::optional<GroupHom>& f,
                                    const std::optional<GroupHom>& g, const AbelianGroup& dom_a,
                                    const AbelianGroup& dom_b, const AbelianGroup& codomain) {
    if (dom_a.is_free() && dom_b.is_free()) {
        PartialMatrix m(codomain.generators(), dom_a.generators() + dom_b.generators());
        if (f)
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < dom_a.generators(); ++j) m(i, j) = f->entries(i, j);
        if (g)
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < dom_b.generators(); ++j) {
                    const MaybeInt& e = g->entries(i, j);
                    m(i, dom_a.generators() + j) = e ? MaybeInt(-*e) : std::nullopt;
                }
        return GroupHom(AbelianGroup::free(dom_a.generators() + dom_b.generators()), codomain,
                        std::move(m));
    }
    if (!f || !g || !f->fully_known() || !g->fully_known())
        throw MissingData("difference map with a torsion summand needs fully known arrow data");
    IntMatrix neg = g->matrix();
    for (int i = 0; i < neg.rows(); ++i)
        for (int j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    IntMatrix concat = hstack(f->matrix(), neg);
    SumWithCoords sc = direct_sum_with_coords(dom_a, dom_b);
    return GroupHom::known(sc.sum, codomain, concat * sc.into_concat);
}

}  // namespace detail

// One Mayer-Vietoris problem over (A; A1, A2; A12) with the two arrows into
// A12; the K-groups of A are the unknowns.
inline SixTermProblem make_mv_problem(const std::string& a_name, const std::string& a1_name,
                                      const KNode& a1, const std::string& a2_name, const KNode& a2,
                                      const std::string& a12_name, const KNode& a12,
                                      const ArrowData& f, const ArrowData& g) {
    SixTermProblem p;
    p.label = a_name;
    SixTermSequence& s = p.seq;
    s.node_labels = {"K0(" + a_name + ")", "K0(" + a1_name + ")+K0(" + a2_name + ")",
                     "K0(" + a12_name + ")", "K1(" + a_name + ")",
                     "K1(" + a1_name + ")+K1(" + a2_name + ")", "K1(" + a12_name + ")"};
    s.relabel_maps();
    s.nodes[1] = direct_sum(a1.k.k0, a2.k.k0);
    s.nodes[2] = a12.k.k0;
    s.nodes[4] = direct_sum(a1.k.k1, a2.k.k1);
    s.nodes[5] = a12.k.k1;
    s.maps[1] = detail::assemble_difference(f.k0, g.k0, a1.k.k0, a2.k.k0, a12.k.k0);
    s.maps[4] = detail::assemble_difference(f.k1, g.k1, a1.k.k1, a2.k.k1, a12.k.k1);
    return p;
}

// The three six-term problem instances of the iterated decomposition, in
// pipeline order.  For |J| = 2 the decomposition degenerates to the single
// plain-pullback problem.
inline std::vector<SixTermProblem> decompose_iterated(const PullbackFamily& fam,
                                                      std::array<int, 3> order = {1, 2, 3}) {
    if (!fam.cocycle_certified)
        throw MissingCertificate("family carries no cocycle certificate; refusing to decompose");
    if (fam.J.size() == 2) {
        int i = fam.J[0], j = fam.J[1];
        std::string bi = "B" + std::to_string(i), bj = "B" + std::to_string(j);
        std::string bij = "B" + std::to_string(i) + std::to_string(j);
        return {make_mv_problem("B^pi", bi, fam.comp(i), bj, fam.comp(j), bij, fam.over(i, j),
                                fam.pi_arrow(i, j), fam.pi_arrow(j, i))};
    }
    if (fam.J.size() != 3) throw MissingData("family must have two or three indices");
    std::array<int, 3> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (!std::equal(sorted.begin(), sorted.end(), fam.J.begin()))
        throw std::invalid_argument("decompose_iterated: order must be a permutation of J");
    if (!fam.triple) throw MissingData("missing K-data for B^pi_123");
    const int a = order[0], b = order[1], c = order[2];
    auto name = [](int i, int j) {
        return "B" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j));
    };

    std::vector<SixTermProblem> probs;
    probs.push_back(make_mv_problem("P1", "B" + std::to_string(a), fam.comp(a),
                                    "B" + std::to_string(b), fam.comp(b), name(a, b),
                                    fam.over(a, b), fam.pi_arrow(a, b), fam.pi_arrow(b, a)));
    probs.push_back(make_mv_problem("P2", name(a, c), fam.over(a, c), name(b, c), fam.over(b, c),
                                    "B^pi_123", *fam.triple, fam.eta_arrow(a, c),
                                    fam.eta_arrow(b, c)));
    // stage 3 skeleton; the pipeline fills in P1 and P2 data once known
    SixTermProblem p3;
    p3.label = "B^pi";
    p3.seq.node_labels = {"K0(B^pi)", "K0(P1)+K0(B" + std::to_string(c) + ")", "K0(P2)",
                          "K1(B^pi)", "K1(P1)+K1(B" + std::to_string(c) + ")", "K1(P2)"};
    p3.seq.relabel_maps();
    probs.push_back(std::move(p3));
    return probs;
}

struct StageRecord {
    std::string label;
    SixTermSequence input;
    SolveReport report;
    std::vector<std::string> facts_used;
    std::optional<KPair> resolved;
    Provenance how = Provenance::Derived;
};

struct DerivationTrace {
    std::array<int, 3> order{1, 2, 3};
    std::vector<StageRecord> stages;
    SolveStatus status = SolveStatus::Underdetermined;
    std::optional<KPair> result;
};

struct PipelineResult {
    SolveStatus status = SolveStatus::Underdetermined;
    std::optional<KPair> k;
    int failed_stage = -1;  // 1-based stage index when not Solved
    DerivationTrace trace;
};

namespace detail {

struct StageOutcome {
    std::optional<KPair> k;
    std::optional<IntMatrix> basis_k0, basis_k1;  // embeddings into the summand K-groups
    std::optional<std::vector<Int>> unit_k0;
};

inline StageOutcome resolve_stage(const SixTermProblem& prob, const SolveReport& rep,
                                  const std::vector<ExternalFact>& facts, StageRecord& rec) {
    StageOutcome out;
    if (rep.status == SolveStatus::Solved) {
        out.k = KPair{*rep.node(0), *rep.node(3)};
        rec.resolved = out.k;
        rec.how = Provenance::Derived;
        // the materialized embedding into the summand K-groups doubles as a
        // lattice basis for the solved group, provided it is injective
        if (rep.seq.maps[0] && rep.seq.maps[0]->fully_known() && rep.node(0)->is_free()) {
            IntMatrix b = rep.seq.maps[0]->matrix();
            if (rank(b) == rep.node(0)->generators()) out.basis_k0 = std::move(b);
        }
        if (rep.seq.maps[3] && rep.seq.maps[3]->fully_known() && rep.node(3)->is_free()) {
            IntMatrix b = rep.seq.maps[3]->matrix();
            if (rank(b) == rep.node(3)->generators()) out.basis_k1 = std::move(b);
        }
        return out;
    }
    for (const auto& f : facts) {
        if (f.node != prob.label) continue;
        out.k = f.k;
        out.unit_k0 = f.unit_k0;
        rec.resolved = out.k;
        rec.how = Provenance::ExternalFact;
        rec.facts_used.push_back(f.node + " = (" + f.k.k0.to_string() + ", " + f.k.k1.to_string() +
                                 ") per " + f.citation);
        return out;
    }
    return out;
}

// is v the coordinate vector of a single canonical generator?
inline std::optional<int> standard_basis_index(const std::vector<Int>& v) {
    std::optional<int> idx;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 || idx) return std::nullopt;
        idx = static_cast<int>(i);
    }
    return idx;
}

// induced map of gamma(p) = (pi^a_c(p_a), pi^b_c(p_b)) on a tracked kernel
// basis, expressed in the stage-2 kernel basis
inline std::optional<GroupHom> induced_on_bases(const std::optional<GroupHom>& top,
                                                const std::optional<GroupHom>& bottom,
                                                const std::optional<IntMatrix>& basis1,
                                                const std::optional<IntMatrix>& basis2,
                                                const AbelianGroup& dom, const AbelianGroup& cod) {
    if (!basis1 || !basis2 || !top || !bottom || !top->fully_known() || !bottom->fully_known())
        return std::nullopt;
    IntMatrix t = top->matrix(), u = bottom->matrix();
    if (basis1->rows() != t.cols() + u.cols()) return std::nullopt;
    IntMatrix stacked(t.rows() + u.rows(), basis1->cols());
    for (int j = 0; j < basis1->cols(); ++j) {
        for (int r = 0; r < t.rows(); ++r) {
            Int acc = 0;
            for (int k = 0; k < t.cols(); ++k) acc += t(r, k) * (*basis1)(k, j);
            stacked(r, j) = acc;
        }
        for (int r = 0; r < u.rows(); ++r) {
            Int acc = 0;
            for (int k = 0; k < u.cols(); ++k) acc += u(r, k) * (*basis1)(t.cols() + k, j);
            stacked(t.rows() + r, j) = acc;
        }
    }
    auto y = integer_solve(*basis2, stacked);
    if (!y) return std::nullopt;  // image escapes the pullback lattice: leave unknown
    if (y->rows() != cod.generators() || y->cols() != dom.generators()) return std::nullopt;
    return GroupHom::known(dom, cod, *y);
}

// delta(c) = (pi^c_a(x), pi^c_b(x)) expressed in the stage-2 kernel basis
inline std::optional<GroupHom> induced_delta(const std::optional<GroupHom>& pa,
                                             const std::optional<GroupHom>& pb,
                                             const std::optional<IntMatrix>& basis2,
                                             const AbelianGroup& dom, const AbelianGroup& cod) {
    if (!basis2 || !pa || !pb || !pa->fully_known() || !pb->fully_known()) return std::nullopt;
    IntMatrix stacked = vstack(pa->matrix(), pb->matrix());
    auto y = integer_solve(*basis2, stacked);
    if (!y) return std::nullopt;
    if (y->rows() != cod.generators() || y->cols() != dom.generators()) return std::nullopt;
    return GroupHom::known(dom, cod, *y);
}

// unitality fallback: a unital arrow sends the domain's unit class to the
// codomain's; when the unit is itself a canonical generator this pins one
// column and leaves the rest unknown
inline std::optional<GroupHom> unit_rule_hom(const std::optional<std::vector<Int>>& dom_unit,
                                             const std::optional<std::vector<Int>>& cod_unit,
                                             const AbelianGroup& dom, const AbelianGroup& cod) {
    if (!dom_unit || !cod_unit) return std::nullopt;
    auto idx = standard_basis_index(*dom_unit);
    if (!idx || cod_unit->size() != static_cast<std::size_t>(cod.generators())) return std::nullopt;
    PartialMatrix m(cod.generators(), dom.generators());
    for (int i = 0; i < m.rows(); ++i) m(i, *idx) = (*cod_unit)[static_cast<std::size_t>(i)];
    return GroupHom(dom, cod, std::move(m));
}

}  // namespace detail

// Chain the three Mayer-Vietoris problems: solve stage 1, solve stage 2 (or
// accept an external fact when it is underdetermined), assemble stage 3 from
// whatever is known about gamma and delta, and solve it.
inline PipelineResult run_pipeline(const PullbackFamily& fam, std::vector<ExternalFact> facts,
                                   std::array<int, 3> order = {1, 2, 3}) {
    for (const auto& f : facts)
        if (f.citation.empty())
            throw std::invalid_argument("external fact for " + f.node + " carries no citation");

    PipelineResult out;
    out.trace.order = order;
    std::vector<SixTermProblem> probs = decompose_iterated(fam, order);

    auto run_stage = [&](const SixTermProblem& prob) -> detail::StageOutcome {
        StageRecord rec;
        rec.label = prob.label;
        rec.input = prob.seq;
        rec.report = solve(prob.seq);
        detail::StageOutcome o = detail::resolve_stage(prob, rec.report, facts, rec);
        out.trace.stages.push_back(std::move(rec));
        return o;
    };

    if (fam.J.size() == 2) {
        detail::StageOutcome o = run_stage(probs[0]);
        const SolveReport& rep = out.trace.stages.back().report;
        out.status = rep.status;
        out.trace.status = rep.status;
        if (o.k) {
            out.k = o.k;
            out.trace.result = o.k;
            out.status = SolveStatus::Solved;
            out.trace.status = SolveStatus::Solved;
        } else if (out.status != SolveStatus::Solved) {
            out.failed_stage = 1;
        }
        return out;
    }

    const int a = order[0], b = order[1], c = order[2];

    detail::StageOutcome s1 = run_stage(probs[0]);
    if (out.trace.stages.back().report.status == SolveStatus::Inconsistent) {
        out.status = out.trace.status = SolveStatus::Inconsistent;
        out.failed_stage = 1;
        return out;
    }
    if (!s1.k) {
        out.status = out.trace.status = SolveStatus::Underdetermined;
        out.failed_stage = 1;
        return out;
    }

    detail::StageOutcome s2 = run_stage(probs[1]);
    if (out.trace.stages.back().report.status == SolveStatus::Inconsistent) {
        out.status = out.trace.status = SolveStatus::Inconsistent;
        out.failed_stage = 2;
        return out;
    }
    if (!s2.k) {
        out.status = out.trace.status = SolveStatus::Underdetermined;
        out.failed_stage = 2;
        return out;
    }

    // assemble stage 3
    SixTermProblem p3 = probs[2];
    const KNode& bc_node = fam.comp(c);
    p3.seq.nodes[1] = direct_sum(s1.k->k0, bc_node.k.k0);
    p3.seq.nodes[2] = s2.k->k0;
    p3.seq.nodes[4] = direct_sum(s1.k->k1, bc_node.k.k1);
    p3.seq.nodes[5] = s2.k->k1;

    std::optional<GroupHom> gamma_k0 = detail::induced_on_bases(
        fam.pi_arrow(a, c).k0, fam.pi_arrow(b, c).k0, s1.basis_k0, s2.basis_k0, s1.k->k0, s2.k->k0);
    std::optional<GroupHom> delta_k0 = detail::induced_delta(
        fam.pi_arrow(c, a).k0, fam.pi_arrow(c, b).k0, s2.basis_k0, bc_node.k.k0, s2.k->k0);
    if (!delta_k0)
        delta_k0 = detail::unit_rule_hom(bc_node.unit_k0, s2.unit_k0, bc_node.k.k0, s2.k->k0);
    p3.seq.maps[1] =
        detail::assemble_difference(gamma_k0, delta_k0, s1.k->k0, bc_node.k.k0, s2.k->k0);

    std::optional<GroupHom> gamma_k1 = detail::induced_on_bases(
        fam.pi_arrow(a, c).k1, fam.pi_arrow(b, c).k1, s1.basis_k1, s2.basis_k1, s1.k->k1, s2.k->k1);
    if (!gamma_k1 && s1.k->k1.is_zero()) gamma_k1 = GroupHom::zero(s1.k->k1, s2.k->k1);
    std::optional<GroupHom> delta_k1 = detail::induced_delta(
        fam.pi_arrow(c, a).k1, fam.pi_arrow(c, b).k1, s2.basis_k1, bc_node.k.k1, s2.k->k1);
    if (!delta_k1 && bc_node.k.k1.is_zero()) delta_k1 = GroupHom::zero(bc_node.k.k1, s2.k->k1);
    p3.seq.maps[4] =
        detail::assemble_difference(gamma_k1, delta_k1, s1.k->k1, bc_node.k.k1, s2.k->k1);

    detail::StageOutcome s3 = run_stage(p3);
    const SolveReport& rep3 = out.trace.stages.back().report;
    if (rep3.status == SolveStatus::Inconsistent) {
        out.status = out.trace.status = SolveStatus::Inconsistent;
        out.failed_stage = 3;
        return out;
    }
    if (!s3.k) {
        out.status = out.trace.status = SolveStatus::Underdetermined;
        out.failed_stage = 3;
        return out;
    }
    out.k = s3.k;
    out.trace.result = s3.k;
    out.status = out.trace.status = SolveStatus::Solved;
    return out;
}

// ---------------------------------------------------------------------------
// Built-in scenarios.

// Triple-Toeplitz deformation of the projective plane: three copies of the
// Toeplitz tensor square glued over cylinder algebras, with the two-torus
// algebra as the common quotient.  K-data of the pieces is standard; only
// unitality is recorded for the maps into the torus node, so their Bott-row
// entries stay Unknown.
inline PullbackFamily build_cp2_family() {
    PullbackFamily fam;
    fam.J = {1, 2, 3};
    KPair toeplitz2{AbelianGroup::free(1), AbelianGroup::zero()};
    KPair cylinder{AbelianGroup::free(1), AbelianGroup::free(1)};
    KPair torus{AbelianGroup::free(2), AbelianGroup::free(2)};

    for (int i : fam.J) {
        KNode n;
        n.k = toeplitz2;
        n.unit_k0 = std::vector<Int>{1};
        n.prov = Provenance::Given;
        n.note = "K0 generated by [1(x)1]; odd K-group vanishes";
        fam.component[i] = n;
    }
    for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        KNode n;
        n.k = cylinder;
        n.unit_k0 = std::vector<Int>{1};
        n.prov = Provenance::Given;
        n.note = "K0 generated by [1(x)1]";
        fam.overlap[{i, j}] = n;
    }
    {
        KNode n;
        n.k = torus;
        n.unit_k0 = std::vector<Int>{1, 0};
        n.prov = Provenance::ExternalFact;
        n.note = "Kunneth for the two-torus algebra; generators [1] and the Bott class";
        fam.triple = n;
    }

    AbelianGroup z = AbelianGroup::free(1), z2 = AbelianGroup::free(2), o = AbelianGroup::zero();
    IntMatrix one(1, 1);
    one(0, 0) = 1;
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{1, 3}, std::pair{3, 1},
                        std::pair{2, 3}, std::pair{3, 2}}) {
        ArrowData ad;
        ad.k0 = GroupHom::known(z, z, one);   // unit class to unit class
        ad.k1 = GroupHom::known(o, z, IntMatrix(1, 0));
        fam.pi[{i, j}] = ad;
    }
    for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        ArrowData ad;
        PartialMatrix k0(2, 1);
        k0(0, 0) = Int(1);  // unit row; Bott row unknown
        ad.k0 = GroupHom(z, z2, k0);
        PartialMatrix k1(2, 1);  // nothing known about the odd maps
        ad.k1 = GroupHom(z, z2, k1);
        fam.eta[{i, j}] = ad;
    }
    fam.cocycle_certified = true;
    fam.certificate_source = "[pmh, Lemma 3.2]";
    return fam;
}

inline ExternalFact cp2_p2_fact() {
    ExternalFact f;
    f.node = "P2";
    f.k = KPair{AbelianGroup::free(1), AbelianGroup::free(1)};
    f.citation = "[Section 3, hms]";
    f.unit_k0 = std::vector<Int>{1};  // K0(P2) generated by the unit
    return f;
}

// Mirror quantum sphere: two Toeplitz algebras glued over the circle.
inline PullbackFamily build_mirror_family() {
    PullbackFamily fam;
    fam.J = {1, 2};
    for (int i : fam.J) {
        KNode n;
        n.k = KPair{AbelianGroup::free(1), AbelianGroup::zero()};
        n.unit_k0 = std::vector<Int>{1};
        n.note = "Toeplitz algebra K-groups";
        fam.component[i] = n;
    }
    KNode circle;
    circle.k = KPair{AbelianGroup::free(1), AbelianGroup::free(1)};
    circle.unit_k0 = std::vector<Int>{1};
    circle.note = "circle algebra K-groups";
    fam.overlap[{1, 2}] = circle;

    AbelianGroup z = AbelianGroup::free(1), o = AbelianGroup::zero();
    IntMatrix one(1, 1);
    one(0, 0) = 1;
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}}) {
        ArrowData ad;
        ad.k0 = GroupHom::known(z, z, one);
        ad.k1 = GroupHom::known(o, z, IntMatrix(1, 0));
        fam.pi[{i, j}] = ad;
    }
    fam.cocycle_certified = true;
    fam.certificate_source = "vacuous for two indices";
    return fam;
}

}  // namespace mpk
