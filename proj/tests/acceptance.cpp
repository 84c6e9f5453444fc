// Acceptance suite: runs each headline criterion end to end, printing one
// PASS/FAIL line per criterion.  Scenario criteria drive the CLI binary
// (path given as argv[1]); algebraic criteria run in-process against
// independent oracles.  Exit code is the number of failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "mpk/finmodel.hpp"
#include "mpk/serialize.hpp"

using namespace mpk;

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
    double ms = 0.0;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    auto t0 = std::chrono::steady_clock::now();
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int g_failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << what << "\n";
    if (!ok) ++g_failures;
}

// --- criterion 1: cp2 reproduces K0 = Z^3, K1 = 0 with the stage-1
// intermediate visible, in under a second ---
void criterion_1() {
    RunResult r = run_cli("cp2");
    bool ok = r.exit_code == 0 && contains(r.out, "result: K0 = Z^3, K1 = 0") &&
              contains(r.out, "stage 1 (P1): Solved: K0 = Z^2, K1 = 0") &&
              contains(r.out, "status: Solved") && r.ms < 1000.0;
    report(1, ok,
           "cp2 gives K0 = Z^3, K1 = 0 with stage-1 K0(P1) = Z^2, K1(P1) = 0 visible (" +
               std::to_string(static_cast<int>(r.ms)) + " ms, exit " +
               std::to_string(r.exit_code) + ")");
}

// --- criterion 2: without the cited fact the P2 stage is underdetermined and
// the unknown connecting maps are named ---
void criterion_2() {
    RunResult r = run_cli("cp2 --no-external-facts");
    bool ok = r.exit_code == 2 && contains(r.out, "stage 2 (P2): Underdetermined") &&
              contains(r.out, "status: Underdetermined") && contains(r.out, "connecting");
    report(2, ok, "cp2 --no-external-facts stops Underdetermined at P2, naming connecting maps");
}

// --- criterion 3: the stage-3 certificate fires with both coefficients
// unknown, and 100 random completions are surjective by direct normal form ---
void criterion_3() {
    PipelineResult res = run_pipeline(build_cp2_family(), {cp2_p2_fact()});
    bool ok = res.status == SolveStatus::Solved && res.trace.stages.size() == 3;
    const GroupHom* diff = nullptr;
    if (ok) {
        diff = &*res.trace.stages[2].input.maps[1];
        ok = diff->entries.rows() == 1 && diff->entries.cols() == 3 && !diff->entries(0, 0) &&
             !diff->entries(0, 1) && diff->entries(0, 2) && *diff->entries(0, 2) == -1;
    }
    if (ok) ok = surjective_for_all_completions(*diff);
    int surjective = 0;
    if (ok) {
        std::mt19937_64 g(5);
        for (int t = 0; t < 100; ++t) {
            IntMatrix m(1, 3);
            m(0, 0) = static_cast<long long>(g() % 11) - 5;  // k in [-5, 5]
            m(0, 1) = static_cast<long long>(g() % 11) - 5;  // k' in [-5, 5]
            m(0, 2) = -1;
            SmithResult s = smith_normal_form(m);
            bool onto = s.rank() == 1 && s.d(0, 0) == 1;
            if (onto) ++surjective;
        }
        ok = surjective == 100;
    }
    report(3, ok,
           "certificate fires on (m,n,l) -> km + k'n - l and " + std::to_string(surjective) +
               "/100 random completions are onto by direct SNF");
}

// --- criterion 4: mirror gives (Z^2, 0) and matches the degenerate-sequence
// oracle ---
void criterion_4() {
    RunResult r = run_cli("mirror");
    bool cli_ok = r.exit_code == 0 && contains(r.out, "result: K0 = Z^2, K1 = 0");
    // oracle: K0 = ker + K1(overlap), K1 = coker of the known difference map
    IntMatrix diff(1, 2);
    diff(0, 0) = 1;
    diff(0, 1) = -1;
    AbelianGroup oracle_k0 = direct_sum(kernel_of_free_map(diff).group, AbelianGroup::free(1));
    AbelianGroup oracle_k1 = cokernel_of(diff, AbelianGroup::free(1));
    PipelineResult lib = run_pipeline(build_mirror_family(), {});
    bool oracle_ok = lib.status == SolveStatus::Solved && lib.k->k0 == oracle_k0 &&
                     lib.k->k1 == oracle_k1 && oracle_k0 == AbelianGroup::free(2) &&
                     oracle_k1.is_zero();
    report(4, cli_ok && oracle_ok, "mirror returns (Z^2, 0), equal to the degenerate oracle");
}

// --- criterion 5: 200 constructive models pass every verification in under
// thirty seconds ---
void criterion_5() {
    RunResult r = run_cli("check-finite --trials 200 --seed 7 --max-size 6");
    bool ok = r.exit_code == 0 && contains(r.out, "trials passed: 200/200") &&
              contains(r.out, "status: Solved") && r.ms < 30000.0;
    report(5, ok,
           "check-finite --trials 200 --seed 7: 200/200 models pass all verifications (" +
               std::to_string(static_cast<int>(r.ms)) + " ms)");
}

// --- criterion 6: normal-form property suite over >= 1000 random matrices,
// against brute-force minor oracles ---

Int naive_det(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix sub(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c)
                if (c != j) sub(r - 1, cc++) = m(r, c);
        }
        Int term = m(0, j) * naive_det(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

Int minor_gcd(const IntMatrix& m, int k) {
    Int g = 0;
    std::vector<int> rsel(static_cast<std::size_t>(k)), csel(static_cast<std::size_t>(k));
    std::function<void(int, int)> cols_rec = [&](int start, int depth) {
        if (depth == k) {
            IntMatrix sub(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    sub(a, b) = m(rsel[static_cast<std::size_t>(a)], csel[static_cast<std::size_t>(b)]);
            g = gcd(g, naive_det(sub));
            return;
        }
        for (int c = start; c < m.cols(); ++c) {
            csel[static_cast<std::size_t>(depth)] = c;
            cols_rec(c + 1, depth + 1);
        }
    };
    std::function<void(int, int)> rows_rec = [&](int start, int depth) {
        if (depth == k) {
            cols_rec(0, 0);
            return;
        }
        for (int r = start; r < m.rows(); ++r) {
            rsel[static_cast<std::size_t>(depth)] = r;
            rows_rec(r + 1, depth + 1);
        }
    };
    rows_rec(0, 0);
    return abs(g);
}

void criterion_6() {
    std::mt19937_64 g(20260809);
    int trials = 1000, passed = 0;
    for (int t = 0; t < trials; ++t) {
        int rows = 1 + static_cast<int>(g() % 3), cols = 1 + static_cast<int>(g() % 3);
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = static_cast<long long>(g() % 7) - 3;

        bool ok = true;
        SmithResult s = smith_normal_form(m);
        ok = ok && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
        ok = ok && s.d == s.u * m * s.v;
        auto diag = s.diagonal();
        Int entry_g = 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) entry_g = gcd(entry_g, m(i, j));
        if (!diag.empty()) ok = ok && diag[0] == abs(entry_g);
        Int prod = 1;
        for (std::size_t k = 0; k < diag.size(); ++k) {
            ok = ok && diag[k] >= 0;
            if (k > 0 && diag[k] != 0) ok = ok && diag[k - 1] != 0 && diag[k] % diag[k - 1] == 0;
            prod *= diag[k];
            ok = ok && prod == minor_gcd(m, static_cast<int>(k) + 1);
        }
        HermiteResult h = hermite_normal_form(m);
        ok = ok && abs(determinant(h.u)) == 1 && h.h == h.u * m;
        if (ok) ++passed;
    }
    report(6, passed == trials,
           "SNF/HNF property suite: " + std::to_string(passed) + "/" + std::to_string(trials) +
               " random matrices satisfy transforms, chains and minor-gcd oracles");
}

// --- criterion 7: solved sequences with fully known maps re-check as exact;
// the cp2 pipeline is order-independent across all six decompositions ---
void criterion_7() {
    bool ok = true;
    int rechecked = 0;
    for (std::uint64_t seed = 300; seed < 330 && ok; ++seed) {
        FiniteGluingModel m = constructive_model(seed, 6, 3);
        PipelineResult res = run_pipeline(k_family(m), {});
        ok = ok && res.status == SolveStatus::Solved;
        for (const auto& st : res.trace.stages) {
            if (st.report.status != SolveStatus::Solved) continue;
            bool all_known = true;
            for (int i = 0; i < 6; ++i)
                all_known = all_known && st.report.seq.maps[static_cast<std::size_t>(i)] &&
                            st.report.seq.maps[static_cast<std::size_t>(i)]->fully_known();
            if (!all_known) continue;
            ++rechecked;
            ok = ok && check_exactness(st.report.seq).ok;
        }
    }
    ok = ok && rechecked > 0;

    std::array<std::array<int, 3>, 6> orders{
        {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    KPair expected{AbelianGroup::free(3), AbelianGroup::zero()};
    for (const auto& ord : orders) {
        PipelineResult res = run_pipeline(build_cp2_family(), {cp2_p2_fact()}, ord);
        ok = ok && res.status == SolveStatus::Solved && *res.k == expected;
    }
    report(7, ok,
           "exactness recheck on " + std::to_string(rechecked) +
               " fully determined solved sequences; cp2 equal across all 6 orders");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: mpk_acceptance <path-to-mpk-cli>\n";
        return 64;
    }
    g_cli = argv[1];
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
              << "\n";
    return g_failures;
}
