/// Acceptance suite: runs the full verification registry once and reports
/// one pass/fail line per acceptance criterion. Exit code 0 only when every
/// criterion and every module-level subcheck passes.

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "slitflow/analysis.hpp"

using namespace slitflow;

namespace {

struct Criterion {
    int id;
    std::string description;
    std::string check;
    std::vector<std::string> label_patterns;  // empty = every subcheck
};

const std::vector<Criterion> kCriteria = {
    {1, "endpoint asymptotics of |T'| and |T''|", "endpoint_rates",
     {"slope |T'| real approach", "slope |T''| real approach"}},
    {2, "Joukowski round-trip on 10^4 admissible points", "joukowski_roundtrip", {}},
    {3, "inversion difference identity on 10^4 pairs", "frac_identity", {}},
    {4, "harmonic field has unit circulation", "harmonic_circulation", {}},
    {5, "velocity tangent to the slit", "slit_tangency", {}},
    {6, "outer circulation equals gamma + m", "circulation_structure", {}},
    {7, "I1 and I2-tilde scale linearly in eps", "integral_scalings", {}},
    {8, "cutoff family: orthogonality, support area, gradient norms", "cutoff_lemma44", {}},
    {9, "H_eps -> H in L^{3/2} and L^1", "h_limit",
     {"||H_eps - H||_L3/2(B(0,2)) slope", "||H_eps - H||_L1 strictly decreasing"}},
    {10, "||v||_L3(B(0,2)) uniform across the eps sweep", "velocity_lp",
     {"||v||_L3(B(0,2)) sweep max/min"}},
    {11, "||v . grad-perp Phi||_L3/2 scales like eps^(1/3)", "cutoff_vphi",
     {"||v . grad-perp Phi||_L3/2 slope"}},
    {12, "transport conserves L^p norms; tracer closes its orbit", "transport_conservation",
     {"L1 norm drift", "L2 norm drift", "L4 norm drift",
      "tracer return distance after one period"}},
    {13, "support radius grows no faster than max|u| t", "transport_conservation",
     {"support radius within R0 + max|u| t"}},
    {14, "u_eps -> u toward the point-vortex limit", "limit_convergence",
     {"gamma-only L1 difference strictly decreasing", "dipole |u_eps - u| decreasing at t=0",
      "dipole |u_eps - u| decreasing at t=T/2", "dipole |u_eps - u| decreasing at t=T"}},
    {15, "thickened-family hypotheses (i) and (iii)", "assumption31_family",
     {"(i) ", "(iii) "}},
    {16, "RK4 order: error ratio in [12,20] when dt halves", "rk4_order", {}},
};

}  // namespace

int main(int argc, char** argv) {
    CheckContext ctx;
    ctx.out_dir = "acceptance_out";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) ctx.out_dir = argv[++i];
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) ctx.seed = std::stoull(argv[++i]);
    }

    std::map<std::string, CheckResult> results;
    for (const CheckEntry& entry : check_registry()) {
        std::printf("running %s ...\n", entry.name.c_str());
        std::fflush(stdout);
        results.emplace(entry.name, entry.fn(ctx));
    }

    bool all_criteria_pass = true;
    std::printf("\n==== acceptance criteria ====\n");
    for (const Criterion& c : kCriteria) {
        const CheckResult& res = results.at(c.check);
        bool pass = true;
        const SubCheck* worst = nullptr;
        for (const SubCheck& s : res.subchecks) {
            bool selected = c.label_patterns.empty();
            for (const std::string& pat : c.label_patterns) {
                if (s.label.find(pat) != std::string::npos) selected = true;
            }
            if (!selected) continue;
            pass = pass && s.passed;
            if (!worst || (s.passed == worst->passed ? s.severity > worst->severity
                                                     : !s.passed)) {
                worst = &s;
            }
        }
        if (!worst) {
            pass = false;
        }
        all_criteria_pass = all_criteria_pass && pass;
        std::printf("[%2d] %s  %s | %s = %.6g (tol %.6g)\n", c.id, pass ? "PASS" : "FAIL",
                    c.description.c_str(), worst ? worst->label.c_str() : "missing subcheck",
                    worst ? worst->measured : 0.0, worst ? worst->tolerance : 0.0);
    }

    bool all_checks_pass = true;
    for (const auto& [name, res] : results) {
        if (!res.passed) {
            all_checks_pass = false;
            for (const SubCheck& s : res.subchecks) {
                if (!s.passed) {
                    std::printf("module-level failure in %s: %s = %.6g (tol %.6g)\n",
                                name.c_str(), s.label.c_str(), s.measured, s.tolerance);
                }
            }
        }
    }

    const bool ok = all_criteria_pass && all_checks_pass;
    std::printf("\n%s (%zu checks, artifacts in %s)\n",
                ok ? "ACCEPTANCE SUITE PASSED" : "ACCEPTANCE SUITE FAILED", results.size(),
                ctx.out_dir.string().c_str());
    return ok ? 0 : 1;
}
