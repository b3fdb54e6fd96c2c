// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <iostream>

#include "liecurv/verify.hpp"

using namespace liecurv;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int n, const CheckResult& c, const std::string& note = "") {
  std::cout << n << " " << (c.pass ? "PASS" : "FAIL") << " " << c.name
            << " | expected: " << c.expected << " | computed: " << c.computed
            << (note.empty() ? "" : " | " + note) << "\n";
}

}  // namespace

int main() {
  try {
    auto rs = build_root_system(parse_cartan_type("F4"));
    auto cb = compact_form(build_chevalley(rs));
    auto theta = involution_from_marks(rs, {{0, 0, 0, 1}});
    auto tau = involution_from_marks(rs, {{0, 0, 1, 0}});
    auto dec = joint_decomposition(theta, tau, cb);

    CasimirMatrix cm = casimir_matrix(dec, cb);
    TripleBracketTable nk = triple_brackets(dec, cb, "negative-killing");
    TripleBracketTable lr = triple_brackets(dec, cb, "long-root-2");
    std::vector<EinsteinSolution> sols = enumerate_solutions(cb, dec);

    bool all = true;

    auto t0 = std::chrono::steady_clock::now();
    CheckResult c1 = check_algebra_integrity(rs, cb);
    double jacobi_s = seconds_since(t0);
    c1.pass = c1.pass && jacobi_s <= 30.0;
    report(1, c1, format_significant(jacobi_s, 3) + "s (cap 30s)");
    all = all && c1.pass;

    CheckResult c2 = check_casimir_table(cm);
    report(2, c2);
    all = all && c2.pass;

    CheckResult c3 = check_sum_rule(nk, lr);
    report(3, c3);
    all = all && c3.pass;

    CheckResult c4 = check_ricci_oracles(cb, dec, cm, nk, 100);
    report(4, c4);
    all = all && c4.pass;

    CheckResult c5 = check_einstein_solutions(sols);
    report(5, c5);
    all = all && c5.pass;

    CheckResult c6 = check_classification(sols);
    report(6, c6);
    all = all && c6.pass;

    t0 = std::chrono::steady_clock::now();
    CaseCReport sweep = solve_case_C(1e-5);
    double sweep_s = seconds_since(t0);
    CheckResult c7 = check_case_c(sweep);
    c7.pass = c7.pass && sweep_s <= 60.0;
    report(7, c7, format_significant(sweep_s, 3) + "s (cap 60s)");
    all = all && c7.pass;

    CheckResult c8 = check_properties(cm);
    report(8, c8);
    all = all && c8.pass;

    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "0 FAIL setup | " << e.what() << "\n";
    return 1;
  }
}
