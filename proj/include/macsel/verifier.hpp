#pragma once

#include <string>
#include <vector>

#include "macsel/report.hpp"

namespace macsel {

Report verify_qbt(int n, int D);
Report verify_eval_symmetry(int n, int wmax);
Report verify_gen_eval_I(int n, int wmax);
Report verify_gen_eval_II(int n, int wmax);
Report verify_phi_transformation(int n, int m, int D);
Report verify_cauchy(int n, int D);
Report verify_skew_cauchy(int n, int D, int mumax);
Report verify_thmPQ(int n, int wmax);
Report verify_pieri_lemma(int n, int mumax, int D);
Report verify_thm12(int n, int m, int D);
Report verify_thm12_symmetry(int n, int m, int D);
Report verify_kawanaka(int n, int m, int D);
// Extended Cauchy identity over weakly decreasing integer sequences, checked on
// the family b = q^{N+1}/a for N = 0..r where both sides are finite in x^{-1}.
Report verify_thm26(int n, int m, int D, int r);
Report verify_complement_relations(int N, int n, int wmax);

// Structural invariants of the Macdonald basis.
Report check_unitriangular(int wmax, int nmax);
Report check_orthogonal(int wmax);
Report check_duality(int wmax);
Report check_homogeneity(int wmax, int n);
Report check_stability(int wmax, int nmax);
Report check_lr_support(int wmax);
Report check_bla(int wmax);
Report check_principal_Q(int wmax, int nmax);
Report check_ccp(int wmax);

struct CaseSpec {
  std::string id;
  json params;
};

Report run_case(const CaseSpec& c);
// Runs cases on a pool of workers; reports come back in input order.
std::vector<Report> run_cases(const std::vector<CaseSpec>& cases, int workers);

std::vector<CaseSpec> exact_suite();
std::vector<CaseSpec> invariant_suite();
std::vector<std::string> case_ids();

}  // namespace macsel
