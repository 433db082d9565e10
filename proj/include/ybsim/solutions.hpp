#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ybsim/linalg.hpp"
#include "ybsim/ybe.hpp"

namespace ybsim {

enum class Family { F1, F2, F3, F4 };

std::string family_name(Family f);

// Q entries a, b, c, d_entry; family phases p, q, r_phase; global phase k.
// For F1/F3/F4 the entry c is derived from the constraint c = -a conj(b)/conj(d)
// and the stored value is ignored; F2 takes c as free input.
struct FamilyParams {
  Family family = Family::F1;
  cx a{1.0, 0.0};
  cx b{0.0, 0.0};
  cx c{0.0, 0.0};
  cx d_entry{1.0, 0.0};
  cx p{1.0, 0.0};
  cx q{1.0, 0.0};
  cx r_phase{1.0, 0.0};
  cx k{1.0, 0.0};
};

enum class PFlag { Identity, Swap };

// Gate in the monomial normal form (Q x Q) D P (C x C) (Q x Q)^-1.
// The global phase k is already folded into D; the k field only records it.
struct YbNormalForm {
  int local_dim = 2;
  cx k{1.0, 0.0};
  CMatrix Q;           // d x d, invertible
  std::vector<cx> D;   // d^2 diagonal entries, unit modulus
  PFlag P = PFlag::Swap;
  std::vector<int> C;  // permutation of [d]
};

CMatrix reconstruct_gate(const YbNormalForm& nf);

// throws ValidationError unless the reconstructed gate is unitary and passes
// the quantum Yang-Baxter check at tol
void validate_normal_form(const YbNormalForm& nf, double tol = 1e-9);

// Family four: not monomial; the inner gate is the fixed Clifford S4T and the
// gate is k (Q1 x Q1) S4T (Q1 x Q1)^dagger with unitary Q1.
struct CliffordGateRecord {
  cx k{1.0, 0.0};
  CMatrix Q1;    // 2 x 2 unitary
  CMatrix gate;  // dense 4 x 4
};

// the fixed matrix (1/sqrt2) [[1,0,0,1],[0,1,1,0],[0,-1,1,0],[-1,0,0,1]]
CMatrix s4t_matrix();

YbNormalForm build_r1(const FamilyParams& params);
YbNormalForm build_r2(const FamilyParams& params);
YbNormalForm build_r3(const FamilyParams& params);
CliffordGateRecord build_r4(const FamilyParams& params);

struct BuiltGate {
  TwoQuditGate gate;
  YbNormalForm nf;
};

// T (A x B) for commuting unitaries A, B, with the simultaneous
// diagonalization Q that exhibits the monomial form
BuiltGate build_commuting_swap_solution(const CMatrix& A, const CMatrix& B,
                                        double tol = 1e-9);

// S T for S = diag(lambda_ij), lambdas in lexicographic (i, j) order
BuiltGate build_diagonal_solution(int d, const std::vector<cx>& lambdas);

struct PropertyGReport {
  long group_order = 0;
  double max_sum = 0.0;
  std::vector<int> witness_pi;
  int witness_k = 0;
  int witness_l = 0;
  bool holds = false;
};

// sum_j |Q|_{k, pi(j)} |Q^-1|_{j, l} for one permutation and one (k, l)
double property_g_sum(const CMatrix& Q, const std::vector<int>& pi, int k,
                      int l);

// max of the above over the group generated by `generators` and all (k, l);
// holds iff max <= 1 + tol
PropertyGReport check_property_g(const CMatrix& Q,
                                 const std::vector<std::vector<int>>& generators,
                                 double tol = 1e-12);

std::vector<std::vector<int>> symmetric_group(int d);

}  // namespace ybsim
