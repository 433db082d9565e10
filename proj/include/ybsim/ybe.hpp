#pragma once

#include "ybsim/linalg.hpp"

namespace ybsim {

struct TwoQuditGate {
  int local_dim = 2;
  CMatrix matrix;  // d^2 x d^2
};

struct CheckResult {
  bool ok = false;
  double residual = 0.0;
};

// T|a,b> = |b,a>
CMatrix swap_operator(int d);

// (R x I)(I x R)(R x I) = (I x R)(R x I)(I x R) on the d^3 space
CheckResult check_qybe(const CMatrix& R, int d, double tol = 1e-9);

// S12 S13 S23 = S23 S13 S12 with S13 = (I x T)(S x I)(I x T)
CheckResult check_aybe(const CMatrix& S, int d, double tol = 1e-9);

CMatrix s_from_r(const CMatrix& R, int d);  // S = R T
CMatrix r_from_s(const CMatrix& S, int d);  // R = S T

}  // namespace ybsim
