#include "ybsim/ybe.hpp"

namespace ybsim {

CMatrix swap_operator(int d) {
  if (d < 2 || d > 16)
    throw ValidationError(
        "swap_operator supports local dimension 2 through 16");
  long dim = long(d) * d;
  CMatrix t = CMatrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) t(b * d + a, a * d + b) = cx(1.0, 0.0);
  return t;
}

namespace {

void require_two_qudit(const CMatrix& m, int d, const char* what) {
  long dim = long(d) * d;
  if (m.rows() != dim || m.cols() != dim)
    throw ValidationError(std::string(what) + " must be d^2 x d^2");
}

}  // namespace

CheckResult check_qybe(const CMatrix& R, int d, double tol) {
  require_two_qudit(R, d, "check_qybe gate");
  CMatrix i = identity(d);
  CMatrix r1 = kron(R, i);
  CMatrix r2 = kron(i, R);
  double residual = frob_dist(r1 * r2 * r1, r2 * r1 * r2);
  return {residual <= tol, residual};
}

CheckResult check_aybe(const CMatrix& S, int d, double tol) {
  require_two_qudit(S, d, "check_aybe gate");
  CMatrix i = identity(d);
  CMatrix t = swap_operator(d);
  CMatrix s12 = kron(S, i);
  CMatrix s23 = kron(i, S);
  CMatrix t23 = kron(i, t);
  CMatrix s13 = t23 * s12 * t23;
  double residual = frob_dist(s12 * s13 * s23, s23 * s13 * s12);
  return {residual <= tol, residual};
}

CMatrix s_from_r(const CMatrix& R, int d) {
  require_two_qudit(R, d, "s_from_r gate");
  return R * swap_operator(d);
}

CMatrix r_from_s(const CMatrix& S, int d) {
  require_two_qudit(S, d, "r_from_s gate");
  return S * swap_operator(d);
}

}  // namespace ybsim
