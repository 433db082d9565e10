#include "ybsim/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "ybsim/rng.hpp"

namespace ybsim {

std::string family_name(Family f) {
  switch (f) {
    case Family::F1: return "r1";
    case Family::F2: return "r2";
    case Family::F3: return "r3";
    case Family::F4: return "r4";
  }
  return "?";
}

namespace {

constexpr double kConstraintTol = 1e-9;

void require_unit(cx v, const char* name) {
  if (std::abs(std::abs(v) - 1.0) > kConstraintTol)
    throw ValidationError(std::string("constraint violation: ") + name +
                          " must have unit modulus");
}

cx derived_c(const FamilyParams& p) {
  if (std::abs(p.d_entry) == 0.0)
    throw ValidationError("constraint violation: d_entry-zero");
  return -p.a * std::conj(p.b) / std::conj(p.d_entry);
}

CMatrix q_of(cx a, cx b, cx c, cx d) {
  CMatrix q(2, 2);
  q << a, b, c, d;
  return q;
}

void require_invertible(const CMatrix& q) {
  if (std::abs(q.determinant()) <= 1e-12)
    throw ValidationError("constraint violation: Q-singular");
}

std::vector<cx> unit_normalized(std::vector<cx> phases) {
  for (cx& v : phases) {
    double m = std::abs(v);
    if (std::abs(m - 1.0) > kConstraintTol)
      throw ValidationError("diagonal entry is not a unit phase");
    v /= m;
  }
  return phases;
}

void require_permutation(const std::vector<int>& c, int d, const char* what) {
  if (int(c.size()) != d)
    throw ValidationError(std::string(what) + ": permutation size mismatch");
  std::vector<bool> seen(d, false);
  for (int v : c) {
    if (v < 0 || v >= d || seen[v])
      throw ValidationError(std::string(what) + ": not a permutation of [d]");
    seen[v] = true;
  }
}

}  // namespace

CMatrix reconstruct_gate(const YbNormalForm& nf) {
  int d = nf.local_dim;
  long dim = long(d) * d;
  require_permutation(nf.C, d, "normal form C");
  if (long(nf.D.size()) != dim)
    throw ValidationError("normal form D size mismatch");
  if (nf.Q.rows() != d || nf.Q.cols() != d)
    throw ValidationError("normal form Q size mismatch");
  require_invertible(nf.Q);
  CMatrix inner = CMatrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      long col = long(i) * d + j;
      long row = nf.P == PFlag::Swap ? long(nf.C[j]) * d + nf.C[i]
                                     : long(nf.C[i]) * d + nf.C[j];
      inner(row, col) = nf.D[row];
    }
  CMatrix qq = kron(nf.Q, nf.Q);
  return qq * inner * qq.inverse();
}

void validate_normal_form(const YbNormalForm& nf, double tol) {
  for (const cx& v : nf.D)
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
      throw ValidationError("normal form D is not unit-modulus");
  CMatrix gate = reconstruct_gate(nf);
  if (!is_unitary(gate, tol))
    throw ValidationError("normal form does not reconstruct a unitary gate");
  CheckResult ybe = check_qybe(gate, nf.local_dim, tol);
  if (!ybe.ok)
    throw ValidationError(
        "normal form gate fails the Yang-Baxter check, residual = " +
        std::to_string(ybe.residual));
}

CMatrix s4t_matrix() {
  double s = 1.0 / std::sqrt(2.0);
  CMatrix m(4, 4);
  m << 1, 0, 0, 1,
       0, 1, 1, 0,
       0, -1, 1, 0,
       -1, 0, 0, 1;
  return s * m;
}

YbNormalForm build_r1(const FamilyParams& params) {
  require_unit(params.k, "k");
  require_unit(params.p, "p");
  require_unit(params.q, "q");
  require_unit(params.r_phase, "r");
  cx c = derived_c(params);
  CMatrix Q = q_of(params.a, params.b, c, params.d_entry);
  require_invertible(Q);
  YbNormalForm nf;
  nf.local_dim = 2;
  nf.k = params.k / std::abs(params.k);
  nf.Q = Q;
  nf.D = unit_normalized({params.k, params.k * params.p, params.k * params.q,
                          params.k * params.r_phase});
  nf.P = PFlag::Swap;
  nf.C = {0, 1};
  validate_normal_form(nf);
  return nf;
}

YbNormalForm build_r2(const FamilyParams& params) {
  require_unit(params.k, "k");
  CMatrix Q = q_of(params.a, params.b, params.c, params.d_entry);
  require_invertible(Q);
  cx u = params.a * std::conj(params.b) + params.c * std::conj(params.d_entry);
  if (std::abs(u) < kConstraintTol)
    throw ValidationError("degenerate denominator: a b_bar + c d_bar = 0");
  double m1 = std::norm(params.a) + std::norm(params.c);
  double m2 = std::norm(params.b) + std::norm(params.d_entry);
  cx p = m2 * std::conj(u) / (m1 * u);
  cx sp = std::sqrt(p);
  CMatrix M = q_of(0.0, sp, 1.0 / sp, 0.0);
  CMatrix S2 = CMatrix::Zero(4, 4);
  S2(0, 3) = p;
  S2(1, 2) = 1.0;
  S2(2, 1) = 1.0;
  S2(3, 0) = 1.0 / p;
  if (frob_dist(kron(M, M), S2) > 1e-12 * (1.0 + std::abs(p)))
    throw ValidationError("family-two factorization M x M != S2");
  CMatrix W = Q * M * Q.inverse();
  if (!is_unitary(W, 1e-9))
    throw ValidationError(
        "family-two Q M Q^-1 is not unitary (invalid parameters)");

  CMatrix U(2, 2);
  cx v1, v2;
  if (frob_dist(W, W(0, 0) * identity(2)) < 1e-9) {
    U = identity(2);
    v1 = W(0, 0);
    v2 = W(1, 1);
  } else {
    cx tr = W.trace();
    cx det = W.determinant();
    cx disc = std::sqrt(tr * tr - 4.0 * det);
    v1 = (tr + disc) / 2.0;
    v2 = (tr - disc) / 2.0;
    CMatrix E = W - v2 * identity(2);  // columns span the v1 eigenspace
    Eigen::Vector2cd col =
        E.col(0).norm() >= E.col(1).norm() ? E.col(0) : E.col(1);
    col.normalize();
    U.col(0) = col;
    U.col(1) << -std::conj(col(1)), std::conj(col(0));
    CMatrix V = CMatrix::Zero(2, 2);
    V(0, 0) = v1;
    V(1, 1) = v2;
    if (frob_dist(W, U * V * U.adjoint()) > 1e-9)
      throw ValidationError(
          "family-two spectral rewrite failed (invalid parameters)");
  }

  YbNormalForm nf;
  nf.local_dim = 2;
  nf.k = params.k / std::abs(params.k);
  nf.Q = U;
  nf.D = unit_normalized(
      {params.k * v1 * v1, params.k * v1 * v2, params.k * v2 * v1,
       params.k * v2 * v2});
  nf.P = PFlag::Swap;
  nf.C = {0, 1};
  validate_normal_form(nf);
  return nf;
}

YbNormalForm build_r3(const FamilyParams& params) {
  require_unit(params.k, "k");
  if (std::abs(params.a) == 0.0)
    throw ValidationError("constraint violation: a-zero");
  cx c = derived_c(params);  // also rejects d_entry = 0
  double ratio = std::norm(params.d_entry) / std::norm(params.a);
  if (std::abs(std::abs(params.p) - ratio) > kConstraintTol)
    throw ValidationError("constraint violation: p-modulus");
  if (std::abs(std::abs(params.q) - 1.0 / ratio) > kConstraintTol)
    throw ValidationError("constraint violation: q-modulus");
  if (std::abs(std::abs(params.p * params.q) - 1.0) > kConstraintTol)
    throw ValidationError("constraint violation: pq-modulus");
  CMatrix Q = q_of(params.a, params.b, c, params.d_entry);
  require_invertible(Q);

  // rescale by N = diag(p^-1/4, p^1/4): the transformed family has p = 1 and
  // S3' (X x X) diagonal
  cx n0 = std::pow(params.p, -0.25);
  cx n1 = std::pow(params.p, 0.25);
  CMatrix Qp = Q;
  Qp.col(0) *= n1;  // Q N^-1
  Qp.col(1) *= n0;
  cx p_prime = params.p * (n0 * n0) / (n1 * n1);
  if (std::abs(p_prime - 1.0) > kConstraintTol)
    throw ValidationError("family-three rescaling did not send p to 1");
  cx q_prime = params.q * (n1 * n1) / (n0 * n0);
  if (std::abs(std::abs(q_prime) - 1.0) > kConstraintTol)
    throw ValidationError("family-three rescaled q is not a unit phase");

  YbNormalForm nf;
  nf.local_dim = 2;
  nf.k = params.k / std::abs(params.k);
  nf.Q = Qp;
  nf.D = unit_normalized(
      {params.k, params.k, params.k, params.k * q_prime});
  nf.P = PFlag::Swap;
  nf.C = {1, 0};
  validate_normal_form(nf);
  return nf;
}

CliffordGateRecord build_r4(const FamilyParams& params) {
  require_unit(params.k, "k");
  if (std::abs(std::abs(params.a) - std::abs(params.d_entry)) > kConstraintTol)
    throw ValidationError("constraint violation: ad-modulus (|a| != |d|)");
  cx c = derived_c(params);
  CMatrix Q = q_of(params.a, params.b, c, params.d_entry);
  require_invertible(Q);
  double alpha = std::sqrt(std::norm(params.a) + std::norm(params.b));
  CliffordGateRecord rec;
  rec.k = params.k / std::abs(params.k);
  rec.Q1 = Q / alpha;
  if (!is_unitary(rec.Q1, 1e-10))
    throw ValidationError("family-four Q is not a scaled unitary");
  CMatrix qq = kron(rec.Q1, rec.Q1);
  rec.gate = rec.k * qq * s4t_matrix() * qq.adjoint();
  CheckResult ybe = check_qybe(rec.gate, 2, 1e-9);
  if (!ybe.ok)
    throw ValidationError("family-four gate fails the Yang-Baxter check");
  return rec;
}

BuiltGate build_commuting_swap_solution(const CMatrix& A, const CMatrix& B,
                                        double tol) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ValidationError("commuting pair must be square and equal-sized");
  int d = int(A.rows());
  if (!is_unitary(A, 1e-9) || !is_unitary(B, 1e-9))
    throw ValidationError("commuting pair must be unitary");
  double comm = frob_dist(A * B, B * A);
  if (comm > tol)
    throw ValidationError("non-commuting inputs: commutator Frobenius norm = " +
                          std::to_string(comm));

  // a random Hermitian combination of A, B and their adjoints shares
  // eigenvectors with both; retry until its eigenbasis diagonalizes them
  CMatrix Ah = (A + A.adjoint()) / 2.0;
  CMatrix Aa = (A - A.adjoint()) / cx(0.0, 2.0);
  CMatrix Bh = (B + B.adjoint()) / 2.0;
  CMatrix Ba = (B - B.adjoint()) / cx(0.0, 2.0);
  SplitMix64 rng(0x5eedc0de);
  CMatrix Q;
  CMatrix DA, DB;
  bool found = false;
  for (int attempt = 0; attempt < 20 && !found; ++attempt) {
    CMatrix H = rng.uniform01() * Ah + rng.uniform01() * Aa +
                rng.uniform01() * Bh + rng.uniform01() * Ba;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    Q = es.eigenvectors();
    DA = Q.adjoint() * A * Q;
    DB = Q.adjoint() * B * Q;
    auto offdiag = [](const CMatrix& m) {
      double s = 0.0;
      for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
          if (i != j) s += std::norm(m(i, j));
      return std::sqrt(s);
    };
    found = offdiag(DA) < 1e-9 && offdiag(DB) < 1e-9;
  }
  if (!found)
    throw ValidationError("failed to diagonalize the commuting pair jointly");

  YbNormalForm nf;
  nf.local_dim = d;
  nf.k = cx(1.0, 0.0);
  nf.Q = Q;
  nf.D.resize(long(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) nf.D[long(i) * d + j] = DB(i, i) * DA(j, j);
  nf.D = unit_normalized(nf.D);
  nf.P = PFlag::Swap;
  nf.C.resize(d);
  for (int i = 0; i < d; ++i) nf.C[i] = i;

  CMatrix gate = swap_operator(d) * kron(A, B);
  if (dim_pow(d, 3) <= kOracleCap) {
    validate_normal_form(nf);
    if (frob_dist(reconstruct_gate(nf), gate) > 1e-9)
      throw ValidationError("commuting-pair normal form mismatch");
  }
  return {TwoQuditGate{d, gate}, nf};
}

BuiltGate build_diagonal_solution(int d, const std::vector<cx>& lambdas) {
  if (d < 1) throw ValidationError("local dimension must be positive");
  if (long(lambdas.size()) != long(d) * d)
    throw ValidationError("diagonal solution needs d^2 phases");
  for (long i = 0; i < long(lambdas.size()); ++i)
    if (std::abs(std::abs(lambdas[i]) - 1.0) > kConstraintTol)
      throw ValidationError("non-unit phase at index " + std::to_string(i));

  YbNormalForm nf;
  nf.local_dim = d;
  nf.k = cx(1.0, 0.0);
  nf.Q = identity(d);
  nf.D = unit_normalized(lambdas);
  nf.P = PFlag::Swap;
  nf.C.resize(d);
  for (int i = 0; i < d; ++i) nf.C[i] = i;

  CMatrix S = CMatrix::Zero(long(d) * d, long(d) * d);
  for (long i = 0; i < long(d) * d; ++i) S(i, i) = nf.D[i];
  CMatrix gate = S * swap_operator(d);
  if (dim_pow(d, 3) <= kOracleCap) validate_normal_form(nf);
  return {TwoQuditGate{d, gate}, nf};
}

double property_g_sum(const CMatrix& Q, const std::vector<int>& pi, int k,
                      int l) {
  int d = int(Q.rows());
  require_permutation(pi, d, "property_g_sum pi");
  CMatrix Qinv = Q.inverse();
  double sum = 0.0;
  for (int j = 0; j < d; ++j)
    sum += std::abs(Q(k, pi[j])) * std::abs(Qinv(j, l));
  return sum;
}

PropertyGReport check_property_g(const CMatrix& Q,
                                 const std::vector<std::vector<int>>& generators,
                                 double tol) {
  if (Q.rows() != Q.cols()) throw ValidationError("Q must be square");
  int d = int(Q.rows());
  if (std::abs(Q.determinant()) <= 1e-12)
    throw ValidationError("singular Q");
  for (const auto& g : generators)
    require_permutation(g, d, "property (G) generator");

  std::vector<int> id(d);
  for (int i = 0; i < d; ++i) id[i] = i;
  std::set<std::vector<int>> group{id};
  std::deque<std::vector<int>> frontier{id};
  constexpr long kGroupCap = 1000000;
  while (!frontier.empty()) {
    std::vector<int> cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      std::vector<int> next(d);
      for (int i = 0; i < d; ++i) next[i] = g[cur[i]];
      if (group.insert(next).second) {
        if (long(group.size()) > kGroupCap)
          throw ScaleCapError("property (G) group enumeration cap exceeded");
        frontier.push_back(next);
      }
    }
  }

  Eigen::MatrixXd A = Q.cwiseAbs();
  Eigen::MatrixXd B = Q.inverse().cwiseAbs();
  PropertyGReport report;
  report.group_order = long(group.size());
  report.max_sum = -1.0;
  for (const auto& pi : group)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) sum += A(k, pi[j]) * B(j, l);
        if (sum > report.max_sum) {
          report.max_sum = sum;
          report.witness_pi = pi;
          report.witness_k = k;
          report.witness_l = l;
        }
      }
  report.holds = report.max_sum <= 1.0 + tol;
  return report;
}

std::vector<std::vector<int>> symmetric_group(int d) {
  if (d < 1 || d > 9)
    throw ScaleCapError("symmetric group enumeration supports 1 <= d <= 9");
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace ybsim
