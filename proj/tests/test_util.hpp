#pragma once

// shared randomized-draw and oracle helpers for the test and acceptance
// binaries; doctest-free so the acceptance runner can include it too

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ybsim/braid.hpp"
#include "ybsim/circuit.hpp"
#include "ybsim/clifford.hpp"
#include "ybsim/linalg.hpp"
#include "ybsim/mc_sim.hpp"
#include "ybsim/solutions.hpp"
#include "ybsim/ybe.hpp"

namespace testutil {

using namespace ybsim;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline cx unit_phase(std::mt19937_64& rng) {
  double t = uniform(rng, 0.0, 2.0 * M_PI);
  return cx(std::cos(t), std::sin(t));
}

// modulus kept inside [lo, hi] so derived quantities stay well-conditioned
inline cx ring_complex(std::mt19937_64& rng, double lo = 0.3,
                       double hi = 1.3) {
  return uniform(rng, lo, hi) * unit_phase(rng);
}

inline CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cx(g(rng), g(rng));
  return m;
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  CMatrix g = random_matrix(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  CMatrix a = random_matrix(dim, dim, rng);
  return CMatrix((a + a.adjoint()) / 2.0);
}

inline FamilyParams random_params(Family f, std::mt19937_64& rng) {
  FamilyParams pr;
  pr.family = f;
  pr.k = unit_phase(rng);
  switch (f) {
    case Family::F1:
      pr.a = ring_complex(rng);
      pr.b = ring_complex(rng);
      pr.d_entry = ring_complex(rng);
      pr.p = unit_phase(rng);
      pr.q = unit_phase(rng);
      pr.r_phase = unit_phase(rng);
      break;
    case Family::F2:
      for (;;) {
        pr.a = ring_complex(rng);
        pr.b = ring_complex(rng);
        pr.c = ring_complex(rng);
        pr.d_entry = ring_complex(rng);
        cx u = pr.a * std::conj(pr.b) + pr.c * std::conj(pr.d_entry);
        if (std::abs(u) > 0.2) break;
      }
      break;
    case Family::F3: {
      pr.a = ring_complex(rng);
      pr.b = ring_complex(rng);
      pr.d_entry = ring_complex(rng);
      double ratio = std::norm(pr.d_entry) / std::norm(pr.a);
      pr.p = ratio * unit_phase(rng);
      pr.q = (1.0 / ratio) * unit_phase(rng);
      break;
    }
    case Family::F4:
      pr.a = ring_complex(rng);
      pr.b = ring_complex(rng);
      pr.d_entry = std::abs(pr.a) * unit_phase(rng);
      break;
  }
  return pr;
}

// independent reconstruction k (Q x Q) S T (Q x Q)^{-1} straight from the
// family tables, bypassing the builders' normal forms
inline CMatrix raw_family_gate(const FamilyParams& pr) {
  cx c = pr.family == Family::F2
             ? pr.c
             : -pr.a * std::conj(pr.b) / std::conj(pr.d_entry);
  CMatrix Q(2, 2);
  Q << pr.a, pr.b, c, pr.d_entry;
  CMatrix S = CMatrix::Zero(4, 4);
  switch (pr.family) {
    case Family::F1:
      S(0, 0) = 1;
      S(1, 1) = pr.p;
      S(2, 2) = pr.q;
      S(3, 3) = pr.r_phase;
      break;
    case Family::F2: {
      cx u = pr.a * std::conj(pr.b) + pr.c * std::conj(pr.d_entry);
      double m1 = std::norm(pr.a) + std::norm(c);
      double m2 = std::norm(pr.b) + std::norm(pr.d_entry);
      cx p2 = m2 * std::conj(u) / (m1 * u);
      S(0, 3) = p2;
      S(1, 2) = 1;
      S(2, 1) = 1;
      S(3, 0) = 1.0 / p2;
      break;
    }
    case Family::F3:
      S(0, 3) = pr.p;
      S(1, 2) = 1;
      S(2, 1) = 1;
      S(3, 0) = pr.q;
      break;
    case Family::F4: {
      double s = 1.0 / std::sqrt(2.0);
      S << s, 0, 0, s, 0, s, s, 0, 0, s, -s, 0, -s, 0, 0, s;
      break;
    }
  }
  CMatrix qq = kron(Q, Q);
  return CMatrix(pr.k * qq * S * swap_operator(2) * qq.inverse());
}

inline std::vector<cx> random_phases(int count, std::mt19937_64& rng) {
  std::vector<cx> out(count);
  for (cx& v : out) v = unit_phase(rng);
  return out;
}

inline std::pair<CMatrix, CMatrix> random_commuting_pair(int d,
                                                         std::mt19937_64& rng) {
  CMatrix u = random_unitary(d, rng);
  CMatrix da = CMatrix::Zero(d, d);
  CMatrix db = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    da(i, i) = unit_phase(rng);
    db(i, i) = unit_phase(rng);
  }
  return {CMatrix(u * da * u.adjoint()), CMatrix(u * db * u.adjoint())};
}

inline Circuit random_circuit(int n, int d, const std::string& id, int n_gates,
                              std::mt19937_64& rng,
                              bool allow_inverse = true) {
  Circuit c;
  c.n_wires = n;
  c.d = d;
  for (int g = 0; g < n_gates; ++g) {
    int u = uniform_int(rng, 0, n - 1);
    int v = uniform_int(rng, 0, n - 2);
    if (v >= u) ++v;
    CircuitOp op;
    op.gate_id = id;
    op.wires = {u, v};
    op.inverse = allow_inverse && uniform_int(rng, 0, 1) == 1;
    c.ops.push_back(std::move(op));
  }
  return c;
}

inline DitString random_ditstring(int n, int d, std::mt19937_64& rng) {
  DitString s(n);
  for (int& v : s) v = uniform_int(rng, 0, d - 1);
  return s;
}

inline ProductState random_product_state(int n, std::mt19937_64& rng) {
  ProductState st;
  std::normal_distribution<double> g(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    cx a(g(rng), g(rng)), b(g(rng), g(rng));
    double norm = std::sqrt(std::norm(a) + std::norm(b));
    st.qubits.push_back({a / norm, b / norm});
  }
  return st;
}

inline CVector state_vector(const ProductState& st) {
  CVector v = CVector::Ones(1);
  for (const auto& q : st.qubits) {
    CVector next(v.size() * 2);
    for (long i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q[0];
      next(2 * i + 1) = v(i) * q[1];
    }
    v = std::move(next);
  }
  return v;
}

// dense monomial gate D P (C x C), the estimator's inner-factor oracle
inline CMatrix dense_monomial(const MonomialGate& g, int d) {
  CMatrix m = CMatrix::Zero(long(d) * d, long(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int ci = g.C[i], cj = g.C[j];
      long row = g.P == PFlag::Swap ? long(cj) * d + ci : long(ci) * d + cj;
      m(row, long(i) * d + j) = g.D[row];
    }
  return m;
}

}  // namespace testutil
