#include "ybsim/clifford.hpp"

#include <cmath>

namespace ybsim {

namespace {

cx ipow(int p) {
  static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
  return table[((p % 4) + 4) % 4];
}

// single-qubit X^x Z^z
CMatrix pauli_w(int x, int z) {
  CMatrix m = CMatrix::Zero(2, 2);
  for (int c = 0; c < 2; ++c) {
    double sgn = (z && c) ? -1.0 : 1.0;
    m(c ^ x, c) = sgn;
  }
  return m;
}

CMatrix h_matrix() {
  CMatrix m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

CMatrix p_matrix() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = cx(1, 0);
  m(1, 1) = cx(0, 1);
  return m;
}

CMatrix cnot_matrix() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

void validate_clifford_gate(const CliffordGate& g, int n) {
  if (g.wire < 0 || g.wire >= n)
    throw ValidationError("clifford gate wire out of range");
  if (g.kind == CliffordKind::CNOT) {
    if (g.target < 0 || g.target >= n || g.target == g.wire)
      throw ValidationError("cnot needs a distinct in-range target wire");
  }
}

void validate_pauli(const PauliElement& s, int n) {
  if (int(s.x.size()) != n || int(s.z.size()) != n)
    throw ValidationError("pauli element size does not match wire count");
  for (int j = 0; j < n; ++j)
    if (s.x[j] > 1 || s.z[j] > 1)
      throw ValidationError("pauli exponents must be bits");
}

}  // namespace

PauliElement pauli_identity(int n) {
  if (n < 1) throw ValidationError("need n >= 1");
  PauliElement s;
  s.phase = 0;
  s.x.assign(n, 0);
  s.z.assign(n, 0);
  return s;
}

CMatrix dense_pauli(const PauliElement& s) {
  int n = int(s.x.size());
  if (n < 1 || s.x.size() != s.z.size())
    throw ValidationError("malformed pauli element");
  checked_dim(2, n);
  CMatrix m = pauli_w(s.x[0], s.z[0]);
  for (int j = 1; j < n; ++j) m = kron(m, pauli_w(s.x[j], s.z[j]));
  return ipow(s.phase) * m;
}

CMatrix dense_clifford(const CliffordCircuit& c) {
  long dim = checked_dim(2, c.n_wires);
  CMatrix m = identity(dim);
  for (const CliffordGate& g : c.gates) {
    validate_clifford_gate(g, c.n_wires);
    switch (g.kind) {
      case CliffordKind::H:
        apply_gate_columns(m, h_matrix(), {g.wire}, c.n_wires, 2);
        break;
      case CliffordKind::P:
        apply_gate_columns(m, p_matrix(), {g.wire}, c.n_wires, 2);
        break;
      case CliffordKind::X:
        apply_gate_columns(m, pauli_w(1, 0), {g.wire}, c.n_wires, 2);
        break;
      case CliffordKind::Y:
        apply_gate_columns(m, ipow(1) * pauli_w(1, 1), {g.wire}, c.n_wires, 2);
        break;
      case CliffordKind::Z:
        apply_gate_columns(m, pauli_w(0, 1), {g.wire}, c.n_wires, 2);
        break;
      case CliffordKind::CNOT:
        apply_gate_columns(m, cnot_matrix(), {g.wire, g.target}, c.n_wires, 2);
        break;
    }
  }
  return m;
}

CliffordCircuit s4t_clifford() {
  CliffordCircuit c;
  c.n_wires = 2;
  c.gates = {{CliffordKind::CNOT, 0, 1},
             {CliffordKind::X, 0, -1},
             {CliffordKind::H, 0, -1},
             {CliffordKind::CNOT, 0, 1}};
  return c;
}

PauliElement conjugate_pauli(const CliffordCircuit& c, PauliElement sigma) {
  validate_pauli(sigma, c.n_wires);
  // sigma -> V^dag sigma V for circuit operator V, so gates run in reverse
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    const CliffordGate& g = *it;
    validate_clifford_gate(g, c.n_wires);
    int w = g.wire;
    switch (g.kind) {
      case CliffordKind::H:
        if (sigma.x[w] && sigma.z[w]) sigma.phase += 2;
        std::swap(sigma.x[w], sigma.z[w]);
        break;
      case CliffordKind::P:
        if (sigma.x[w]) {
          sigma.phase += 3;
          sigma.z[w] ^= 1;
        }
        break;
      case CliffordKind::X:
        if (sigma.z[w]) sigma.phase += 2;
        break;
      case CliffordKind::Y:
        if (sigma.x[w] != sigma.z[w]) sigma.phase += 2;
        break;
      case CliffordKind::Z:
        if (sigma.x[w]) sigma.phase += 2;
        break;
      case CliffordKind::CNOT:
        sigma.x[g.target] ^= sigma.x[w];
        sigma.z[w] ^= sigma.z[g.target];
        break;
    }
    sigma.phase &= 3;
  }
  return sigma;
}

void validate_observable(const Observable& m, int n_wires, double tol) {
  int mq = int(m.wires.size());
  if (mq < 1 || mq > 12)
    throw ValidationError("observable wire count must lie in [1, 12]");
  std::vector<bool> seen(n_wires, false);
  for (int w : m.wires) {
    if (w < 0 || w >= n_wires)
      throw ValidationError("observable wire out of range");
    if (seen[w]) throw ValidationError("observable wires must be distinct");
    seen[w] = true;
  }
  long dim = checked_dim(2, mq);
  if (m.matrix.rows() != dim || m.matrix.cols() != dim)
    throw ValidationError("observable dimension does not match wire count");
  if (frob_dist(m.matrix, m.matrix.adjoint()) > tol)
    throw ValidationError("observable must be Hermitian");
}

std::vector<std::pair<PauliElement, double>> pauli_expand(const CMatrix& M) {
  long dim = M.rows();
  int m = 0;
  while ((1L << m) < dim) ++m;
  if ((1L << m) != dim || M.cols() != dim)
    throw ValidationError("matrix dimension must be a power of two");
  if (m > 12) throw ValidationError("expansion cap is 12 qubits");
  if (frob_dist(M, M.adjoint()) > 1e-10)
    throw ValidationError("matrix must be Hermitian");
  std::vector<std::pair<PauliElement, double>> terms;
  for (long xm = 0; xm < dim; ++xm)
    for (long zm = 0; zm < dim; ++zm) {
      // Hermitian basis element i^{x.z} W(x, z); coefficient is real
      int xz = __builtin_popcountll(xm & zm);
      cx tr(0, 0);
      for (long col = 0; col < dim; ++col) {
        double sgn = (__builtin_popcountll(zm & col) & 1) ? -1.0 : 1.0;
        tr += sgn * M(col, col ^ xm);
      }
      cx alpha = ipow(xz) * tr / double(dim);
      if (std::abs(alpha) <= 1e-14) continue;
      PauliElement s = pauli_identity(m);
      s.phase = xz & 3;
      for (int j = 0; j < m; ++j) {
        s.x[j] = (xm >> (m - 1 - j)) & 1;
        s.z[j] = (zm >> (m - 1 - j)) & 1;
      }
      terms.emplace_back(std::move(s), alpha.real());
    }
  return terms;
}

CliffordCircuit r4_circuit_to_clifford(const Circuit& c) {
  if (c.d != 2)
    throw ValidationError("clifford compilation needs local dimension 2");
  CliffordCircuit out;
  out.n_wires = c.n_wires;
  for (const CircuitOp& op : c.ops) {
    if (op.wires.size() != 2 || op.wires[0] == op.wires[1])
      throw ValidationError("gates act on two distinct wires");
    int u = op.wires[0];
    int v = op.wires[1];
    for (int w : op.wires)
      if (w < 0 || w >= c.n_wires) throw ValidationError("wire out of range");
    if (!op.inverse) {
      out.gates.push_back({CliffordKind::CNOT, u, v});
      out.gates.push_back({CliffordKind::X, u, -1});
      out.gates.push_back({CliffordKind::H, u, -1});
      out.gates.push_back({CliffordKind::CNOT, u, v});
    } else {
      out.gates.push_back({CliffordKind::CNOT, u, v});
      out.gates.push_back({CliffordKind::H, u, -1});
      out.gates.push_back({CliffordKind::X, u, -1});
      out.gates.push_back({CliffordKind::CNOT, u, v});
    }
  }
  return out;
}

cx expectation(const Circuit& c, const R4Registry& gates, const Observable& M,
               const ProductState& psi, const ProductState& phi) {
  int n = c.n_wires;
  if (c.d != 2) throw ValidationError("expectation needs local dimension 2");
  if (int(psi.qubits.size()) != n || int(phi.qubits.size()) != n)
    throw ValidationError("product states must cover every wire");
  for (const auto& q : psi.qubits)
    if (std::abs(q[0]) == 0.0 && std::abs(q[1]) == 0.0)
      throw ValidationError("zero qubit state");
  for (const auto& q : phi.qubits)
    if (std::abs(q[0]) == 0.0 && std::abs(q[1]) == 0.0)
      throw ValidationError("zero qubit state");

  int m = int(M.wires.size());
  validate_observable(M, n);

  CMatrix Q1 = identity(2);
  bool have_q = false;
  for (const CircuitOp& op : c.ops) {
    auto it = gates.find(op.gate_id);
    if (it == gates.end())
      throw ValidationError("unknown gate id: " + op.gate_id);
    const CliffordGateRecord& rec = it->second;
    if (std::abs(std::abs(rec.k) - 1.0) > 1e-9)
      throw ValidationError("gate scale must have unit modulus");
    if (!have_q) {
      Q1 = rec.Q1;
      have_q = true;
    } else if (frob_dist(Q1, rec.Q1) > 1e-12) {
      throw GateMismatchError(
          "mixed Q across gates: the exact evaluator supports gate sets "
          "sharing one Q");
    }
  }
  if (!is_unitary(Q1, 1e-9))
    throw ValidationError("gate conjugation matrix must be unitary");

  CliffordCircuit V = r4_circuit_to_clifford(c);

  // rotate the observable into the Clifford frame
  CMatrix K = Q1;
  for (int j = 1; j < m; ++j) K = kron(K, Q1);
  CMatrix Mprime = K.adjoint() * M.matrix * K;
  auto terms = pauli_expand(Mprime);

  // per-wire 2x2 bridge factors <psi_j| Q1 W(x, z) Q1^dag |phi_j>
  std::array<std::array<CMatrix, 2>, 2> bridge;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      bridge[x][z] = Q1 * pauli_w(x, z) * Q1.adjoint();

  cx total(0, 0);
  for (const auto& [small, alpha] : terms) {
    PauliElement sigma = pauli_identity(n);
    sigma.phase = small.phase;
    for (int wi = 0; wi < m; ++wi) {
      sigma.x[M.wires[wi]] = small.x[wi];
      sigma.z[M.wires[wi]] = small.z[wi];
    }
    PauliElement conj = conjugate_pauli(V, sigma);
    cx prod = ipow(conj.phase);
    for (int j = 0; j < n; ++j) {
      const CMatrix& B = bridge[conj.x[j]][conj.z[j]];
      cx factor(0, 0);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          factor += std::conj(psi.qubits[j][r]) * B(r, s) * phi.qubits[j][s];
      prod *= factor;
    }
    total += alpha * prod;
  }
  return total;
}

}  // namespace ybsim
