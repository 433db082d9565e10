#include "ybsim/linalg.hpp"

#include "ybsim/circuit.hpp"

namespace ybsim {

long dim_pow(int d, int n) {
  if (d < 1 || n < 0) throw ValidationError("dimension requires d >= 1, n >= 0");
  long v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > (1L << 40) / d) throw ScaleCapError("dimension d^n overflows");
    v *= d;
  }
  return v;
}

long checked_dim(int d, int n) {
  long v = dim_pow(d, n);
  if (v > kOracleCap)
    throw ScaleCapError("oracle cap exceeded: d^n = " + std::to_string(v) +
                        " > " + std::to_string(kOracleCap));
  return v;
}

long ditstring_to_index(const DitString& s, int d) {
  long idx = 0;
  for (int v : s) {
    if (v < 0 || v >= d) throw ValidationError("dit out of range [0, d)");
    idx = idx * d + v;
  }
  return idx;
}

DitString index_to_ditstring(long idx, int d, int n) {
  if (d < 2) throw ValidationError("local dimension must be at least 2");
  if (idx < 0) throw ValidationError("index must be nonnegative");
  DitString s(n, 0);
  for (int w = n - 1; w >= 0; --w) {
    s[w] = int(idx % d);
    idx /= d;
  }
  if (idx != 0) throw ValidationError("index exceeds d^n - 1");
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

struct WirePlan {
  int k = 0;
  long local_dim = 0;
  std::vector<long> strides;  // per listed wire, in the full space
};

WirePlan wire_plan(const std::vector<int>& wires, int n, int d) {
  WirePlan plan;
  plan.k = int(wires.size());
  plan.local_dim = dim_pow(d, plan.k);
  std::vector<bool> seen(n, false);
  for (int w : wires) {
    if (w < 0 || w >= n) throw ValidationError("wire out of range");
    if (seen[w]) throw ValidationError("duplicate wire");
    seen[w] = true;
    plan.strides.push_back(dim_pow(d, n - 1 - w));
  }
  return plan;
}

long local_index(long idx, const WirePlan& plan, int d) {
  long loc = 0;
  for (long stride : plan.strides) loc = loc * d + (idx / stride) % d;
  return loc;
}

// idx with the listed wires' digits replaced by those of loc
long replace_local(long idx, long loc, const WirePlan& plan, int d) {
  for (int t = plan.k - 1; t >= 0; --t) {
    long stride = plan.strides[t];
    idx += (loc % d - (idx / stride) % d) * stride;
    loc /= d;
  }
  return idx;
}

}  // namespace

CMatrix embed_gate(const CMatrix& gate, const std::vector<int>& wires, int n,
                   int d) {
  long dim = checked_dim(d, n);
  WirePlan plan = wire_plan(wires, n, d);
  if (gate.rows() != plan.local_dim || gate.cols() != plan.local_dim)
    throw ValidationError("gate dimension does not match wire count");
  CMatrix out = CMatrix::Zero(dim, dim);
  for (long r = 0; r < dim; ++r) {
    long lr = local_index(r, plan, d);
    for (long lc = 0; lc < plan.local_dim; ++lc)
      out(r, replace_local(r, lc, plan, d)) = gate(lr, lc);
  }
  return out;
}

void apply_gate(CVector& state, const CMatrix& gate,
                const std::vector<int>& wires, int n, int d) {
  long dim = checked_dim(d, n);
  if (state.size() != dim) throw ValidationError("state dimension mismatch");
  WirePlan plan = wire_plan(wires, n, d);
  if (gate.rows() != plan.local_dim || gate.cols() != plan.local_dim)
    throw ValidationError("gate dimension does not match wire count");
  CVector scratch(plan.local_dim);
  for (long base = 0; base < dim; ++base) {
    if (local_index(base, plan, d) != 0) continue;
    for (long l = 0; l < plan.local_dim; ++l)
      scratch(l) = state(replace_local(base, l, plan, d));
    CVector transformed = gate * scratch;
    for (long l = 0; l < plan.local_dim; ++l)
      state(replace_local(base, l, plan, d)) = transformed(l);
  }
}

void apply_gate_columns(CMatrix& m, const CMatrix& gate,
                        const std::vector<int>& wires, int n, int d) {
  for (long c = 0; c < m.cols(); ++c) {
    CVector col = m.col(c);
    apply_gate(col, gate, wires, n, d);
    m.col(c) = col;
  }
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  CMatrix gram = m.adjoint() * m;
  return frob_dist(gram, CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

double frob_dist(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("frob_dist dimension mismatch");
  return (a - b).norm();
}

CMatrix identity(long dim) { return CMatrix::Identity(dim, dim); }

namespace {

const CMatrix& resolve_gate(const DenseGateTable& gates,
                            const std::string& id) {
  auto it = gates.find(id);
  if (it == gates.end()) throw ValidationError("unknown gate id: " + id);
  return it->second;
}

}  // namespace

CMatrix dense_circuit(const Circuit& c, const DenseGateTable& gates) {
  long dim = checked_dim(c.d, c.n_wires);
  CMatrix m = CMatrix::Identity(dim, dim);
  for (const CircuitOp& op : c.ops) {
    CMatrix g = resolve_gate(gates, op.gate_id);
    if (op.inverse) g = CMatrix(g.adjoint());
    apply_gate_columns(m, g, op.wires, c.n_wires, c.d);
  }
  return m;
}

CVector apply_circuit(const Circuit& c, const DenseGateTable& gates,
                      CVector state) {
  for (const CircuitOp& op : c.ops) {
    CMatrix g = resolve_gate(gates, op.gate_id);
    if (op.inverse) g = CMatrix(g.adjoint());
    apply_gate(state, g, op.wires, c.n_wires, c.d);
  }
  return state;
}

cx oracle_amplitude(const Circuit& c, const DenseGateTable& gates,
                    const DitString& x, const DitString& z) {
  long dim = checked_dim(c.d, c.n_wires);
  if (int(x.size()) != c.n_wires || int(z.size()) != c.n_wires)
    throw ValidationError("ditstring length does not match wire count");
  CVector state = CVector::Zero(dim);
  state(ditstring_to_index(z, c.d)) = cx(1.0, 0.0);
  state = apply_circuit(c, gates, std::move(state));
  return state(ditstring_to_index(x, c.d));
}

}  // namespace ybsim
