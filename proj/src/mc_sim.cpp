#include "ybsim/mc_sim.hpp"

#include <cmath>
#include <numeric>
#include <thread>

namespace ybsim {

namespace {

void validate_ditstring(const DitString& s, int n, int d, const char* what) {
  if (int(s.size()) != n)
    throw ValidationError(std::string(what) + " must have length n");
  for (int v : s)
    if (v < 0 || v >= d)
      throw ValidationError(std::string(what) + " has a dit outside [0, d)");
}

std::vector<int> identity_perm(int d) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = int(i);
  return inv;
}

}  // namespace

ExpandedCircuit expand_circuit(const Circuit& c,
                               const NormalFormRegistry& gates) {
  ExpandedCircuit out;
  out.V.n_wires = c.n_wires;
  out.V.d = c.d;
  bool have_q = false;
  for (const CircuitOp& op : c.ops) {
    auto it = gates.find(op.gate_id);
    if (it == gates.end())
      throw ValidationError("unknown gate id: " + op.gate_id);
    const YbNormalForm& nf = it->second;
    int d = c.d;
    if (nf.local_dim != d)
      throw ValidationError("gate '" + op.gate_id +
                            "' has a different local dimension");
    if (op.wires.size() != 2 || op.wires[0] == op.wires[1])
      throw ValidationError("monomial gates act on two distinct wires");
    for (int w : op.wires)
      if (w < 0 || w >= c.n_wires) throw ValidationError("wire out of range");
    if (!have_q) {
      out.Q = nf.Q;
      have_q = true;
    } else if (out.Q.rows() != nf.Q.rows() ||
               frob_dist(out.Q, nf.Q) > 1e-12) {
      throw GateMismatchError(
          "mixed Q across gates: the estimator supports gate sets sharing "
          "one Q");
    }
    MonomialGate g;
    g.wires = {op.wires[0], op.wires[1]};
    g.P = nf.P;
    if (!op.inverse) {
      g.D = nf.D;
      g.C = nf.C;
    } else {
      // (D P (C x C))^-1 = D' P (C^-1 x C^-1) with D' the permuted conjugate
      g.C = inverse_perm(nf.C);
      g.D.resize(long(d) * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          long src = nf.P == PFlag::Swap ? long(nf.C[j]) * d + nf.C[i]
                                         : long(nf.C[i]) * d + nf.C[j];
          g.D[long(i) * d + j] = std::conj(nf.D[src]);
        }
    }
    out.V.gates.push_back(std::move(g));
  }
  if (!have_q) out.Q = identity(c.d);
  return out;
}

SymbolicAction symbolic_action(const MonomialCircuit& V) {
  int n = V.n_wires;
  int d = V.d;
  std::vector<int> src(n);
  std::iota(src.begin(), src.end(), 0);
  std::vector<std::vector<int>> g(n, identity_perm(d));
  for (const MonomialGate& gate : V.gates) {
    int u = gate.wires[0];
    int v = gate.wires[1];
    for (int w : {u, v}) {
      std::vector<int> next(d);
      for (int val = 0; val < d; ++val) next[val] = gate.C[g[w][val]];
      g[w] = std::move(next);
    }
    if (gate.P == PFlag::Swap) {
      std::swap(src[u], src[v]);
      std::swap(g[u], g[v]);
    }
  }
  SymbolicAction act;
  act.pi = src;
  act.f = std::move(g);
  act.sigma = inverse_perm(act.pi);
  return act;
}

double phase_of(const MonomialCircuit& V, const DitString& y) {
  validate_ditstring(y, V.n_wires, V.d, "y");
  DitString val = y;
  double phi = 0.0;
  int d = V.d;
  for (const MonomialGate& gate : V.gates) {
    int u = gate.wires[0];
    int v = gate.wires[1];
    val[u] = gate.C[val[u]];
    val[v] = gate.C[val[v]];
    if (gate.P == PFlag::Swap) std::swap(val[u], val[v]);
    phi += std::arg(gate.D[long(val[u]) * d + val[v]]);
  }
  return phi;
}

QDecomposition q_decomposition(const CMatrix& Q) {
  if (Q.rows() != Q.cols()) throw ValidationError("Q must be square");
  if (std::abs(Q.determinant()) <= 1e-12)
    throw ValidationError("singular Q");
  long d = Q.rows();
  CMatrix Qinv = Q.inverse();
  QDecomposition qd;
  qd.A.resize(d, d);
  qd.alpha.resize(d, d);
  qd.B.resize(d, d);
  qd.beta.resize(d, d);
  for (long r = 0; r < d; ++r)
    for (long s = 0; s < d; ++s) {
      qd.A(r, s) = std::abs(Q(r, s));
      qd.alpha(r, s) = std::arg(Q(r, s));
      qd.B(r, s) = std::abs(Qinv(r, s));
      qd.beta(r, s) = std::arg(Qinv(r, s));
    }
  return qd;
}

double theta(const DitString& y, double phi_y, const QDecomposition& qd,
             const DitString& x, const DitString& z,
             const SymbolicAction& action) {
  int n = int(y.size());
  double t = phi_y;
  for (int j = 0; j < n; ++j) {
    int s = action.sigma[j];
    t += qd.alpha(x[s], action.f[s][y[j]]) + qd.beta(y[j], z[j]);
  }
  return t;
}

double normalization_rho(const DitString& x, const DitString& z,
                         const SymbolicAction& action,
                         const QDecomposition& qd) {
  int n = int(action.pi.size());
  int d = int(qd.A.rows());
  double rho = 1.0;
  for (int j = 0; j < n; ++j) {
    int s = action.sigma[j];
    double den = 0.0;
    for (int k = 0; k < d; ++k)
      den += qd.A(x[s], action.f[s][k]) * qd.B(k, z[j]);
    rho *= den;
  }
  return rho;
}

Marginals marginals(const DitString& x, const DitString& z,
                    const SymbolicAction& action, const QDecomposition& qd) {
  int n = int(action.pi.size());
  int d = int(qd.A.rows());
  Marginals out;
  out.P.assign(n, std::vector<double>(d, 0.0));
  for (int j = 0; j < n; ++j) {
    int s = action.sigma[j];
    double den = 0.0;
    for (int k = 0; k < d; ++k) {
      out.P[j][k] = qd.A(x[s], action.f[s][k]) * qd.B(k, z[j]);
      den += out.P[j][k];
    }
    if (den == 0.0) {
      // a vanishing denominator annihilates every summand of the amplitude
      out.certified_zero = true;
      out.P.clear();
      return out;
    }
    for (int k = 0; k < d; ++k) out.P[j][k] /= den;
  }
  return out;
}

int default_coin_bits(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("need n >= 1 and d >= 1");
  if (d == 1) return 1;
  int l = 0;
  while ((1 << l) < d) ++l;
  if ((1 << l) == d) return 3 * n * l;
  return int(std::ceil(3.0 * n * std::log2(double(d))));
}

namespace {

// round-to-nearest of x * 2^m computed exactly from the double's mantissa
u128 round_scale(double x, int m) {
  if (!(x >= 0.0) || x > 1.0) throw ValidationError("probability outside [0, 1]");
  if (x == 0.0) return 0;
  if (x == 1.0) return u128(1) << m;
  int e = 0;
  double mant = std::frexp(x, &e);  // x = mant * 2^e, mant in [0.5, 1)
  u128 v = u128(std::llround(std::ldexp(mant, 53)));
  int shift = m + e - 53;
  if (shift >= 0) return v << shift;
  int s = -shift;
  if (s >= 127) return 0;
  u128 half = u128(1) << (s - 1);
  return (v + half) >> s;
}

}  // namespace

IntervalTable build_intervals(const std::vector<std::vector<double>>& P,
                              int m) {
  if (m < 1 || m > 126)
    throw ValidationError("coin bits must lie in [1, 126]");
  IntervalTable t;
  t.m = m;
  u128 full = u128(1) << m;
  for (const auto& row : P) {
    if (row.empty()) throw ValidationError("empty marginal distribution");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw ValidationError("negative marginal probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("marginal does not sum to 1");
    std::vector<u128> bounds(row.size() + 1, 0);
    for (size_t k = 0; k + 1 < row.size(); ++k) {
      u128 next = bounds[k] + round_scale(row[k], m);
      bounds[k + 1] = next > full ? full : next;
    }
    bounds[row.size()] = full;  // last interval absorbs rounding remainder
    t.bounds.push_back(std::move(bounds));
  }
  return t;
}

DitString sample_intervals(const IntervalTable& t, SplitMix64& stream) {
  DitString y(t.bounds.size(), 0);
  for (size_t j = 0; j < t.bounds.size(); ++j) {
    u128 r = stream.next_bits(t.m);
    const std::vector<u128>& b = t.bounds[j];
    int k = 0;
    while (k + 2 < int(b.size()) && r >= b[k + 1]) ++k;
    y[j] = k;
  }
  return y;
}

DitString sample_product(const std::vector<std::vector<double>>& P, int m,
                         SplitMix64& stream) {
  int n = int(P.size());
  if (n < 1) throw ValidationError("sample_product needs n >= 1");
  int d = int(P[0].size());
  int required = default_coin_bits(n, d);
  if (m < required)
    throw ValidationError("coin bits m = " + std::to_string(m) +
                          " below the required ceil(3 n log2 d) = " +
                          std::to_string(required));
  IntervalTable t = build_intervals(P, m);
  return sample_intervals(t, stream);
}

std::vector<double> sampler_distribution(const IntervalTable& t) {
  int n = int(t.bounds.size());
  if (n < 1) throw ValidationError("empty interval table");
  int d = int(t.bounds[0].size()) - 1;
  long dim = checked_dim(d, n);
  double scale = std::ldexp(1.0, -t.m);
  std::vector<double> joint(dim, 1.0);
  for (long idx = 0; idx < dim; ++idx) {
    DitString y = index_to_ditstring(idx, d, n);
    for (int j = 0; j < n; ++j) {
      const auto& b = t.bounds[j];
      joint[idx] *= double(b[y[j] + 1] - b[y[j]]) * scale;
    }
  }
  return joint;
}

double chernoff_bound(long n_samples, double epsilon, double b) {
  if (n_samples < 1 || epsilon <= 0.0 || b <= 0.0)
    throw ValidationError("chernoff_bound needs positive arguments");
  return 4.0 * std::exp(-double(n_samples) * epsilon * epsilon / (8.0 * b * b));
}

long default_sample_count(int n, double epsilon) {
  if (n < 1) throw ValidationError("need n >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("epsilon must lie in (0, 1)");
  double raw = std::ceil(8.0 * n / (epsilon * epsilon * epsilon));
  if (raw > 9e15) throw ValidationError("epsilon too small: sample count overflows");
  return long(raw);
}

namespace {

// per-sample theta(y) evaluation tables: one (d x d) phase table per gate
// over the source-coordinate pair feeding it, plus one per-coordinate table
// for the alpha/beta boundary terms
struct SamplePlan {
  int n = 0;
  int d = 0;
  std::vector<std::array<int, 2>> gate_src;
  std::vector<std::vector<double>> gate_phase;  // (d*d) per gate
  std::vector<std::vector<double>> coord_phase;  // (d) per coordinate
};

SamplePlan build_sample_plan(const MonomialCircuit& V,
                             const SymbolicAction& action,
                             const QDecomposition& qd, const DitString& x,
                             const DitString& z) {
  int n = V.n_wires;
  int d = V.d;
  SamplePlan plan;
  plan.n = n;
  plan.d = d;
  // replay the symbolic propagation, freezing each gate's dependence on y
  std::vector<int> src(n);
  std::iota(src.begin(), src.end(), 0);
  std::vector<std::vector<int>> g(n, identity_perm(d));
  for (const MonomialGate& gate : V.gates) {
    int u = gate.wires[0];
    int v = gate.wires[1];
    std::vector<double> table(long(d) * d, 0.0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        int iu = gate.C[g[u][a]];
        int iv = gate.C[g[v][b]];
        long idx = gate.P == PFlag::Swap ? long(iv) * d + iu : long(iu) * d + iv;
        table[long(a) * d + b] = std::arg(gate.D[idx]);
      }
    plan.gate_src.push_back({src[u], src[v]});
    plan.gate_phase.push_back(std::move(table));
    for (int w : {u, v}) {
      std::vector<int> next(d);
      for (int val = 0; val < d; ++val) next[val] = gate.C[g[w][val]];
      g[w] = std::move(next);
    }
    if (gate.P == PFlag::Swap) {
      std::swap(src[u], src[v]);
      std::swap(g[u], g[v]);
    }
  }
  for (int j = 0; j < n; ++j) {
    int s = action.sigma[j];
    std::vector<double> table(d, 0.0);
    for (int val = 0; val < d; ++val)
      table[val] = qd.alpha(x[s], action.f[s][val]) + qd.beta(val, z[j]);
    plan.coord_phase.push_back(std::move(table));
  }
  return plan;
}

double plan_theta(const SamplePlan& plan, const DitString& y) {
  double t = 0.0;
  for (size_t gi = 0; gi < plan.gate_src.size(); ++gi)
    t += plan.gate_phase[gi][long(y[plan.gate_src[gi][0]]) * plan.d +
                             y[plan.gate_src[gi][1]]];
  for (int j = 0; j < plan.n; ++j) t += plan.coord_phase[j][y[j]];
  return t;
}

}  // namespace

AmplitudeEstimate estimate_amplitude(const Circuit& c,
                                     const NormalFormRegistry& gates,
                                     const DitString& x, const DitString& z,
                                     double epsilon, uint64_t seed,
                                     long n_samples, int threads) {
  int n = c.n_wires;
  int d = c.d;
  validate_ditstring(x, n, d, "x");
  validate_ditstring(z, n, d, "z");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("epsilon must lie in (0, 1)");

  ExpandedCircuit ex = expand_circuit(c, gates);
  std::vector<std::vector<int>> gens;
  for (const MonomialGate& g : ex.V.gates) gens.push_back(g.C);
  PropertyGReport pg = check_property_g(ex.Q, gens);
  if (!pg.holds)
    throw PropertyGError(
        "property (G) fails for the gate set's Q (max sum " +
        std::to_string(pg.max_sum) + "); the estimator's bound is void");

  SymbolicAction action = symbolic_action(ex.V);
  QDecomposition qd = q_decomposition(ex.Q);

  AmplitudeEstimate est;
  est.epsilon = epsilon;
  est.seed = seed;

  Marginals marg = marginals(x, z, action, qd);
  if (marg.certified_zero) {
    est.certified_zero = true;
    return est;
  }
  est.rho = normalization_rho(x, z, action, qd);

  long N = n_samples > 0 ? n_samples : default_sample_count(n, epsilon);
  est.n_samples = N;
  est.failure_bound = chernoff_bound(N, epsilon, 1.0);

  IntervalTable table = build_intervals(marg.P, default_coin_bits(n, d));
  SamplePlan plan = build_sample_plan(ex.V, action, qd, x, z);

  auto run_range = [&](long lo, long hi) {
    cx acc(0.0, 0.0);
    for (long i = lo; i < hi; ++i) {
      SplitMix64 stream = derive_stream(seed, uint64_t(i));
      DitString y = sample_intervals(table, stream);
      double t = plan_theta(plan, y);
      acc += cx(std::cos(t), std::sin(t));
    }
    return acc;
  };

  cx total(0.0, 0.0);
  int workers = std::max(1, threads);
  if (workers == 1 || N < 2 * workers) {
    total = run_range(0, N);
  } else {
    std::vector<cx> partial(workers, cx(0.0, 0.0));
    std::vector<std::thread> pool;
    long chunk = (N + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long lo = std::min<long>(N, w * chunk);
      long hi = std::min<long>(N, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { partial[w] = run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (int w = 0; w < workers; ++w) total += partial[w];
  }
  est.value = est.rho * total / double(N);
  return est;
}

cx exhaustive_mean(const Circuit& c, const NormalFormRegistry& gates,
                   const DitString& x, const DitString& z) {
  int n = c.n_wires;
  int d = c.d;
  validate_ditstring(x, n, d, "x");
  validate_ditstring(z, n, d, "z");
  long dim = checked_dim(d, n);
  ExpandedCircuit ex = expand_circuit(c, gates);
  SymbolicAction action = symbolic_action(ex.V);
  QDecomposition qd = q_decomposition(ex.Q);
  Marginals marg = marginals(x, z, action, qd);
  if (marg.certified_zero) return cx(0.0, 0.0);
  double rho = normalization_rho(x, z, action, qd);
  cx sum(0.0, 0.0);
  for (long idx = 0; idx < dim; ++idx) {
    DitString y = index_to_ditstring(idx, d, n);
    double py = 1.0;
    for (int j = 0; j < n; ++j) py *= marg.P[j][y[j]];
    if (py == 0.0) continue;
    double t = theta(y, phase_of(ex.V, y), qd, x, z, action);
    sum += py * rho * cx(std::cos(t), std::sin(t));
  }
  return sum;
}

}  // namespace ybsim
