#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ybsim/circuit.hpp"
#include "ybsim/rng.hpp"
#include "ybsim/solutions.hpp"

namespace ybsim {

// one placed gate of the Q-cancelled circuit: D P (C x C) on a wire pair
struct MonomialGate {
  std::array<int, 2> wires{0, 1};
  std::vector<cx> D;   // d^2 unit-modulus diagonal entries
  PFlag P = PFlag::Swap;
  std::vector<int> C;  // permutation of [d]
};

struct MonomialCircuit {
  int n_wires = 0;
  int d = 2;
  std::vector<MonomialGate> gates;
};

// circuit = Q^(x n) * V * (Q^-1)^(x n)
struct ExpandedCircuit {
  CMatrix Q;
  MonomialCircuit V;
};

using NormalFormRegistry = std::map<std::string, YbNormalForm>;

// requires every referenced gate to share one Q (GateMismatchError otherwise);
// inverse-flagged ops are rewritten into monomial shape
ExpandedCircuit expand_circuit(const Circuit& c,
                               const NormalFormRegistry& gates);

// V|y> = e^{i phi(y)} |f_1 y_{pi(1)}, ..., f_n y_{pi(n)}>
struct SymbolicAction {
  std::vector<int> pi;              // output wire j sources input wire pi[j]
  std::vector<int> sigma;           // pi^-1
  std::vector<std::vector<int>> f;  // per-output-wire dit bijections
};

SymbolicAction symbolic_action(const MonomialCircuit& V);

// phi(y): the accumulated diagonal phase of V on input y
double phase_of(const MonomialCircuit& V, const DitString& y);

// magnitude/phase split of Q and Q^-1: Q(r,s) = A(r,s) e^{i alpha(r,s)}
struct QDecomposition {
  Eigen::MatrixXd A, alpha;  // from Q
  Eigen::MatrixXd B, beta;   // from Q^-1
};

QDecomposition q_decomposition(const CMatrix& Q);

// theta(y) = phi(y) + sum_j alpha(x_sigma(j), f_sigma(j)(y_j)) + beta(y_j, z_j)
double theta(const DitString& y, double phi_y, const QDecomposition& qd,
             const DitString& x, const DitString& z,
             const SymbolicAction& action);

// rho = prod_j sum_k A(x_sigma(j), f_sigma(j)(k)) B(k, z_j)
double normalization_rho(const DitString& x, const DitString& z,
                         const SymbolicAction& action,
                         const QDecomposition& qd);

struct Marginals {
  bool certified_zero = false;          // some denominator vanished
  std::vector<std::vector<double>> P;   // per-coordinate distributions over [d]
};

Marginals marginals(const DitString& x, const DitString& z,
                    const SymbolicAction& action, const QDecomposition& qd);

// smallest coin width the sampler accepts: ceil(3 n log2 d)
int default_coin_bits(int n, int d);

// cumulative interval boundaries over [0, 2^m), one row per coordinate;
// interval sizes are round-to-nearest of P_j(k) 2^m, last interval absorbs
// the rounding remainder
struct IntervalTable {
  int m = 0;
  std::vector<std::vector<u128>> bounds;  // n rows of d+1 boundaries
};

IntervalTable build_intervals(const std::vector<std::vector<double>>& P, int m);

DitString sample_intervals(const IntervalTable& t, SplitMix64& stream);

// one joint draw; m below default_coin_bits is rejected
DitString sample_product(const std::vector<std::vector<double>>& P, int m,
                         SplitMix64& stream);

// exact joint distribution the interval sampler induces (enumeration scale)
std::vector<double> sampler_distribution(const IntervalTable& t);

double chernoff_bound(long n_samples, double epsilon, double b);

long default_sample_count(int n, double epsilon);  // ceil(8 n / eps^3)

struct AmplitudeEstimate {
  cx value{0.0, 0.0};
  long n_samples = 0;
  double epsilon = 0.0;
  double failure_bound = 0.0;
  double rho = 0.0;
  uint64_t seed = 0;
  bool certified_zero = false;
};

// Monte Carlo estimate of <x|U|z> to additive error epsilon; refuses with
// PropertyGError when property (G) fails for Q over the group generated by
// the gate permutations
AmplitudeEstimate estimate_amplitude(const Circuit& c,
                                     const NormalFormRegistry& gates,
                                     const DitString& x, const DitString& z,
                                     double epsilon, uint64_t seed,
                                     long n_samples = -1, int threads = 1);

// exhaustive sum over all y: sum_y P(y) rho e^{i theta(y)} = E[X], exact
// value of the amplitude; enumeration scale only
cx exhaustive_mean(const Circuit& c, const NormalFormRegistry& gates,
                   const DitString& x, const DitString& z);

}  // namespace ybsim
