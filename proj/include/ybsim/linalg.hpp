#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex linear algebra for circuits on n wires of local dimension d.
// Index convention throughout the library: big-endian, wire 0 is the most
// significant dit, so |i> tensor |j> maps to index i*dim(j-space) + j.
namespace ybsim {

using cx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using DitString = std::vector<int>;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const { return 1; }
};

// bad input, malformed file, violated builder constraint
struct ValidationError : Error {
  using Error::Error;
  int exit_code() const override { return 2; }
};

// estimator refused because property (G) fails for the gate set's Q
struct PropertyGError : Error {
  using Error::Error;
  int exit_code() const override { return 3; }
};

// dense-oracle size cap or group enumeration cap exceeded
struct ScaleCapError : Error {
  using Error::Error;
  int exit_code() const override { return 4; }
};

// gate fed to an algorithm that cannot simulate it (wrong family, mixed Q)
struct GateMismatchError : Error {
  using Error::Error;
  int exit_code() const override { return 5; }
};

inline constexpr long kOracleCap = 4096;

// d^n, no cap
long dim_pow(int d, int n);

// d^n, throws ScaleCapError beyond kOracleCap
long checked_dim(int d, int n);

long ditstring_to_index(const DitString& s, int d);
DitString index_to_ditstring(long idx, int d, int n);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// gate acting on the listed wires (in listed order) and identity elsewhere
CMatrix embed_gate(const CMatrix& gate, const std::vector<int>& wires, int n,
                   int d);

// state <- embed_gate(gate, wires) * state, without materializing the embedding
void apply_gate(CVector& state, const CMatrix& gate,
                const std::vector<int>& wires, int n, int d);
void apply_gate_columns(CMatrix& m, const CMatrix& gate,
                        const std::vector<int>& wires, int n, int d);

bool is_unitary(const CMatrix& m, double tol = 1e-10);
double frob_dist(const CMatrix& a, const CMatrix& b);

CMatrix identity(long dim);

}  // namespace ybsim
