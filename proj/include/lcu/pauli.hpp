// Copyright 2025 The lcusim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lcu {

using Complex = std::complex<double>;

// Phased Pauli string in symplectic form. Bit j of each mask addresses qubit
// j; the letter on qubit j is I/X/Y/Z for (x,z) = (0,0)/(1,0)/(1,1)/(0,1).
// The operator is phase * (P_0 (x) P_1 (x) ... (x) P_{n-1}).
struct PauliTerm {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  Complex phase = 1.0;

  static PauliTerm identity(int n_qubits);
  static PauliTerm from_letters(const std::string& letters, Complex phase = 1.0);

  char letter_at(int qubit) const;
  std::string letters() const;
  bool same_string(const PauliTerm& other) const;
  bool approx_equal(const PauliTerm& other, double tol = 1e-12) const;
};

// Exact product including the accumulated power-of-i phase.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// P|b> = phase_out |b_out> for a computational basis index (qubit 0 is the
// most significant bit of the index).
std::pair<Complex, std::uint64_t> term_apply_basis(const PauliTerm& t,
                                                   std::uint64_t index);

// Complex-weighted sum of Pauli strings in canonical form: phases folded into
// coefficients, no duplicate strings, entries ordered lexicographically on
// the letters string, coefficients below 1e-14 dropped at collection.
class PauliSum {
 public:
  struct Entry {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    Complex coeff = 0.0;
  };

  explicit PauliSum(int n_qubits = 0);
  static PauliSum identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Accumulates a term; call canonicalize() once after a batch of adds.
  void accumulate(std::uint64_t x, std::uint64_t z, Complex coeff);
  void accumulate(const PauliTerm& term, Complex coeff);
  void canonicalize();

  PauliTerm term_at(std::size_t i) const;
  Complex coefficient(const std::string& letters) const;

 private:
  int n_qubits_;
  std::vector<Entry> entries_;
};

// Letters-lexicographic comparison of two strings in symplectic form.
bool letters_less(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2,
                  std::uint64_t z2);

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& a, Complex factor);
PauliSum adjoint(const PauliSum& a);
// a (x) b on n_a + n_b qubits, with a's qubits first.
PauliSum tensor(const PauliSum& a, const PauliSum& b);

// Distributive product with like-term collection. OpenMP over fixed-size
// chunks of the left operand; the chunked accumulation order is independent
// of the thread count, so results are bit-reproducible.
PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);

// a^k by binary exponentiation; a^0 is the identity sum. eps_inner > 0
// truncates after each internal multiply.
PauliSum sum_power(const PauliSum& a, int k, double eps_inner = 0.0);

// Drops every entry with |coefficient| < eps.
PauliSum truncate(const PauliSum& a, double eps);

double l1_norm(const PauliSum& a);

// Dense matrix oracle; guarded to n <= 12 qubits.
Eigen::MatrixXcd to_dense(const PauliSum& a);
Eigen::MatrixXcd to_dense(const PauliTerm& t);

// Text format, one term per line: "<coeff_re> <coeff_im> <letters>".
PauliSum parse_pauli_sum(std::istream& in);
PauliSum read_pauli_sum_file(const std::string& path);
std::string format_pauli_sum(const PauliSum& a);
void write_pauli_sum_file(const PauliSum& a, const std::string& path);

namespace reference {
// Serial reference implementation kept for testing and benchmarking.
PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);
}  // namespace reference

}  // namespace lcu
