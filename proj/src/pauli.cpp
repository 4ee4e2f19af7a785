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

#include "lcu/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <parallel/algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

constexpr double kCollectTol = 1e-14;
constexpr int kDenseGuardQubits = 12;

void check_n_qubits(int n) {
  if (n < 0 || n > 64) {
    throw std::invalid_argument("qubit count must be in [0, 64], got " +
                                std::to_string(n));
  }
}

// i^e for e mod 4
Complex ipow(unsigned e) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[e & 3u];
}

// Phase exponent of the product of two symplectic strings:
// sigma(x1,z1) sigma(x2,z2) = i^e sigma(x1^x2, z1^z2).
unsigned product_phase_exponent(std::uint64_t x1, std::uint64_t z1,
                                std::uint64_t x2, std::uint64_t z2) {
  const std::uint64_t x3 = x1 ^ x2;
  const std::uint64_t z3 = z1 ^ z2;
  unsigned e = static_cast<unsigned>(std::popcount(x1 & z1)) +
               static_cast<unsigned>(std::popcount(x2 & z2)) +
               2u * static_cast<unsigned>(std::popcount(z1 & x2));
  e += 4u * 16u - static_cast<unsigned>(std::popcount(x3 & z3));
  return e & 3u;
}

std::uint64_t reverse_qubit_bits(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  for (int j = 0; j < n; ++j) {
    if ((mask >> j) & 1u) out |= 1ull << (n - 1 - j);
  }
  return out;
}

struct KeyHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
    std::uint64_t h = k.first * 0x9e3779b97f4a7c15ull;
    h ^= k.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

using AccumMap = std::unordered_map<std::pair<std::uint64_t, std::uint64_t>,
                                    Complex, KeyHash>;

PauliSum from_accum(int n_qubits, const AccumMap& acc) {
  PauliSum out(n_qubits);
  for (const auto& [key, c] : acc) out.accumulate(key.first, key.second, c);
  out.canonicalize();
  return out;
}

}  // namespace

PauliTerm PauliTerm::identity(int n_qubits) {
  check_n_qubits(n_qubits);
  return PauliTerm{n_qubits, 0, 0, 1.0};
}

PauliTerm PauliTerm::from_letters(const std::string& letters, Complex phase) {
  check_n_qubits(static_cast<int>(letters.size()));
  PauliTerm t;
  t.n_qubits = static_cast<int>(letters.size());
  t.phase = phase;
  for (int j = 0; j < t.n_qubits; ++j) {
    switch (letters[j]) {
      case 'I': break;
      case 'X': t.x_mask |= 1ull << j; break;
      case 'Y': t.x_mask |= 1ull << j; t.z_mask |= 1ull << j; break;
      case 'Z': t.z_mask |= 1ull << j; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, letters[j]) + "'");
    }
  }
  return t;
}

char PauliTerm::letter_at(int qubit) const {
  const bool x = (x_mask >> qubit) & 1u;
  const bool z = (z_mask >> qubit) & 1u;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliTerm::letters() const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int j = 0; j < n_qubits; ++j) s[static_cast<std::size_t>(j)] = letter_at(j);
  return s;
}

bool PauliTerm::same_string(const PauliTerm& other) const {
  return n_qubits == other.n_qubits && x_mask == other.x_mask &&
         z_mask == other.z_mask;
}

bool PauliTerm::approx_equal(const PauliTerm& other, double tol) const {
  return same_string(other) && std::abs(phase - other.phase) <= tol;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("PauliTerm size mismatch: " +
                                std::to_string(a.n_qubits) + " vs " +
                                std::to_string(b.n_qubits));
  }
  PauliTerm out;
  out.n_qubits = a.n_qubits;
  out.x_mask = a.x_mask ^ b.x_mask;
  out.z_mask = a.z_mask ^ b.z_mask;
  out.phase = a.phase * b.phase *
              ipow(product_phase_exponent(a.x_mask, a.z_mask, b.x_mask, b.z_mask));
  return out;
}

std::pair<Complex, std::uint64_t> term_apply_basis(const PauliTerm& t,
                                                   std::uint64_t index) {
  const int n = t.n_qubits;
  const std::uint64_t x_idx = reverse_qubit_bits(t.x_mask, n);
  const std::uint64_t z_idx = reverse_qubit_bits(t.z_mask, n);
  const std::uint64_t out = index ^ x_idx;
  const int n_y = std::popcount(t.x_mask & t.z_mask);
  const int sign = std::popcount(index & z_idx);
  Complex phase = t.phase * ipow(static_cast<unsigned>(n_y));
  if (sign & 1) phase = -phase;
  return {phase, out};
}

bool letters_less(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2,
                  std::uint64_t z2) {
  // Per-qubit letter code with I<X<Y<Z: high bit z, low bit x^z.
  const std::uint64_t w1 = x1 ^ z1, w2 = x2 ^ z2;
  const std::uint64_t diff = (z1 ^ z2) | (w1 ^ w2);
  if (diff == 0) return false;
  const int j = std::countr_zero(diff);  // lowest qubit index that differs
  const unsigned c1 = (((z1 >> j) & 1u) << 1) | ((w1 >> j) & 1u);
  const unsigned c2 = (((z2 >> j) & 1u) << 1) | ((w2 >> j) & 1u);
  return c1 < c2;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  check_n_qubits(n_qubits);
}

PauliSum PauliSum::identity(int n_qubits) {
  PauliSum s(n_qubits);
  s.accumulate(0, 0, 1.0);
  s.canonicalize();
  return s;
}

void PauliSum::accumulate(std::uint64_t x, std::uint64_t z, Complex coeff) {
  entries_.push_back(Entry{x, z, coeff});
}

void PauliSum::accumulate(const PauliTerm& term, Complex coeff) {
  if (term.n_qubits != n_qubits_) {
    throw std::invalid_argument("PauliSum/PauliTerm size mismatch");
  }
  accumulate(term.x_mask, term.z_mask, coeff * term.phase);
}

void PauliSum::canonicalize() {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return letters_less(a.x, a.z, b.x, b.z);
  });
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) {
    if (!out.empty() && out.back().x == e.x && out.back().z == e.z) {
      out.back().coeff += e.coeff;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const Entry& e) { return std::abs(e.coeff) <= kCollectTol; });
  entries_ = std::move(out);
}

PauliTerm PauliSum::term_at(std::size_t i) const {
  const Entry& e = entries_.at(i);
  return PauliTerm{n_qubits_, e.x, e.z, 1.0};
}

Complex PauliSum::coefficient(const std::string& letters) const {
  const PauliTerm t = PauliTerm::from_letters(letters);
  if (t.n_qubits != n_qubits_) {
    throw std::invalid_argument("letters length mismatch");
  }
  for (const Entry& e : entries_) {
    if (e.x == t.x_mask && e.z == t.z_mask) return e.coeff;
  }
  return 0.0;
}

PauliSum add(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("PauliSum size mismatch");
  }
  PauliSum out(a.n_qubits());
  for (const auto& e : a.entries()) out.accumulate(e.x, e.z, e.coeff);
  for (const auto& e : b.entries()) out.accumulate(e.x, e.z, e.coeff);
  out.canonicalize();
  return out;
}

PauliSum scale(const PauliSum& a, Complex factor) {
  PauliSum out(a.n_qubits());
  for (const auto& e : a.entries()) out.accumulate(e.x, e.z, e.coeff * factor);
  out.canonicalize();
  return out;
}

PauliSum adjoint(const PauliSum& a) {
  PauliSum out(a.n_qubits());
  for (const auto& e : a.entries()) out.accumulate(e.x, e.z, std::conj(e.coeff));
  out.canonicalize();
  return out;
}

PauliSum tensor(const PauliSum& a, const PauliSum& b) {
  check_n_qubits(a.n_qubits() + b.n_qubits());
  PauliSum out(a.n_qubits() + b.n_qubits());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      out.accumulate(ea.x | (eb.x << a.n_qubits()), ea.z | (eb.z << a.n_qubits()),
                     ea.coeff * eb.coeff);
    }
  }
  out.canonicalize();
  return out;
}

namespace {

void multiply_row_range(const PauliSum& a, const PauliSum& b, std::size_t lo,
                        std::size_t hi, AccumMap& acc) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t j = 0; j < eb.size(); ++j) {
      const std::uint64_t x = ea[i].x ^ eb[j].x;
      const std::uint64_t z = ea[i].z ^ eb[j].z;
      const Complex c = ea[i].coeff * eb[j].coeff *
                        ipow(product_phase_exponent(ea[i].x, ea[i].z, eb[j].x, eb[j].z));
      acc[{x, z}] += c;
    }
  }
}

constexpr int kDenseBucketMaxQubits = 10;

// Small registers: accumulate into per-chunk dense arrays indexed by the
// packed (x, z) key. Chunk boundaries are a function of the input sizes
// only, so the summation order is reproducible for any thread count.
PauliSum sum_multiply_dense(const PauliSum& a, const PauliSum& b) {
  const int n = a.n_qubits();
  const std::size_t buckets = std::size_t{1} << (2 * n);
  const std::size_t na = a.entries().size();
  std::size_t n_chunks = std::max<std::size_t>(
      1, std::min<std::size_t>(16, (64u << 20) / (buckets * sizeof(Complex))));
  n_chunks = std::min(n_chunks, (na + 15) / 16);
  const std::size_t rows_per = (na + n_chunks - 1) / n_chunks;
  std::vector<std::vector<Complex>> partial(n_chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < n_chunks; ++c) {
    auto& acc = partial[c];
    acc.assign(buckets, Complex(0.0));
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    const std::size_t hi = std::min(na, (c + 1) * rows_per);
    for (std::size_t i = c * rows_per; i < hi; ++i) {
      for (std::size_t j = 0; j < eb.size(); ++j) {
        const std::uint64_t x = ea[i].x ^ eb[j].x;
        const std::uint64_t z = ea[i].z ^ eb[j].z;
        acc[x | (z << n)] +=
            ea[i].coeff * eb[j].coeff *
            ipow(product_phase_exponent(ea[i].x, ea[i].z, eb[j].x, eb[j].z));
      }
    }
  }
  for (std::size_t c = 1; c < n_chunks; ++c) {
    for (std::size_t k = 0; k < buckets; ++k) partial[0][k] += partial[c][k];
  }
  PauliSum out(n);
  const std::uint64_t mask = (n == 0) ? 0 : ((~std::uint64_t{0}) >> (64 - n));
  for (std::size_t k = 0; k < buckets; ++k) {
    if (std::abs(partial[0][k]) > 1e-14) {
      out.accumulate(k & mask, k >> n, partial[0][k]);
    }
  }
  out.canonicalize();
  return out;
}

struct FlatProduct {
  std::uint64_t x, z;
  Complex coeff;
};

// Large registers: write all pairwise products to a flat buffer in row
// order, stable-sort by the packed key (the stable permutation is unique,
// hence thread-count independent), then sum equal-key runs in order.
PauliSum sum_multiply_sorted(const PauliSum& a, const PauliSum& b) {
  const int n = a.n_qubits();
  const std::size_t nb = b.entries().size();
  const std::size_t macro_rows =
      std::max<std::size_t>(1, (std::size_t{4} << 20) / std::max<std::size_t>(1, nb));
  PauliSum total(n);
  std::vector<FlatProduct> flat;
  for (std::size_t row0 = 0; row0 < a.entries().size(); row0 += macro_rows) {
    const std::size_t rows = std::min(macro_rows, a.entries().size() - row0);
    flat.resize(rows * nb);
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& ei = a.entries()[row0 + r];
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& ej = b.entries()[j];
        flat[r * nb + j] = FlatProduct{
            ei.x ^ ej.x, ei.z ^ ej.z,
            ei.coeff * ej.coeff *
                ipow(product_phase_exponent(ei.x, ei.z, ej.x, ej.z))};
      }
    }
    __gnu_parallel::stable_sort(
        flat.begin(), flat.end(), [](const FlatProduct& p, const FlatProduct& q) {
          return p.x != q.x ? p.x < q.x : p.z < q.z;
        });
    PauliSum partial(n);
    std::size_t i = 0;
    while (i < flat.size()) {
      std::size_t j = i;
      Complex sum = 0.0;
      while (j < flat.size() && flat[j].x == flat[i].x && flat[j].z == flat[i].z) {
        sum += flat[j].coeff;
        ++j;
      }
      if (std::abs(sum) > 1e-14) partial.accumulate(flat[i].x, flat[i].z, sum);
      i = j;
    }
    partial.canonicalize();
    total = add(total, partial);
  }
  return total;
}

}  // namespace

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("PauliSum size mismatch");
  }
  if (a.empty() || b.empty()) return PauliSum(a.n_qubits());
  if (a.n_qubits() <= kDenseBucketMaxQubits) return sum_multiply_dense(a, b);
  return sum_multiply_sorted(a, b);
}

namespace reference {

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("PauliSum size mismatch");
  }
  AccumMap acc;
  multiply_row_range(a, b, 0, a.entries().size(), acc);
  return from_accum(a.n_qubits(), acc);
}

}  // namespace reference

PauliSum sum_power(const PauliSum& a, int k, double eps_inner) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  PauliSum result = PauliSum::identity(a.n_qubits());
  PauliSum base = a;
  int m = k;
  while (m > 0) {
    if (m & 1) {
      result = sum_multiply(result, base);
      if (eps_inner > 0) result = truncate(result, eps_inner);
    }
    m >>= 1;
    if (m) {
      base = sum_multiply(base, base);
      if (eps_inner > 0) base = truncate(base, eps_inner);
    }
  }
  return result;
}

PauliSum truncate(const PauliSum& a, double eps) {
  if (eps < 0) throw std::invalid_argument("negative truncation threshold");
  PauliSum out(a.n_qubits());
  for (const auto& e : a.entries()) {
    if (std::abs(e.coeff) >= eps) out.accumulate(e.x, e.z, e.coeff);
  }
  out.canonicalize();
  return out;
}

double l1_norm(const PauliSum& a) {
  double s = 0;
  for (const auto& e : a.entries()) s += std::abs(e.coeff);
  return s;
}

Eigen::MatrixXcd to_dense(const PauliSum& a) {
  const int n = a.n_qubits();
  if (n > kDenseGuardQubits) {
    throw GuardViolation("to_dense guarded to " +
                         std::to_string(kDenseGuardQubits) + " qubits, got " +
                         std::to_string(n));
  }
  const std::int64_t dim = 1ll << n;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const PauliTerm t = a.term_at(i);
    const Complex c = a.entries()[i].coeff;
    for (std::int64_t col = 0; col < dim; ++col) {
      auto [ph, row] = term_apply_basis(t, static_cast<std::uint64_t>(col));
      M(static_cast<std::int64_t>(row), col) += c * ph;
    }
  }
  return M;
}

Eigen::MatrixXcd to_dense(const PauliTerm& t) {
  PauliSum s(t.n_qubits);
  s.accumulate(t, 1.0);
  s.canonicalize();
  return to_dense(s);
}

PauliSum parse_pauli_sum(std::istream& in) {
  std::string line;
  int n_qubits = -1;
  std::vector<std::tuple<double, double, std::string>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    double re = 0, im = 0;
    std::string letters;
    if (!(ss >> re >> im >> letters)) {
      throw std::invalid_argument("bad Pauli-sum line " + std::to_string(lineno) +
                                  ": '" + line + "'");
    }
    if (n_qubits < 0) n_qubits = static_cast<int>(letters.size());
    if (static_cast<int>(letters.size()) != n_qubits) {
      throw std::invalid_argument("inconsistent string length at line " +
                                  std::to_string(lineno));
    }
    rows.emplace_back(re, im, letters);
  }
  if (n_qubits < 0) throw std::invalid_argument("empty Pauli-sum input");
  PauliSum out(n_qubits);
  for (const auto& [re, im, letters] : rows) {
    out.accumulate(PauliTerm::from_letters(letters), Complex(re, im));
  }
  out.canonicalize();
  return out;
}

PauliSum read_pauli_sum_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open Pauli-sum file: " + path);
  return parse_pauli_sum(f);
}

std::string format_pauli_sum(const PauliSum& a) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& e = a.entries()[i];
    out << e.coeff.real() << ' ' << e.coeff.imag() << ' '
        << a.term_at(i).letters() << '\n';
  }
  return out.str();
}

void write_pauli_sum_file(const PauliSum& a, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << format_pauli_sum(a);
}

}  // namespace lcu
