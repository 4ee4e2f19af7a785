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

#include "lcu/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

constexpr int kDenseGuardQubits = 12;
const std::complex<double> kI(0.0, 1.0);

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) {
    throw std::invalid_argument("qubit index " + std::to_string(q) +
                                " out of range for " + std::to_string(n) +
                                " qubits");
  }
}

}  // namespace

Gate Gate::rx(int q, double angle) { return Gate{GateKind::Rx, {q}, angle, {}}; }
Gate Gate::ry(int q, double angle) { return Gate{GateKind::Ry, {q}, angle, {}}; }
Gate Gate::rz(int q, double angle) { return Gate{GateKind::Rz, {q}, angle, {}}; }

Gate Gate::u2x2(int q, const Eigen::Matrix2cd& m) {
  if ((m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("u2x2 payload is not unitary");
  }
  return Gate{GateKind::U2x2, {q}, 0.0, m};
}

Gate Gate::cx(int control, int target) {
  if (control == target) throw std::invalid_argument("cx qubits must be distinct");
  return Gate{GateKind::Cx, {control, target}, 0.0, {}};
}

Gate Gate::x(int q) { return Gate{GateKind::X, {q}, 0.0, {}}; }
Gate Gate::h(int q) { return Gate{GateKind::H, {q}, 0.0, {}}; }
Gate Gate::measure(int q) { return Gate{GateKind::Measure, {q}, 0.0, {}}; }

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
}

void Circuit::add(Gate g) {
  for (int q : g.qubits) check_qubit(q, n_qubits_);
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("circuit size mismatch in append");
  }
  for (const Gate& g : other.gates_) add(g);
  global_phase_ += other.global_phase_;
}

Circuit Circuit::adjoint() const {
  Circuit out(n_qubits_);
  out.global_phase_ = -global_phase_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz:
        g.angle = -g.angle;
        break;
      case GateKind::U2x2:
        g.matrix = g.matrix.adjoint().eval();
        break;
      case GateKind::Cx:
      case GateKind::X:
      case GateKind::H:
        break;
      case GateKind::Measure:
        throw std::invalid_argument("cannot invert a measurement");
    }
    out.add(std::move(g));
  }
  return out;
}

bool Circuit::has_measure() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::Measure;
  });
}

Eigen::Matrix2cd gate_matrix_2x2(const Gate& g) {
  Eigen::Matrix2cd m;
  const double half = g.angle / 2.0;
  switch (g.kind) {
    case GateKind::Rx:
      m << std::cos(half), -kI * std::sin(half), -kI * std::sin(half), std::cos(half);
      return m;
    case GateKind::Ry:
      m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
      return m;
    case GateKind::Rz:
      m << std::exp(-kI * half), 0, 0, std::exp(kI * half);
      return m;
    case GateKind::X:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::H:
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    case GateKind::U2x2:
      return g.matrix;
    default:
      throw std::invalid_argument("no 2x2 matrix for this gate kind");
  }
}

EulerZYZ euler_zyz(const Eigen::Matrix2cd& u, double tol) {
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("euler_zyz: matrix not unitary");
  }
  const std::complex<double> det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const double phase = 0.5 * std::arg(det);
  const Eigen::Matrix2cd v = u * std::exp(-kI * phase);
  const std::complex<double> a = v(0, 0), b = v(0, 1);
  const double gamma = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double arg_a = std::abs(a) > 1e-14 ? std::arg(a) : 0.0;
  const double arg_mb = std::abs(b) > 1e-14 ? std::arg(-b) : 0.0;
  const double delta = -arg_a - arg_mb;
  const double beta = -arg_a + arg_mb;
  return EulerZYZ{phase, beta, gamma, delta};
}

Circuit Circuit::lower_u2x2(double tol) const {
  Circuit out(n_qubits_);
  out.global_phase_ = global_phase_;
  for (const Gate& g : gates_) {
    if (g.kind != GateKind::U2x2) {
      out.add(g);
      continue;
    }
    const EulerZYZ e = euler_zyz(g.matrix, tol);
    const int q = g.qubits[0];
    if (std::abs(e.beta) > 1e-12) out.add(Gate::rz(q, e.beta));
    if (std::abs(e.gamma) > 1e-12) out.add(Gate::ry(q, e.gamma));
    if (std::abs(e.delta) > 1e-12) out.add(Gate::rz(q, e.delta));
    out.global_phase_ += e.phase;
  }
  return out;
}

int depth(const Circuit& c) {
  std::vector<int> layer(static_cast<std::size_t>(c.n_qubits()), 0);
  int d = 0;
  for (const Gate& g : c.gates()) {
    int at = 0;
    for (int q : g.qubits) at = std::max(at, layer[static_cast<std::size_t>(q)]);
    ++at;
    for (int q : g.qubits) layer[static_cast<std::size_t>(q)] = at;
    d = std::max(d, at);
  }
  return d;
}

int two_qubit_count(const Circuit& c) {
  int n = 0;
  for (const Gate& g : c.gates()) n += (g.kind == GateKind::Cx) ? 1 : 0;
  return n;
}

namespace {

void apply_single_qubit_dense(Eigen::MatrixXcd& m, const Eigen::Matrix2cd& u,
                              int q, int n) {
  const std::int64_t dim = m.rows();
  const std::int64_t bit = 1ll << (n - 1 - q);
  for (std::int64_t col = 0; col < m.cols(); ++col) {
    for (std::int64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const std::complex<double> a0 = m(i, col);
      const std::complex<double> a1 = m(i | bit, col);
      m(i, col) = u(0, 0) * a0 + u(0, 1) * a1;
      m(i | bit, col) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void apply_cx_dense(Eigen::MatrixXcd& m, int control, int target, int n) {
  const std::int64_t cbit = 1ll << (n - 1 - control);
  const std::int64_t tbit = 1ll << (n - 1 - target);
  const std::int64_t dim = m.rows();
  for (std::int64_t col = 0; col < m.cols(); ++col) {
    for (std::int64_t i = 0; i < dim; ++i) {
      if ((i & cbit) && !(i & tbit)) {
        m.row(i).col(col).swap(m.row(i | tbit).col(col));
      }
    }
  }
}

}  // namespace

Eigen::MatrixXcd unitary_of(const Circuit& c) {
  const int n = c.n_qubits();
  if (n > kDenseGuardQubits) {
    throw GuardViolation("unitary_of guarded to " +
                         std::to_string(kDenseGuardQubits) + " qubits, got " +
                         std::to_string(n));
  }
  if (c.has_measure()) {
    throw std::invalid_argument("unitary_of: circuit contains measurements");
  }
  const std::int64_t dim = 1ll << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Cx) {
      apply_cx_dense(m, g.qubits[0], g.qubits[1], n);
    } else {
      apply_single_qubit_dense(m, gate_matrix_2x2(g), g.qubits[0], n);
    }
  }
  return std::exp(kI * c.global_phase()) * m;
}

namespace {

const char* qasm_name(GateKind k) {
  switch (k) {
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::Cx: return "cx";
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    default: return nullptr;
  }
}

}  // namespace

std::string export_qasm(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  out << "OPENQASM 2.0;\n" << "include \"qelib1.inc\";\n";
  if (c.global_phase() != 0.0) {
    out << "// global_phase " << c.global_phase() << "\n";
  }
  out << "qreg q[" << c.n_qubits() << "];\n";
  if (c.has_measure()) out << "creg c[" << c.n_qubits() << "];\n";
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz:
        out << qasm_name(g.kind) << "(" << g.angle << ") q[" << g.qubits[0] << "];\n";
        break;
      case GateKind::Cx:
        out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
        break;
      case GateKind::X:
      case GateKind::H:
        out << qasm_name(g.kind) << " q[" << g.qubits[0] << "];\n";
        break;
      case GateKind::Measure:
        out << "measure q[" << g.qubits[0] << "] -> c[" << g.qubits[0] << "];\n";
        break;
      case GateKind::U2x2:
        throw std::invalid_argument("export_qasm: lower u2x2 gates first");
    }
  }
  return out.str();
}

namespace {

int parse_qubit_ref(const std::string& s, std::size_t& pos, char reg) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
  if (pos >= s.size() || s[pos] != reg || pos + 1 >= s.size() || s[pos + 1] != '[') {
    throw std::invalid_argument("qasm parse error near '" + s.substr(pos) + "'");
  }
  pos += 2;
  std::size_t end = s.find(']', pos);
  if (end == std::string::npos) throw std::invalid_argument("qasm parse error: missing ]");
  const int q = std::stoi(s.substr(pos, end - pos));
  pos = end + 1;
  return q;
}

}  // namespace

Circuit import_qasm(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n_qubits = -1;
  double global_phase = 0.0;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("// global_phase ", 0) == 0) {
      global_phase = std::stod(line.substr(16));
      continue;
    }
    if (line.rfind("//", 0) == 0 || line.rfind("OPENQASM", 0) == 0 ||
        line.rfind("include", 0) == 0 || line.rfind("creg", 0) == 0) {
      continue;
    }
    if (line.rfind("qreg", 0) == 0) {
      const auto lb = line.find('[');
      const auto rb = line.find(']');
      n_qubits = std::stoi(line.substr(lb + 1, rb - lb - 1));
      continue;
    }
    std::size_t pos = 0;
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t name_end = pos;
    while (name_end < line.size() && std::isalpha(static_cast<unsigned char>(line[name_end]))) ++name_end;
    const std::string name = line.substr(pos, name_end - pos);
    pos = name_end;
    if (name == "rx" || name == "ry" || name == "rz") {
      if (line[pos] != '(') throw std::invalid_argument("qasm parse error: missing (");
      const std::size_t rp = line.find(')', pos);
      const double angle = std::stod(line.substr(pos + 1, rp - pos - 1));
      pos = rp + 1;
      const int q = parse_qubit_ref(line, pos, 'q');
      gates.push_back(name == "rx"   ? Gate::rx(q, angle)
                      : name == "ry" ? Gate::ry(q, angle)
                                     : Gate::rz(q, angle));
    } else if (name == "cx") {
      const int c = parse_qubit_ref(line, pos, 'q');
      const int t = parse_qubit_ref(line, pos, 'q');
      gates.push_back(Gate::cx(c, t));
    } else if (name == "x" || name == "h") {
      const int q = parse_qubit_ref(line, pos, 'q');
      gates.push_back(name == "x" ? Gate::x(q) : Gate::h(q));
    } else if (name == "measure") {
      const int q = parse_qubit_ref(line, pos, 'q');
      gates.push_back(Gate::measure(q));
    } else {
      throw std::invalid_argument("qasm parse error: unknown statement '" + line + "'");
    }
  }
  if (n_qubits < 0) throw std::invalid_argument("qasm parse error: no qreg");
  Circuit c(n_qubits);
  for (Gate& g : gates) c.add(std::move(g));
  c.add_phase(global_phase);
  return c;
}

}  // namespace lcu
