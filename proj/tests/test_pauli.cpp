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

#include <catch2/catch_amalgamated.hpp>

#include <omp.h>
#include <sstream>

#include "lcu/errors.hpp"
#include "lcu/pauli.hpp"
#include "test_util.hpp"

using namespace lcu;
using lcu::test::max_abs_diff;
using lcu::test::random_sum;
using lcu::test::random_term;

TEST_CASE("single-qubit products follow the Pauli group table") {
  const auto X = PauliTerm::from_letters("X");
  const auto Y = PauliTerm::from_letters("Y");
  const auto Z = PauliTerm::from_letters("Z");
  const auto XY = multiply(X, Y);
  CHECK(XY.letters() == "Z");
  CHECK(std::abs(XY.phase - Complex(0, 1)) < 1e-12);
  const auto ZZ = multiply(Z, Z);
  CHECK(ZZ.letters() == "I");
  CHECK(std::abs(ZZ.phase - Complex(1, 0)) < 1e-12);
  const auto YX = multiply(Y, X);
  CHECK(std::abs(YX.phase - Complex(0, -1)) < 1e-12);
}

TEST_CASE("two-qubit product against the dense oracle") {
  const auto a = PauliTerm::from_letters("XZ");
  const auto b = PauliTerm::from_letters("YI");
  const auto prod = multiply(a, b);
  CHECK(prod.letters() == "ZZ");
  CHECK(std::abs(prod.phase - Complex(0, 1)) < 1e-12);
  CHECK(max_abs_diff(to_dense(prod), to_dense(a) * to_dense(b)) < 1e-12);
}

TEST_CASE("size mismatch is a dimension error") {
  CHECK_THROWS_AS(multiply(PauliTerm::from_letters("X"), PauliTerm::from_letters("XX")),
                  std::invalid_argument);
}

TEST_CASE("product is associative on random triples") {
  Xoshiro256 rng(42);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_term(4, rng);
    const auto b = random_term(4, rng);
    const auto c = random_term(4, rng);
    const auto left = multiply(multiply(a, b), c);
    const auto right = multiply(a, multiply(b, c));
    CHECK(left.same_string(right));
    CHECK(std::abs(left.phase - right.phase) < 1e-12);
  }
}

TEST_CASE("sum_multiply cancels and collects") {
  PauliSum a(1), b(1);
  a.accumulate(PauliTerm::from_letters("I"), 1.0);
  a.accumulate(PauliTerm::from_letters("Z"), 1.0);
  a.canonicalize();
  b.accumulate(PauliTerm::from_letters("I"), 1.0);
  b.accumulate(PauliTerm::from_letters("Z"), -1.0);
  b.canonicalize();
  const PauliSum prod = sum_multiply(a, b);
  CHECK(prod.size() == 0);

  PauliSum x1(1), x2(1);
  x1.accumulate(PauliTerm::from_letters("X"), 0.7);
  x1.canonicalize();
  x2.accumulate(PauliTerm::from_letters("X"), 2.0);
  x2.canonicalize();
  const PauliSum xx = sum_multiply(x1, x2);
  REQUIRE(xx.size() == 1);
  CHECK(std::abs(xx.coefficient("I") - Complex(1.4, 0)) < 1e-12);
}

TEST_CASE("sum_multiply matches the dense oracle on random sums") {
  Xoshiro256 rng(7);
  for (int it = 0; it < 30; ++it) {
    const auto a = random_sum(3, 5, rng);
    const auto b = random_sum(3, 5, rng);
    const auto prod = sum_multiply(a, b);
    CHECK(max_abs_diff(to_dense(prod), to_dense(a) * to_dense(b)) < 1e-10);
  }
}

TEST_CASE("sum_power basics and dense oracle") {
  PauliSum xz(1);
  xz.accumulate(PauliTerm::from_letters("X"), 1.0);
  xz.accumulate(PauliTerm::from_letters("Z"), 1.0);
  xz.canonicalize();
  const PauliSum sq = sum_power(xz, 2);
  REQUIRE(sq.size() == 1);
  CHECK(std::abs(sq.coefficient("I") - Complex(2, 0)) < 1e-12);

  const PauliSum id = sum_power(xz, 0);
  REQUIRE(id.size() == 1);
  CHECK(std::abs(id.coefficient("I") - Complex(1, 0)) < 1e-12);

  PauliSum h(2);
  h.accumulate(PauliTerm::from_letters("XX"), 0.5);
  h.accumulate(PauliTerm::from_letters("ZI"), 0.3);
  h.canonicalize();
  const PauliSum cubed = sum_power(h, 3);
  const Eigen::MatrixXcd hd = to_dense(h);
  CHECK(max_abs_diff(to_dense(cubed), hd * hd * hd) < 1e-10);
}

TEST_CASE("hermitian power stays hermitian") {
  Xoshiro256 rng(3);
  const auto h = random_sum(3, 6, rng, /*hermitian=*/true);
  const auto p = sum_power(h, 3);
  for (const auto& e : p.entries()) {
    CHECK(std::abs(e.coeff.imag()) < 1e-10);
  }
}

TEST_CASE("truncate drops small terms and never grows") {
  PauliSum a(1);
  a.accumulate(PauliTerm::from_letters("I"), 1.0);
  a.accumulate(PauliTerm::from_letters("Z"), 1e-9);
  a.canonicalize();
  const PauliSum t = truncate(a, 1e-8);
  REQUIRE(t.size() == 1);
  CHECK(std::abs(t.coefficient("I") - Complex(1, 0)) < 1e-12);
  const PauliSum same = truncate(a, 0.0);
  CHECK(same.size() == a.size());
  CHECK(l1_norm(t) <= l1_norm(a));
}

TEST_CASE("to_dense reproduces textbook matrices") {
  PauliSum y1(1);
  y1.accumulate(PauliTerm::from_letters("Y"), 1.0);
  y1.canonicalize();
  Eigen::MatrixXcd expected(2, 2);
  expected << 0, Complex(0, -1), Complex(0, 1), 0;
  CHECK(max_abs_diff(to_dense(y1), expected) < 1e-15);

  PauliSum flip(2);
  flip.accumulate(PauliTerm::from_letters("XX"), 0.5);
  flip.accumulate(PauliTerm::from_letters("YY"), 0.5);
  flip.canonicalize();
  Eigen::MatrixXcd m = to_dense(flip);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  want(1, 2) = want(2, 1) = 1.0;
  CHECK(max_abs_diff(m, want) < 1e-15);
}

TEST_CASE("to_dense guards the dimension") {
  CHECK_THROWS_AS(to_dense(PauliSum::identity(13)), GuardViolation);
}

TEST_CASE("text format round trips") {
  Xoshiro256 rng(11);
  const auto a = random_sum(4, 9, rng);
  std::istringstream in(format_pauli_sum(a));
  const PauliSum back = parse_pauli_sum(in);
  REQUIRE(back.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries()[i].x == back.entries()[i].x);
    CHECK(a.entries()[i].z == back.entries()[i].z);
    CHECK(std::abs(a.entries()[i].coeff - back.entries()[i].coeff) < 1e-15);
  }
}

TEST_CASE("text format accepts comments and rejects junk") {
  std::istringstream ok("# comment\n0.5 0.0 XIZ\n-1 2 YZZ\n");
  const PauliSum s = parse_pauli_sum(ok);
  CHECK(s.size() == 2);
  CHECK(s.n_qubits() == 3);
  std::istringstream bad("0.5 XIZ\n");
  CHECK_THROWS_AS(parse_pauli_sum(bad), std::invalid_argument);
  std::istringstream mixed("1 0 XI\n1 0 XIZ\n");
  CHECK_THROWS_AS(parse_pauli_sum(mixed), std::invalid_argument);
}

TEST_CASE("parallel product matches the serial reference") {
  Xoshiro256 rng(23);
  const auto a = random_sum(6, 300, rng);
  const auto b = random_sum(6, 300, rng);
  const PauliSum par = sum_multiply(a, b);
  const PauliSum ser = reference::sum_multiply(a, b);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par.entries()[i].x == ser.entries()[i].x);
    CHECK(std::abs(par.entries()[i].coeff - ser.entries()[i].coeff) < 1e-12);
  }
}

TEST_CASE("parallel product is reproducible across thread counts") {
  Xoshiro256 rng(29);
  const auto a = random_sum(6, 200, rng);
  const auto b = random_sum(6, 200, rng);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const PauliSum one = sum_multiply(a, b);
  omp_set_num_threads(std::max(2, saved));
  const PauliSum many = sum_multiply(a, b);
  omp_set_num_threads(saved);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one.entries()[i].coeff == many.entries()[i].coeff);  // bit-identical
  }
}

TEST_CASE("tensor places factors on disjoint qubits") {
  PauliSum x(1), z(1);
  x.accumulate(PauliTerm::from_letters("X"), 2.0);
  x.canonicalize();
  z.accumulate(PauliTerm::from_letters("Z"), 3.0);
  z.canonicalize();
  const PauliSum xz = tensor(x, z);
  REQUIRE(xz.size() == 1);
  CHECK(std::abs(xz.coefficient("XZ") - Complex(6, 0)) < 1e-12);
}
