/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qccd/circuit_io.hpp"
#include "qccd/haar.hpp"
#include "test_util.hpp"

using namespace qccd;

namespace {

Circuit sample_circuit(std::uint64_t seed) {
  Rng rng(seed);
  CircuitBuilder b(4);
  b.creg("c", 4).creg("leak", 2);
  for (int i = 0; i < 20; ++i) {
    switch (rng.uniform_int(7)) {
      case 0: b.gate(rng.uniform_int(4), sample_haar_2(rng)); break;
      case 1: {
        const int a = static_cast<int>(rng.uniform_int(4));
        b.uzz(a, (a + 1 + rng.uniform_int(3)) % 4, rng.uniform() * 2 - 1);
        break;
      }
      case 2: b.measure(rng.uniform_int(4), "c", rng.uniform_int(4)); break;
      case 3: b.reset(rng.uniform_int(4)); break;
      case 4: b.barrier(); break;
      case 5: b.swap_label(0, 3); break;
      case 6: {
        Predicate p;
        switch (rng.uniform_int(3)) {
          case 0:
            p.kind = Predicate::Kind::BitEquals;
            p.creg = "c";
            p.mask = std::uint64_t{1} << rng.uniform_int(4);
            p.value = rng.uniform_int(2);
            break;
          case 1:
            p.kind = Predicate::Kind::RegEquals;
            p.creg = "c";
            p.value = rng.uniform_int(16);
            break;
          default:
            p.kind = Predicate::Kind::ParityEquals;
            p.creg = "c";
            p.mask = 0b0110;
            p.value = rng.uniform_int(2);
            break;
        }
        b.conditional(p, {Operation::rot1q(1, sample_haar_2(rng)),
                          Operation::uzz(2, 3, 0.25)});
        break;
      }
    }
  }
  auto c = b.build();
  c.metadata["kind"] = "sample";
  return c;
}

}  // namespace

TEST_CASE("text format round-trips losslessly") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Circuit c = sample_circuit(seed);
    const std::string text = write_circuit_text(c);
    const Circuit back = parse_circuit_text(text);
    CHECK(back == c);
    // Stability: writing again gives the identical file.
    CHECK(write_circuit_text(back) == text);
  }
}

TEST_CASE("json format round-trips losslessly") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Circuit c = sample_circuit(seed);
    const Circuit back = parse_circuit_json(write_circuit_json(c));
    CHECK(back == c);
  }
}

TEST_CASE("text and json agree") {
  const Circuit c = sample_circuit(3);
  CHECK(parse_circuit_text(write_circuit_text(c)) ==
        parse_circuit_json(write_circuit_json(c)));
}

TEST_CASE("named gates parse to canonical rotations") {
  const std::string text =
      "qubits 2\n"
      "creg c 1\n"
      "h q0\n"
      "rz q0 1.5707963267948966\n"
      "uzz q0 q1 0.7853981633974483\n"
      "measure q0 -> c[0]\n"
      "if c[0]==1: x q0\n";
  const Circuit c = parse_circuit_text(text);
  REQUIRE(c.ops.size() == 5);
  CHECK(c.ops[0].kind == OpKind::Rot1Q);
  CHECK(c.ops[2].kind == OpKind::UZZ);
  CHECK(c.ops[2].theta() == doctest::Approx(M_PI_4));
  CHECK(c.ops[4].kind == OpKind::Conditional);
  CHECK(c.ops[4].body.size() == 1);
  // The parsed named gate equals the canonical matrix.
  const Mat2 h = gates::from_euler_zyz(c.ops[0].euler[0], c.ops[0].euler[1],
                                       c.ops[0].euler[2]);
  CHECK(distance_up_to_phase(h, gates::hadamard()) < 1e-12);
}

TEST_CASE("parse errors carry line information") {
  CHECK_THROWS_WITH_AS(parse_circuit_text("qubits 2\nbogus q0\n"),
                       doctest::Contains("line 2"), Error);
  CHECK_THROWS_AS(parse_circuit_text("h q0\n"), Error);  // missing header
  CHECK_THROWS_AS(parse_circuit_text("qubits 1\nmeasure q0 -> c[0]\n"), Error);
}

TEST_CASE("noise config round-trips and defaults apply") {
  NoiseModel m;
  m.uzz_offset = 1.0e-3;
  m.eps_spam = 2.0e-3;
  const NoiseModel back = parse_noise_json(write_noise_json(m));
  CHECK(back.uzz_offset == m.uzz_offset);
  CHECK(back.eps_spam == m.eps_spam);
  // Omitted fields take the documented defaults.
  const NoiseModel defaults = parse_noise_json("{ \"eps_spam\": 0.01 }");
  CHECK(defaults.eps_spam == 0.01);
  CHECK(defaults.uzz_slope == doctest::Approx(2.9e-3));
  CHECK(defaults.uzz_offset == doctest::Approx(0.46e-3));
  CHECK(defaults.leak_per_2q == doctest::Approx(3.9e-4));
  CHECK(defaults.eps_mem_per_transport == doctest::Approx(2.2e-4));
  CHECK(defaults.eps_meas_crosstalk == doctest::Approx(4.5e-6));
  CHECK(defaults.eps_reset_crosstalk == doctest::Approx(3.8e-6));
  CHECK_THROWS_AS(parse_noise_json("{ \"eps_spam\": 2.0 }"), Error);
}

TEST_CASE("file io dispatches by extension") {
  const Circuit c = sample_circuit(5);
  save_circuit_file(c, "/tmp/qccd_io_test.qct");
  save_circuit_file(c, "/tmp/qccd_io_test.json");
  CHECK(load_circuit_file("/tmp/qccd_io_test.qct") == c);
  CHECK(load_circuit_file("/tmp/qccd_io_test.json") == c);
  CHECK_THROWS_AS(load_circuit_file("/tmp/definitely_missing.qct"), Error);
}
