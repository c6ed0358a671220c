#include "doctest.h"
#include "qmut/qasm.hpp"
#include "qmut/circuit.hpp"

#include <cmath>

using namespace qmut;

TEST_CASE("parse a basic program") {
  const std::string src = R"(OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
)";
  const Circuit c = parse_qasm(src, "bell");
  CHECK(c.n_qubits() == 2);
  CHECK(c.n_gates() == 2);
  CHECK(c.measured());
  CHECK(c.ops()[0].kind == GateKind::H);
  CHECK(c.ops()[1].qubits == std::vector<int>{0, 1});
}

TEST_CASE("angle expressions") {
  const std::string src = R"(OPENQASM 2.0;
qreg q[1];
rz(pi/2) q[0];
rx(-pi) q[0];
ry(3*pi/4) q[0];
p(0.25) q[0];
u(pi/2, 1e-3, 2.5e-1) q[0];
)";
  const Circuit c = parse_qasm(src);
  CHECK(c.ops()[0].params[0] == doctest::Approx(M_PI / 2));
  CHECK(c.ops()[1].params[0] == doctest::Approx(-M_PI));
  CHECK(c.ops()[2].params[0] == doctest::Approx(3 * M_PI / 4));
  CHECK(c.ops()[3].params[0] == doctest::Approx(0.25));
  CHECK(c.ops()[4].params[1] == doctest::Approx(1e-3));
  CHECK(c.ops()[4].params[2] == doctest::Approx(0.25));
}

TEST_CASE("broadcast single-qubit gate over the register") {
  const std::string src = R"(OPENQASM 2.0;
qreg q[3];
h q;
)";
  const Circuit c = parse_qasm(src);
  CHECK(c.n_gates() == 3);
  for (int i = 0; i < 3; ++i) CHECK(c.ops()[i].qubits == std::vector<int>{i});
}

TEST_CASE("round trip preserves structure") {
  const std::string src = R"(OPENQASM 2.0;
qreg q[3];
creg c[3];
ry(1.9106332362490186) q[0];
cry(pi/2) q[0],q[1];
cx q[1],q[2];
barrier q;
x q[0];
measure q -> c;
)";
  const Circuit a = parse_qasm(src, "w");
  const Circuit b = parse_qasm(emit_qasm(a), "w2");
  CHECK(a.structurally_equal(b));
}

TEST_CASE("errors carry line information") {
  try {
    parse_qasm("OPENQASM 2.0;\nqreg q[2];\nbadgate q[0];\n");
    FAIL("expected QasmError");
  } catch (const QasmError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("rejected programs") {
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\n"), QasmError);  // missing header
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n"), QasmError);
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n"), QasmError);
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n"), QasmError);
  // Mid-circuit measurement is out of scope.
  CHECK_THROWS_AS(
      parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nmeasure q -> c;\nh q[0];\n"),
      QasmError);
  // Partial measurement is out of scope.
  CHECK_THROWS_AS(
      parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nmeasure q[0] -> c[0];\n"),
      QasmError);
}

TEST_CASE("comments ignored") {
  const std::string src = R"(OPENQASM 2.0;
// a line comment
qreg q[1];
x q[0]; // trailing comment
)";
  CHECK(parse_qasm(src).n_gates() == 1);
}

TEST_CASE("file round trip through the bundled corpus") {
  const std::string dir = std::string(QMUT_SOURCE_DIR) + "/data/corpus";
  for (const char* name : {"bell_2", "ghz_3", "w_state_3", "qft_4"}) {
    const Circuit a = load_qasm_file(dir + "/" + name + ".qasm");
    CHECK(a.name() == name);
    const Circuit b = parse_qasm(emit_qasm(a));
    CHECK(a.structurally_equal(b));
  }
}
