#include "doctest.h"
#include "qmut/mutate.hpp"
#include "qmut/inputs.hpp"

#include <filesystem>
#include <map>
#include <set>

using namespace qmut;

namespace {

Circuit bell() {
  Circuit c("bell", 2);
  c.append({GateKind::H, {0}, {}});
  c.append({GateKind::Cx, {0, 1}, {}});
  return c;
}

const std::set<MutationOperator> kAllOps = {
    MutationOperator::Add, MutationOperator::Remove, MutationOperator::Replace};

}  // namespace

TEST_CASE("segment quintiles") {
  CHECK(segment_of(0, 10) == Segment::Beginning);
  CHECK(segment_of(1, 10) == Segment::Beginning);
  CHECK(segment_of(2, 10) == Segment::PreMiddle);
  CHECK(segment_of(5, 10) == Segment::Middle);
  CHECK(segment_of(7, 10) == Segment::PostMiddle);
  CHECK(segment_of(9, 10) == Segment::End);
  CHECK(segment_of(0, 1) == Segment::Beginning);
}

TEST_CASE("enumeration counting oracle on bell") {
  // h site: 8 same-shape replacements, 14 single-qubit additions.
  // cx site: 2 replacements (cz, swap), 7 two-qubit additions. Plus 2 removes.
  const std::vector<Mutant> mutants = enumerate_mutants(bell(), kAllOps, 1);
  CHECK(mutants.size() == 33);
  std::map<MutationOperator, int> per_op;
  std::set<std::string> ids;
  for (const Mutant& m : mutants) {
    ++per_op[m.mutation.op];
    ids.insert(m.id);
  }
  CHECK(per_op[MutationOperator::Remove] == 2);
  CHECK(per_op[MutationOperator::Replace] == 10);
  CHECK(per_op[MutationOperator::Add] == 21);
  CHECK(ids.size() == 33);  // ids unique
}

TEST_CASE("operator subsets restrict the enumeration") {
  CHECK(enumerate_mutants(bell(), {MutationOperator::Remove}, 1).size() == 2);
  CHECK(enumerate_mutants(bell(), {MutationOperator::Replace}, 1).size() == 10);
}

TEST_CASE("replace keeps qubits and parameters") {
  Circuit c("rot", 1);
  c.append({GateKind::Rx, {0}, {0.7}});
  for (const Mutant& m : enumerate_mutants(c, {MutationOperator::Replace}, 1)) {
    CHECK(m.circuit.ops()[0].qubits == std::vector<int>{0});
    CHECK(m.circuit.ops()[0].params == std::vector<double>{0.7});
    CHECK(m.circuit.ops()[0].kind != GateKind::Rx);
  }
}

TEST_CASE("add inserts before the position") {
  const std::vector<Mutant> mutants = enumerate_mutants(bell(), {MutationOperator::Add}, 1);
  for (const Mutant& m : mutants) {
    CHECK(m.circuit.n_gates() == 3);
    const GateOp& inserted = m.circuit.ops()[m.mutation.position];
    CHECK(inserted == *m.mutation.new_gate);
  }
}

TEST_CASE("enumeration deterministic per seed") {
  const auto a = enumerate_mutants(bell(), kAllOps, 9);
  const auto b = enumerate_mutants(bell(), kAllOps, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].circuit.structurally_equal(b[i].circuit));
  }
  // Added rotations draw fresh angles under another seed.
  const auto c = enumerate_mutants(bell(), kAllOps, 10);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].circuit.structurally_equal(c[i].circuit)) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("equivalence oracle") {
  const Circuit cut = bell();
  const TestSuite suite = build_suite(2, 3);

  Mutant copy;
  copy.id = "copy";
  copy.circuit = cut;
  CHECK(is_equivalent(cut, copy, suite));
  CHECK(copy.label == MutantLabel::Equivalent);

  Mutant flipped;
  flipped.id = "flipped";
  flipped.circuit = cut;
  flipped.circuit.append({GateKind::X, {0}, {}});
  CHECK_FALSE(is_equivalent(cut, flipped, suite));
  CHECK(flipped.label == MutantLabel::NonEquivalent);
}

TEST_CASE("generated equivalents really are equivalent") {
  const Circuit cut = bell();
  const TestSuite suite = build_suite(2, 3);
  for (Mutant& m : gen_equivalent(cut, 12, 17)) {
    CHECK(m.label == MutantLabel::Equivalent);
    CHECK(is_equivalent(cut, m, suite));
    CHECK(m.circuit.n_gates() > cut.n_gates());
  }
}

TEST_CASE("balanced sampling") {
  std::vector<Mutant> pool = enumerate_mutants(bell(), kAllOps, 5);

  const std::vector<Mutant> picked = sample_balanced(pool, 12, 5);
  CHECK(picked.size() == 12);
  std::set<std::string> ids;
  for (const Mutant& m : picked) ids.insert(m.id);
  CHECK(ids.size() == 12);
  for (std::size_t i = 1; i < picked.size(); ++i) CHECK(picked[i - 1].id < picked[i].id);

  // Deterministic per seed.
  const std::vector<Mutant> again = sample_balanced(pool, 12, 5);
  for (std::size_t i = 0; i < picked.size(); ++i) CHECK(picked[i].id == again[i].id);

  // Operators mix instead of exhausting one first.
  std::map<MutationOperator, int> per_op;
  for (const Mutant& m : picked) ++per_op[m.mutation.op];
  CHECK(per_op[MutationOperator::Add] > 0);
  CHECK(per_op[MutationOperator::Remove] > 0);
  CHECK(per_op[MutationOperator::Replace] > 0);

  // Full quota returns the pool itself (sorted by id).
  const std::vector<Mutant> all = sample_balanced(pool, pool.size(), 5);
  CHECK(all.size() == pool.size());

  CHECK_THROWS_AS(sample_balanced(pool, pool.size() + 1, 5), std::invalid_argument);
}

TEST_CASE("gate kind coverage at generous quotas") {
  std::vector<Mutant> pool = enumerate_mutants(bell(), kAllOps, 5);
  std::set<std::string> pool_kinds;
  for (const Mutant& m : pool) pool_kinds.insert(m.gate_kind);
  const std::vector<Mutant> picked = sample_balanced(pool, 25, 5);
  std::set<std::string> picked_kinds;
  for (const Mutant& m : picked) picked_kinds.insert(m.gate_kind);
  CHECK(picked_kinds == pool_kinds);
}

TEST_CASE("mutant directory round trip") {
  std::vector<Mutant> mutants = enumerate_mutants(bell(), kAllOps, 2);
  const TestSuite suite = build_suite(2, 3);
  for (Mutant& m : mutants) is_equivalent(bell(), m, suite);
  const std::string dir =
      (std::filesystem::temp_directory_path() / "qmut_test_mutants").string();
  std::filesystem::remove_all(dir);
  save_mutants(mutants, dir);
  const std::vector<Mutant> back = load_mutants(dir);
  REQUIRE(back.size() == mutants.size());
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    CHECK(back[i].id == mutants[i].id);
    CHECK(back[i].cut_name == mutants[i].cut_name);
    CHECK(back[i].label == mutants[i].label);
    CHECK(back[i].gate_kind == mutants[i].gate_kind);
    CHECK(back[i].mutation.op == mutants[i].mutation.op);
    CHECK(back[i].mutation.segment == mutants[i].mutation.segment);
    CHECK(back[i].circuit.structurally_equal(mutants[i].circuit));
  }
  std::filesystem::remove_all(dir);
}
