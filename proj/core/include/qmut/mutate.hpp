#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmut/circuit.hpp"
#include "qmut/inputs.hpp"

namespace qmut {

enum class MutationOperator { Add, Remove, Replace };
enum class Segment { Beginning, PreMiddle, Middle, PostMiddle, End };
enum class GateClass { SingleQubit, MultiQubit };
enum class MutantLabel { Equivalent, NonEquivalent, Unlabeled };

const char* operator_name(MutationOperator op);
const char* segment_name(Segment s);
const char* gate_class_name(GateClass g);
const char* label_name(MutantLabel l);
MutationOperator operator_from_name(const std::string& s);
MutantLabel label_from_name(const std::string& s);

// Position-quintile of the CUT gate list.
Segment segment_of(std::size_t position, std::size_t n_gates);

struct Mutation {
  MutationOperator op;
  std::size_t position = 0;
  std::optional<GateOp> new_gate;  // absent for Remove
  Segment segment = Segment::Beginning;
  GateClass gate_class = GateClass::SingleQubit;  // of the affected/inserted gate
};

struct Mutant {
  std::string id;
  std::string cut_name;
  Circuit circuit;
  Mutation mutation;
  MutantLabel label = MutantLabel::Unlabeled;
  std::string gate_kind;  // name of the affected/inserted gate kind
};

// Per gate position: one Remove, one Replace per same-arity same-param-count
// alternative kind (parameters copied), and one Add per kind matching the
// position's qubit tuple, inserted before the position. Rotation parameters
// for Add are drawn seeded-uniform from [0, 2*pi). Deterministic per seed;
// ids are stable across runs.
std::vector<Mutant> enumerate_mutants(const Circuit& cut,
                                      const std::set<MutationOperator>& operators,
                                      std::uint64_t seed);

// Reversibility equivalents: m adjacent copies of one gate G with G^m = I
// (m=2 for x,y,z,h,cx,cz,swap; m=4 for s,sdg; m=8 for t,tdg) at a seeded
// random position. Labelled Equivalent by construction.
std::vector<Mutant> gen_equivalent(const Circuit& cut, int count, std::uint64_t seed);

// Density-matrix equivalence oracle: true iff for every suite input both
// trace_distance < tol and 1 - fidelity < tol under noiseless simulation.
// Sets m.label accordingly.
bool is_equivalent(const Circuit& cut, Mutant& m, const TestSuite& suite, double tol = 1e-10);

// Stratified round-robin over (segment x operator) cells in seeded order,
// with at least one mutant per gate kind present in the pool when the quota
// permits. Output sorted by id; idempotent at fixed quota.
std::vector<Mutant> sample_balanced(const std::vector<Mutant>& pool, std::size_t quota,
                                    std::uint64_t seed);

// Mutants persist as QASM files plus a sidecar manifest.json.
void save_mutants(const std::vector<Mutant>& mutants, const std::string& dir);
std::vector<Mutant> load_mutants(const std::string& dir);

}  // namespace qmut
