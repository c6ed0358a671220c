#include "qmut/mutate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "qmut/metrics.hpp"
#include "qmut/qasm.hpp"
#include "qmut/rng.hpp"
#include "qmut/sim.hpp"

namespace qmut {

namespace fs = std::filesystem;

const char* operator_name(MutationOperator op) {
  switch (op) {
    case MutationOperator::Add: return "add";
    case MutationOperator::Remove: return "remove";
    case MutationOperator::Replace: return "replace";
  }
  throw std::logic_error("unknown operator");
}

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::Beginning: return "beginning";
    case Segment::PreMiddle: return "pre_middle";
    case Segment::Middle: return "middle";
    case Segment::PostMiddle: return "post_middle";
    case Segment::End: return "end";
  }
  throw std::logic_error("unknown segment");
}

const char* gate_class_name(GateClass g) {
  return g == GateClass::SingleQubit ? "single" : "multi";
}

const char* label_name(MutantLabel l) {
  switch (l) {
    case MutantLabel::Equivalent: return "equivalent";
    case MutantLabel::NonEquivalent: return "non_equivalent";
    case MutantLabel::Unlabeled: return "unlabeled";
  }
  throw std::logic_error("unknown label");
}

MutationOperator operator_from_name(const std::string& s) {
  if (s == "add") return MutationOperator::Add;
  if (s == "remove") return MutationOperator::Remove;
  if (s == "replace") return MutationOperator::Replace;
  throw std::invalid_argument("unknown mutation operator: " + s);
}

MutantLabel label_from_name(const std::string& s) {
  if (s == "equivalent") return MutantLabel::Equivalent;
  if (s == "non_equivalent") return MutantLabel::NonEquivalent;
  if (s == "unlabeled") return MutantLabel::Unlabeled;
  throw std::invalid_argument("unknown mutant label: " + s);
}

Segment segment_of(std::size_t position, std::size_t n_gates) {
  if (n_gates == 0) return Segment::Beginning;
  std::size_t quintile = 5 * position / n_gates;
  if (quintile > 4) quintile = 4;
  return static_cast<Segment>(quintile);
}

namespace {

const std::vector<GateKind>& mutation_kinds() {
  static const std::vector<GateKind> kinds = {
      GateKind::Id, GateKind::X,   GateKind::Y,   GateKind::Z,   GateKind::H,
      GateKind::S,  GateKind::Sdg, GateKind::T,   GateKind::Tdg, GateKind::Rx,
      GateKind::Ry, GateKind::Rz,  GateKind::P,   GateKind::U,   GateKind::Cx,
      GateKind::Cz, GateKind::Cp,  GateKind::Crx, GateKind::Cry, GateKind::Crz,
      GateKind::Swap, GateKind::Ccx};
  return kinds;
}

// Indices of real gate ops (pseudo-ops are not mutation points).
std::vector<std::size_t> gate_positions(const Circuit& c) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < c.ops().size(); ++i)
    if (!is_pseudo_op(c.ops()[i].kind)) pos.push_back(i);
  return pos;
}

GateClass class_of(const GateOp& op) {
  return op.qubits.size() == 1 ? GateClass::SingleQubit : GateClass::MultiQubit;
}

std::vector<double> draw_params(int count, Rng& rng) {
  std::vector<double> params;
  for (int i = 0; i < count; ++i) params.push_back(rng.next_double() * 2.0 * M_PI);
  return params;
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.next_below(i)]);
}

}  // namespace

std::vector<Mutant> enumerate_mutants(const Circuit& cut,
                                      const std::set<MutationOperator>& operators,
                                      std::uint64_t seed) {
  const std::vector<std::size_t> positions = gate_positions(cut);
  if (positions.empty()) throw std::invalid_argument("cannot mutate an empty circuit");
  const std::size_t n_gates = positions.size();

  std::vector<Mutant> out;
  auto make = [&](std::size_t gate_index, MutationOperator op, Circuit circuit,
                  std::optional<GateOp> new_gate, const GateOp& affected,
                  const std::string& suffix) {
    Mutant m;
    m.id = cut.name() + "_" + operator_name(op) + "_p" + std::to_string(gate_index) + suffix;
    m.cut_name = cut.name();
    m.circuit = std::move(circuit);
    m.circuit.set_name(m.id);
    m.mutation = {op, gate_index, std::move(new_gate), segment_of(gate_index, n_gates),
                  class_of(affected)};
    m.gate_kind = gate_info(affected.kind).name;
    out.push_back(std::move(m));
  };

  for (std::size_t g = 0; g < n_gates; ++g) {
    const std::size_t op_index = positions[g];
    const GateOp& site = cut.ops()[op_index];
    const GateInfo& site_info = gate_info(site.kind);

    if (operators.count(MutationOperator::Remove)) {
      Circuit c = cut;
      c.remove(op_index);
      make(g, MutationOperator::Remove, std::move(c), std::nullopt, site, "");
    }
    if (operators.count(MutationOperator::Replace)) {
      for (GateKind alt : mutation_kinds()) {
        if (alt == site.kind) continue;
        const GateInfo& info = gate_info(alt);
        if (info.arity != site_info.arity || info.param_count != site_info.param_count)
          continue;
        GateOp gate{alt, site.qubits, site.params};
        Circuit c = cut;
        c.replace(op_index, gate);
        make(g, MutationOperator::Replace, std::move(c), gate, gate,
             std::string("_") + info.name);
      }
    }
    if (operators.count(MutationOperator::Add)) {
      for (GateKind kind : mutation_kinds()) {
        const GateInfo& info = gate_info(kind);
        if (info.arity != static_cast<int>(site.qubits.size())) continue;
        const std::string id_suffix = std::string("_") + info.name;
        Rng rng(task_seed(seed, cut.name() + "|add|" + std::to_string(g) + "|" + info.name));
        GateOp gate{kind, site.qubits, draw_params(info.param_count, rng)};
        Circuit c = cut;
        c.insert(op_index, gate);
        make(g, MutationOperator::Add, std::move(c), gate, gate, id_suffix);
      }
    }
  }
  return out;
}

std::vector<Mutant> gen_equivalent(const Circuit& cut, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("equivalent count must be >= 1");
  struct SelfCancelling {
    GateKind kind;
    int order;
  };
  static const std::vector<SelfCancelling> table = {
      {GateKind::X, 2},  {GateKind::Y, 2},   {GateKind::Z, 2},    {GateKind::H, 2},
      {GateKind::Cx, 2}, {GateKind::Cz, 2},  {GateKind::Swap, 2}, {GateKind::S, 4},
      {GateKind::Sdg, 4}, {GateKind::T, 8},  {GateKind::Tdg, 8}};

  const std::size_t n_gates = std::max<std::size_t>(cut.n_gates(), 1);
  std::vector<Mutant> out;
  for (int i = 0; i < count; ++i) {
    Rng rng(task_seed(seed, cut.name() + "|equiv|" + std::to_string(i)));
    std::vector<SelfCancelling> candidates;
    for (const SelfCancelling& sc : table)
      if (gate_info(sc.kind).arity <= cut.n_qubits()) candidates.push_back(sc);
    const SelfCancelling pick = candidates[rng.next_below(candidates.size())];
    const GateInfo& info = gate_info(pick.kind);

    std::vector<int> qubits;
    while (static_cast<int>(qubits.size()) < info.arity) {
      const int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cut.n_qubits())));
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
    }
    const std::size_t insert_at = rng.next_below(cut.ops().size() + 1);

    Mutant m;
    m.id = cut.name() + "_equiv_" + std::to_string(i);
    m.cut_name = cut.name();
    m.circuit = cut;
    m.circuit.set_name(m.id);
    const GateOp gate{pick.kind, qubits, {}};
    for (int rep = 0; rep < pick.order; ++rep) m.circuit.insert(insert_at, gate);
    m.mutation = {MutationOperator::Add, std::min(insert_at, n_gates - 1), gate,
                  segment_of(std::min(insert_at, n_gates - 1), n_gates), class_of(gate)};
    m.label = MutantLabel::Equivalent;
    m.gate_kind = info.name;
    out.push_back(std::move(m));
  }
  return out;
}

bool is_equivalent(const Circuit& cut, Mutant& m, const TestSuite& suite, double tol) {
  if (suite.inputs.empty()) throw std::invalid_argument("equivalence oracle needs inputs");
  for (const TestInput& input : suite.inputs) {
    const DensityMatrix a = run_density(compose(input.prep, cut));
    const DensityMatrix b = run_density(compose(input.prep, m.circuit));
    if (trace_distance(a, b) >= tol || 1.0 - fidelity(a, b) >= tol) {
      m.label = MutantLabel::NonEquivalent;
      return false;
    }
  }
  m.label = MutantLabel::Equivalent;
  return true;
}

std::vector<Mutant> sample_balanced(const std::vector<Mutant>& pool, std::size_t quota,
                                    std::uint64_t seed) {
  if (quota > pool.size()) throw std::invalid_argument("quota exceeds pool size");
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&pool](std::size_t a, std::size_t b) { return pool[a].id < pool[b].id; });

  // (operator, segment) cells, each a seeded-shuffled queue of pool indices.
  std::map<std::pair<int, int>, std::vector<std::size_t>> cells;
  for (std::size_t i : order) {
    const Mutant& m = pool[i];
    cells[{static_cast<int>(m.mutation.op), static_cast<int>(m.mutation.segment)}].push_back(i);
  }
  Rng rng(task_seed(seed, "sample_balanced"));
  std::vector<int> op_cycle;
  std::map<int, std::vector<int>> segments_of_op;
  for (auto& [key, queue] : cells) {
    seeded_shuffle(queue, rng);
    if (std::find(op_cycle.begin(), op_cycle.end(), key.first) == op_cycle.end())
      op_cycle.push_back(key.first);
    segments_of_op[key.first].push_back(key.second);
  }
  seeded_shuffle(op_cycle, rng);
  std::map<int, std::size_t> seg_cursor;
  for (auto& [op, segs] : segments_of_op) seeded_shuffle(segs, rng);

  std::vector<bool> chosen(pool.size(), false);
  std::size_t n_chosen = 0;
  while (n_chosen < quota) {
    bool progressed = false;
    for (int op : op_cycle) {
      if (n_chosen >= quota) break;
      auto& segs = segments_of_op[op];
      for (std::size_t attempt = 0; attempt < segs.size(); ++attempt) {
        auto& cursor = seg_cursor[op];
        auto& queue = cells[{op, segs[cursor % segs.size()]}];
        cursor = (cursor + 1) % segs.size();
        if (!queue.empty()) {
          chosen[queue.back()] = true;
          queue.pop_back();
          ++n_chosen;
          progressed = true;
          break;
        }
      }
    }
    if (!progressed) break;  // all cells exhausted
  }

  // Gate-kind coverage fix-up: swap a duplicate-kind pick for each missing kind.
  std::map<std::string, std::size_t> kind_counts;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (chosen[i]) ++kind_counts[pool[i].gate_kind];
  std::vector<std::string> all_kinds;
  for (std::size_t i : order)
    if (std::find(all_kinds.begin(), all_kinds.end(), pool[i].gate_kind) == all_kinds.end())
      all_kinds.push_back(pool[i].gate_kind);
  for (const std::string& kind : all_kinds) {
    if (kind_counts[kind] > 0) continue;
    std::optional<std::size_t> incoming;
    for (std::size_t i : order)
      if (!chosen[i] && pool[i].gate_kind == kind) {
        incoming = i;
        break;
      }
    if (!incoming) continue;
    // Prefer evicting a same-operator pick so operator balance is preserved.
    std::optional<std::size_t> evict;
    for (int pass = 0; pass < 2 && !evict; ++pass) {
      for (std::size_t i : order) {
        if (!chosen[i] || kind_counts[pool[i].gate_kind] < 2) continue;
        if (pass == 0 && pool[i].mutation.op != pool[*incoming].mutation.op) continue;
        evict = i;
        break;
      }
    }
    if (!evict) continue;  // every chosen kind is a singleton: quota does not permit
    chosen[*evict] = false;
    --kind_counts[pool[*evict].gate_kind];
    chosen[*incoming] = true;
    ++kind_counts[kind];
  }

  std::vector<Mutant> out;
  for (std::size_t i : order)
    if (chosen[i]) out.push_back(pool[i]);
  return out;
}

void save_mutants(const std::vector<Mutant>& mutants, const std::string& dir) {
  fs::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const Mutant& m : mutants) {
    const std::string file = m.id + ".qasm";
    save_qasm_file(m.circuit, (fs::path(dir) / file).string());
    manifest.push_back({{"id", m.id},
                        {"cut", m.cut_name},
                        {"operator", operator_name(m.mutation.op)},
                        {"position", m.mutation.position},
                        {"segment", segment_name(m.mutation.segment)},
                        {"gate_kind", m.gate_kind},
                        {"gate_type", gate_class_name(m.mutation.gate_class)},
                        {"label", label_name(m.label)},
                        {"file", file}});
  }
  std::ofstream out(fs::path(dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
}

std::vector<Mutant> load_mutants(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw std::runtime_error("cannot open mutant manifest in " + dir);
  nlohmann::json manifest;
  in >> manifest;
  std::vector<Mutant> out;
  for (const auto& e : manifest) {
    Mutant m;
    m.id = e.at("id").get<std::string>();
    m.cut_name = e.at("cut").get<std::string>();
    m.circuit = load_qasm_file((fs::path(dir) / e.at("file").get<std::string>()).string());
    m.circuit.set_name(m.id);
    m.mutation.op = operator_from_name(e.at("operator").get<std::string>());
    m.mutation.position = e.at("position").get<std::size_t>();
    const std::string seg = e.at("segment").get<std::string>();
    for (int s = 0; s < 5; ++s)
      if (seg == segment_name(static_cast<Segment>(s))) m.mutation.segment = static_cast<Segment>(s);
    m.mutation.gate_class = e.at("gate_type").get<std::string>() == "single"
                                ? GateClass::SingleQubit
                                : GateClass::MultiQubit;
    m.label = label_from_name(e.at("label").get<std::string>());
    m.gate_kind = e.at("gate_kind").get<std::string>();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace qmut
