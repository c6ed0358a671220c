#include "qmut/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmut {

namespace {

enum class TokKind { Ident, Number, String, Symbol, End };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    const int line = line_, col = col_;
    if (pos_ >= src_.size()) return {TokKind::End, "", line, col};
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        s += advance();
      return {TokKind::Ident, s, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
              src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '+' || src_[pos_] == '-') && !s.empty() &&
               (s.back() == 'e' || s.back() == 'E'))))
        s += advance();
      return {TokKind::Number, s, line, col};
    }
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') s += advance();
      if (pos_ >= src_.size()) throw QasmError("unterminated string", line, col);
      advance();
      return {TokKind::String, s, line, col};
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      return {TokKind::Symbol, "->", line, col};
    }
    std::string s(1, advance());
    return {TokKind::Symbol, s, line, col};
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& src, std::string name)
      : lexer_(src), name_(std::move(name)) {
    advance();
  }

  Circuit parse() {
    expect_ident("OPENQASM");
    if (cur_.kind != TokKind::Number || cur_.text != "2.0")
      fail("expected version 2.0");
    advance();
    expect_symbol(";");

    Circuit circuit;
    bool have_qreg = false;
    int measured_count = 0;
    std::vector<bool> measured_qubits;

    while (cur_.kind != TokKind::End) {
      if (cur_.kind != TokKind::Ident) fail("expected a statement");
      const Token stmt = cur_;
      if (stmt.text == "include") {
        advance();
        if (cur_.kind != TokKind::String) fail("expected include path string");
        advance();
        expect_symbol(";");
        continue;
      }
      if (stmt.text == "qreg") {
        if (have_qreg) fail("only one quantum register is supported");
        advance();
        auto [name, size] = parse_reg_decl();
        qreg_name_ = name;
        circuit = Circuit(name_, size);
        measured_qubits.assign(static_cast<std::size_t>(size), false);
        have_qreg = true;
        continue;
      }
      if (stmt.text == "creg") {
        if (!creg_name_.empty()) fail("only one classical register is supported");
        advance();
        auto [name, size] = parse_reg_decl();
        creg_name_ = name;
        creg_size_ = size;
        continue;
      }
      if (!have_qreg) fail("quantum register must be declared before operations");
      if (stmt.text == "barrier") {
        advance();
        for (int q : parse_qubit_args(circuit.n_qubits(), /*allow_broadcast=*/true))
          circuit.append({GateKind::Barrier, {q}, {}});
        expect_symbol(";");
        continue;
      }
      if (stmt.text == "measure") {
        advance();
        std::vector<int> qs = parse_qubit_args(circuit.n_qubits(), /*allow_broadcast=*/true);
        expect_symbol("->");
        parse_creg_target();
        expect_symbol(";");
        for (int q : qs) {
          if (measured_qubits[static_cast<std::size_t>(q)])
            fail_at(stmt, "qubit measured twice");
          measured_qubits[static_cast<std::size_t>(q)] = true;
          ++measured_count;
        }
        continue;
      }

      // Gate statement.
      const std::optional<GateKind> kind = gate_kind_from_name(stmt.text);
      if (!kind) fail_at(stmt, "unsupported gate \"" + stmt.text + "\"");
      if (measured_count > 0)
        fail_at(stmt, "operations after measurement are not supported");
      advance();
      const GateInfo& info = gate_info(*kind);
      std::vector<double> params;
      if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
        advance();
        while (true) {
          params.push_back(parse_angle_expr());
          if (cur_.kind == TokKind::Symbol && cur_.text == ",") {
            advance();
            continue;
          }
          break;
        }
        expect_symbol(")");
      }
      if (static_cast<int>(params.size()) != info.param_count)
        fail_at(stmt, std::string("gate ") + info.name + " expects " +
                          std::to_string(info.param_count) + " parameter(s)");
      // Arity 0 marks variadic ops (barrier), which also accept a full register.
      const bool variadic = info.arity == 0;
      const bool broadcast_ok = info.arity == 1 || variadic;
      std::vector<int> qs = parse_qubit_args(circuit.n_qubits(), broadcast_ok);
      expect_symbol(";");
      if (variadic) {
        try {
          circuit.append({*kind, qs, params});
        } catch (const std::invalid_argument& e) {
          fail_at(stmt, e.what());
        }
      } else if (broadcast_ok && static_cast<int>(qs.size()) > info.arity) {
        for (int q : qs) circuit.append({*kind, {q}, params});
      } else {
        if (static_cast<int>(qs.size()) != info.arity)
          fail_at(stmt, std::string("gate ") + info.name + " expects " +
                            std::to_string(info.arity) + " qubit argument(s)");
        try {
          circuit.append({*kind, qs, params});
        } catch (const std::invalid_argument& e) {
          fail_at(stmt, e.what());
        }
      }
    }

    if (!have_qreg) throw QasmError("missing quantum register", 1, 1);
    if (measured_count > 0) {
      for (std::size_t q = 0; q < measured_qubits.size(); ++q)
        if (!measured_qubits[q])
          throw QasmError("partial measurement: qubit " + std::to_string(q) +
                              " is not measured",
                          1, 1);
      circuit.set_measured(true);
    }
    return circuit;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(cur_, msg); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw QasmError(msg, t.line, t.column);
  }

  void expect_ident(const std::string& text) {
    if (cur_.kind != TokKind::Ident || cur_.text != text)
      fail("expected \"" + text + "\"");
    advance();
  }

  void expect_symbol(const std::string& text) {
    if (cur_.kind != TokKind::Symbol || cur_.text != text)
      fail("expected \"" + text + "\"");
    advance();
  }

  std::pair<std::string, int> parse_reg_decl() {
    if (cur_.kind != TokKind::Ident) fail("expected register name");
    const std::string name = cur_.text;
    advance();
    expect_symbol("[");
    if (cur_.kind != TokKind::Number) fail("expected register size");
    const int size = std::stoi(cur_.text);
    advance();
    expect_symbol("]");
    expect_symbol(";");
    if (size < 1) fail("register size must be positive");
    return {name, size};
  }

  int parse_index(int bound, const std::string& what) {
    expect_symbol("[");
    if (cur_.kind != TokKind::Number) fail("expected " + what + " index");
    const Token t = cur_;
    const int idx = std::stoi(cur_.text);
    advance();
    expect_symbol("]");
    if (idx < 0 || idx >= bound) fail_at(t, what + " index out of range");
    return idx;
  }

  std::vector<int> parse_qubit_args(int n_qubits, bool allow_broadcast) {
    std::vector<int> qs;
    while (true) {
      if (cur_.kind != TokKind::Ident || cur_.text != qreg_name_)
        fail("expected quantum register \"" + qreg_name_ + "\"");
      advance();
      if (cur_.kind == TokKind::Symbol && cur_.text == "[") {
        qs.push_back(parse_index(n_qubits, "qubit"));
      } else {
        if (!allow_broadcast) fail("expected an indexed qubit argument");
        for (int q = 0; q < n_qubits; ++q) qs.push_back(q);
      }
      if (cur_.kind == TokKind::Symbol && cur_.text == ",") {
        advance();
        continue;
      }
      break;
    }
    return qs;
  }

  void parse_creg_target() {
    if (creg_name_.empty()) fail("measurement requires a classical register");
    if (cur_.kind != TokKind::Ident || cur_.text != creg_name_)
      fail("expected classical register \"" + creg_name_ + "\"");
    advance();
    if (cur_.kind == TokKind::Symbol && cur_.text == "[")
      parse_index(creg_size_, "classical bit");
  }

  // expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
  // factor := 'pi' | number | '-' factor | '(' expr ')'
  double parse_angle_expr() {
    double v = parse_angle_term();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "+" || cur_.text == "-")) {
      const bool plus = cur_.text == "+";
      advance();
      const double t = parse_angle_term();
      v = plus ? v + t : v - t;
    }
    return v;
  }

  double parse_angle_term() {
    double v = parse_angle_factor();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "*" || cur_.text == "/")) {
      const bool mul = cur_.text == "*";
      advance();
      const double f = parse_angle_factor();
      v = mul ? v * f : v / f;
    }
    return v;
  }

  double parse_angle_factor() {
    if (cur_.kind == TokKind::Symbol && cur_.text == "-") {
      advance();
      return -parse_angle_factor();
    }
    if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
      advance();
      const double v = parse_angle_expr();
      expect_symbol(")");
      return v;
    }
    if (cur_.kind == TokKind::Ident && cur_.text == "pi") {
      advance();
      return M_PI;
    }
    if (cur_.kind == TokKind::Number) {
      const double v = std::stod(cur_.text);
      advance();
      return v;
    }
    fail("expected an angle expression");
  }

  Lexer lexer_;
  Token cur_{};
  std::string name_;
  std::string qreg_name_;
  std::string creg_name_;
  int creg_size_ = 0;
};

std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Circuit parse_qasm(const std::string& text, const std::string& name) {
  return Parser(text, name).parse();
}

std::string emit_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << c.n_qubits() << "];\n";
  if (c.measured()) out << "creg c[" << c.n_qubits() << "];\n";
  for (const GateOp& op : c.ops()) {
    out << gate_info(op.kind).name;
    if (!op.params.empty()) {
      out << "(";
      for (std::size_t i = 0; i < op.params.size(); ++i) {
        if (i) out << ",";
        out << format_angle(op.params[i]);
      }
      out << ")";
    }
    for (std::size_t i = 0; i < op.qubits.size(); ++i)
      out << (i ? "," : " ") << "q[" << op.qubits[i] << "]";
    out << ";\n";
  }
  if (c.measured()) out << "measure q -> c;\n";
  return out.str();
}

Circuit load_qasm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open QASM file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  return parse_qasm(ss.str(), stem);
}

void save_qasm_file(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write QASM file: " + path);
  out << emit_qasm(c);
}

}  // namespace qmut
