#pragma once

#include <stdexcept>
#include <string>

#include "qmut/circuit.hpp"

namespace qmut {

class QasmError : public std::runtime_error {
 public:
  QasmError(std::string message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// OPENQASM 2.0 subset: one quantum register, optional one classical register,
// the supported gate set, barrier, and a terminal full-register measurement.
// Angle expressions accept numeric literals and pi arithmetic (pi, pi/2,
// 3*pi/4, -pi, ...).
Circuit parse_qasm(const std::string& text, const std::string& name = "circuit");

// Inverse of parse_qasm up to structural equality.
std::string emit_qasm(const Circuit& c);

Circuit load_qasm_file(const std::string& path);
void save_qasm_file(const Circuit& c, const std::string& path);

}  // namespace qmut
