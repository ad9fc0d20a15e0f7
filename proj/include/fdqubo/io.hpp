#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdqubo/qubo.hpp"

namespace fdqubo {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `QUBO <n> <m>`, `OFFSET <r>`, `SCALE <r>`, then m sorted lines `<i> <j> <r>`.
std::string write_qubo(const Qubo& q);

/// Strict reader: throws FormatError carrying the first check_qubo diagnostic.
Qubo read_qubo(std::string_view text);

/// Every violation of the format and of normalization (lower-triangle or
/// duplicate entries, zero weights, unsorted lines, non-reduced rationals,
/// wrong counts). Empty iff the text is a valid file.
std::vector<std::string> check_qubo(std::string_view text);

Domain parse_domain(std::string_view text);

std::string write_sidecar(const Sidecar& sidecar);
/// Throws FormatError on malformed JSON or inconsistent content.
Sidecar read_sidecar(std::string_view text);

/// One `name = value;` line per output variable, then `% energy = <r>`.
std::string format_solution(const Sidecar& sidecar, const Assignment& values,
                            const Rational& energy);

}  // namespace fdqubo
