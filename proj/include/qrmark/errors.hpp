#pragma once

#include <stdexcept>
#include <string>

namespace qrmark {

// Contract violations by the caller (bad lengths, out-of-range parameters,
// mismatched fields). Distinct from domain outcomes such as an uncorrectable
// codeword, which are reported through return values.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

// A scheduling request that cannot be satisfied under the given memory cap.
class InfeasibleConfig : public std::runtime_error {
public:
    explicit InfeasibleConfig(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qrmark
