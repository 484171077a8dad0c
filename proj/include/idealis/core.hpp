#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace idealis {

using Natural = std::uint64_t;
using BigNat = boost::multiprecision::cpp_int;

inline constexpr Natural kInfinity = std::numeric_limits<Natural>::max();

/// Kinds of failure reported by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  Presentation,            // malformed DFA, FunctionSpec, partition, tree
  UnsupportedPresentation, // set outside the class a decider handles
  Budget,                  // enumeration budget exhausted
  Precondition,            // caller-side contract violated
  DensityContract,         // a dense routine failed to extend
  Pool,                    // fresh-name pool exhausted
  CertificateUnavailable,
  DuplicateName,
  Input,                   // bad user input at the CLI boundary
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline constexpr Natural kDefaultBudget = Natural{1} << 20;

/// Enumeration budget for searches over infinite sets. IDEALIS_BUDGET overrides the default.
inline Natural default_budget() {
  if (const char* env = std::getenv("IDEALIS_BUDGET")) {
    try {
      return static_cast<Natural>(std::stoull(env));
    } catch (const std::exception&) {
      fail(ErrorKind::Input, std::string("IDEALIS_BUDGET is not a natural number: ") + env);
    }
  }
  return kDefaultBudget;
}

inline Natural checked_add(Natural a, Natural b) {
  if (a > kInfinity - b) fail(ErrorKind::Presentation, "natural overflow in addition");
  return a + b;
}

inline Natural checked_mul(Natural a, Natural b) {
  if (a != 0 && b > kInfinity / a) fail(ErrorKind::Presentation, "natural overflow in multiplication");
  return a * b;
}

}  // namespace idealis
