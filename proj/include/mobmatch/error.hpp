#pragma once

#include <stdexcept>
#include <string>

namespace mobmatch {

enum class ErrorKind {
  kInvalidArgument,  // caller passed inconsistent dimensions or out-of-range data
  kParse,            // malformed instance/certificate/report text
  kOverflow,         // exact arithmetic left the representable range
  kInexact,          // a product is not an integral number of micro-units
  kTooLarge,         // brute-force enumeration guard
  kNotOptimal,       // dual labelling found a negative cycle
  kInternal,         // an identity that must hold by construction failed
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mobmatch
