#pragma once

#include <stdexcept>
#include <string>

namespace flatknot {

enum class ErrorCode {
  kDegenerate,       // zero-length or coincident input geometry
  kDomain,           // argument outside the supported range
  kNotRegular,       // cusp or back-tracking sample
  kCodimensionOne,   // triple point or tangency in a diagram
  kSingular,         // zero-area alternated cycle, energy is infinite
  kCycleExplosion,   // enumeration exceeded its hard limit
  kBracket,          // root bracket failed
  kParity,           // odd winding count for the closed pendulum curve
  kStalled,          // line search underflow
  kFormat,           // malformed input file
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatknot
