#pragma once

#include <stdexcept>
#include <string>

namespace scsp {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownScheme : Error {
  explicit UnknownScheme(const std::string& name)
      : Error("unknown scheme: " + name) {}
};

struct MalformedTable : Error {
  explicit MalformedTable(const std::string& msg)
      : Error("malformed scheme table: " + msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct UnknownRelation : Error {
  explicit UnknownRelation(const std::string& name)
      : Error("unknown relation: " + name) {}
};

struct UnknownVariable : Error {
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable: " + name) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& msg)
      : Error("arity mismatch: " + msg) {}
};

struct ArityCapExceeded : Error {
  explicit ArityCapExceeded(const std::string& msg)
      : Error("arity cap exceeded: " + msg) {}
};

struct SchemeMismatch : Error {
  explicit SchemeMismatch(const std::string& msg)
      : Error("scheme mismatch: " + msg) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& msg)
      : Error("enumeration cap exceeded: " + msg) {}
};

struct VariableSetMismatch : Error {
  explicit VariableSetMismatch(const std::string& msg)
      : Error("variable set mismatch: " + msg) {}
};

struct WrongScheme : Error {
  explicit WrongScheme(const std::string& msg)
      : Error("wrong scheme: " + msg) {}
};

struct OracleUnavailable : Error {
  explicit OracleUnavailable(const std::string& msg)
      : Error("oracle unavailable: " + msg) {}
};

struct NonBinaryTarget : Error {
  explicit NonBinaryTarget(const std::string& msg)
      : Error("non-binary target relation: " + msg) {}
};

struct MissingRelationFamily : Error {
  explicit MissingRelationFamily(const std::string& name)
      : Error("no map entry family for relation: " + name) {}
};

struct RadiusTooSmall : Error {
  explicit RadiusTooSmall(const std::string& msg)
      : Error("radius too small: " + msg) {}
};

struct RadiusExceeded : Error {
  explicit RadiusExceeded(const std::string& msg)
      : Error("radius exceeded: " + msg) {}
};

struct RadiusMismatch : Error {
  explicit RadiusMismatch(const std::string& msg)
      : Error("radius mismatch: " + msg) {}
};

struct NegationInDefinition : Error {
  explicit NegationInDefinition(const std::string& msg)
      : Error("negation in definition: " + msg) {}
};

struct MissingDefinition : Error {
  explicit MissingDefinition(const std::string& name)
      : Error("missing definition for relation: " + name) {}
};

struct NotABackdoor : Error {
  std::string alpha_desc;
  std::string constraint_desc;
  NotABackdoor(const std::string& alpha, const std::string& constraint)
      : Error("not a backdoor: Sigma undefined for " + constraint +
              " under alpha " + alpha),
        alpha_desc(alpha),
        constraint_desc(constraint) {}
};

struct NotASidedoor : Error {
  explicit NotASidedoor(const std::string& msg)
      : Error("not a sidedoor: " + msg) {}
};

struct KTooSmall : Error {
  explicit KTooSmall(const std::string& msg) : Error("k too small: " + msg) {}
};

struct BadEdgeCount : Error {
  explicit BadEdgeCount(const std::string& msg)
      : Error("bad edge count: " + msg) {}
};

struct SpecInfeasible : Error {
  explicit SpecInfeasible(const std::string& msg)
      : Error("infeasible generator spec: " + msg) {}
};

struct InconsistentAlphaDiagonal : Error {
  explicit InconsistentAlphaDiagonal(const std::string& msg)
      : Error("inconsistent diagonal in alpha: " + msg) {}
};

}  // namespace scsp
