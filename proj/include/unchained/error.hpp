#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unchained {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A construction would exceed the configured element cap.
class SizeCapError : public Error {
public:
  SizeCapError(std::uint64_t required_, std::uint64_t cap_)
      : Error("size cap exceeded: need " + std::to_string(required_) +
              " elements, cap is " + std::to_string(cap_)),
        required(required_), cap(cap_) {}
  std::uint64_t required;
  std::uint64_t cap;
};

/// Function composition or application with mismatched domains/codomains.
class DomainMismatchError : public Error {
public:
  explicit DomainMismatchError(const std::string& what) : Error(what) {}
};

/// Malformed input value (duplicate names, dangling references, ...).
class InvalidValueError : public Error {
public:
  explicit InvalidValueError(const std::string& what) : Error(what) {}
};

/// Operation requires a recursive coalgebra; carries a witnessing cycle.
class NotRecursiveError : public Error {
public:
  explicit NotRecursiveError(std::vector<std::string> cycle_names)
      : Error(make_message(cycle_names)), cycle(std::move(cycle_names)) {}
  std::vector<std::string> cycle;

private:
  static std::string make_message(const std::vector<std::string>& cycle) {
    std::string m = "coalgebra is not recursive; cycle:";
    for (const auto& n : cycle) m += " " + n;
    return m;
  }
};

/// The given legs do not form a cocone over the diagram.
class NotACoconeError : public Error {
public:
  explicit NotACoconeError(const std::string& what) : Error(what) {}
};

/// No factorization through a diagram node exists.
class NoFactorizationError : public Error {
public:
  explicit NoFactorizationError(const std::string& what) : Error(what) {}
};

/// No merging morphism further along the diagram exists.
class NoMergeError : public Error {
public:
  explicit NoMergeError(const std::string& what) : Error(what) {}
};

/// No triangle over a slice object exists (truncation too small).
class NoTriangleError : public Error {
public:
  explicit NoTriangleError(const std::string& what) : Error(what) {}
};

/// A hypothesis of a structural transfer check failed; names the violated
/// equation.
class HypothesisError : public Error {
public:
  explicit HypothesisError(const std::string& what) : Error(what) {}
};

/// A claimed morphism fails its defining square, or uniqueness/inverse
/// verification fails.
class MorphismCheckError : public Error {
public:
  explicit MorphismCheckError(const std::string& what) : Error(what) {}
};

/// Structure map expected to be bijective is not.
class NotBijectiveError : public Error {
public:
  explicit NotBijectiveError(const std::string& what) : Error(what) {}
};

/// An internal consistency check failed (implementation bug sentinel).
class VerificationError : public Error {
public:
  explicit VerificationError(const std::string& what) : Error(what) {}
};

/// Input document could not be parsed.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Global default element cap, read once from UNCHAINED_CAP (default 200000).
std::uint64_t default_cap();

/// Guard helper: throws SizeCapError when required > cap.
inline void check_cap(std::uint64_t required, std::uint64_t cap) {
  if (required > cap) throw SizeCapError(required, cap);
}

} // namespace unchained
