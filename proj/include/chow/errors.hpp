#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chow {

/// Base class for every error the engine raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values from rings Z/m and Z/m' with m != m' met in one operation.
class ModulusMismatch : public Error {
 public:
  ModulusMismatch(std::uint64_t lhs, std::uint64_t rhs)
      : Error("modulus mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

/// A matrix whose determinant is not a unit of Z/m was asked for an inverse.
class NotInvertible : public Error {
 public:
  explicit NotInvertible(std::uint64_t det_residue)
      : Error("matrix not invertible: determinant " +
              std::to_string(det_residue) + " is not a unit"),
        det_residue_(det_residue) {}
  std::uint64_t det_residue() const { return det_residue_; }

 private:
  std::uint64_t det_residue_;
};

/// The Gram matrix of a declared algebra is singular over Z/m.
class DegeneratePairing : public Error {
 public:
  explicit DegeneratePairing(std::uint64_t det_residue)
      : Error("degenerate intersection pairing: Gram determinant " +
              std::to_string(det_residue) + " is not a unit"),
        det_residue_(det_residue) {}
  std::uint64_t det_residue() const { return det_residue_; }

 private:
  std::uint64_t det_residue_;
};

/// Cycles or correspondences living on incompatible product spaces.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// cdmin was requested for the zero projector.
class ZeroProjector : public Error {
 public:
  ZeroProjector() : Error("least codimension is undefined for the zero projector") {}
};

/// An instance file could not be read.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace chow
