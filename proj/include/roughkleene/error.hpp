#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "roughkleene/core.hpp"

namespace rk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input: bad ids, non-reflexive tolerance, empty carrier.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error("parse error at '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Raised when an enumeration or construction bound would be exceeded.
class BoundsExceeded : public Error {
 public:
  using Error::Error;
};

/// Some pair lacks a unique greatest lower or least upper bound.
class NotALattice : public Error {
 public:
  enum class Bound { Meet, Join };
  NotALattice(Element a, Element b, Bound bound, const std::string& what)
      : Error(what), a_(a), b_(b), bound_(bound) {}
  Element first() const { return a_; }
  Element second() const { return b_; }
  Bound bound() const { return bound_; }

 private:
  Element a_, b_;
  Bound bound_;
};

class NotDistributive : public Error {
 public:
  NotDistributive(std::vector<Element> triple, const std::string& what)
      : Error(what), triple_(std::move(triple)) {}
  const std::vector<Element>& triple() const { return triple_; }

 private:
  std::vector<Element> triple_;
};

class NotInvolution : public Error {
 public:
  NotInvolution(Element x, const std::string& what) : Error(what), x_(x) {}
  Element element() const { return x_; }

 private:
  Element x_;
};

class NotAntitone : public Error {
 public:
  NotAntitone(Element x, Element y, const std::string& what) : Error(what), x_(x), y_(y) {}
  Element first() const { return x_; }
  Element second() const { return y_; }

 private:
  Element x_, y_;
};

class NoPseudocomplement : public Error {
 public:
  NoPseudocomplement(Element x, const std::string& what) : Error(what), x_(x) {}
  Element element() const { return x_; }

 private:
  Element x_;
};

/// The supplied map on join-irreducibles is not an antitone involution
/// (or violates comparability when a Kleene algebra was requested).
class GViolatesAxioms : public Error {
 public:
  using Error::Error;
};

class NotKleene : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

/// A derived structure contradicts a theorem that must hold for it. These
/// signal implementation bugs; the message carries the witness.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

class CriteriaDisagree : public AssertionFailure {
 public:
  using AssertionFailure::AssertionFailure;
};

class FormulaMismatch : public AssertionFailure {
 public:
  using AssertionFailure::AssertionFailure;
};

class PhiNotIso : public AssertionFailure {
 public:
  using AssertionFailure::AssertionFailure;
};

class IsoCheckFailed : public AssertionFailure {
 public:
  IsoCheckFailed(std::string operation, const std::string& what)
      : AssertionFailure(what), operation_(std::move(operation)) {}
  const std::string& operation() const { return operation_; }

 private:
  std::string operation_;
};

}  // namespace rk
