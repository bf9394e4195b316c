#pragma once

#include <stdexcept>
#include <string>

namespace kw4 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar jet whose value is too small to invert.
class SingularValue : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

// Differentiation requested on data that carries no stored derivatives.
class OrderExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class UnsupportedSignature : public Error {
 public:
  using Error::Error;
};

class InvalidStructure : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

}  // namespace kw4
