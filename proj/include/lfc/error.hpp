#pragma once

#include <stdexcept>
#include <string>

namespace lfc {

/// Base for every error raised by the toolkit. Messages carry the offending
/// path, view index or pixel so CLI users can act on them directly.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace lfc
