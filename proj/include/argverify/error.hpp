#pragma once

#include <stdexcept>
#include <string>

namespace argverify {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown ids, self-loops, invalid rule shapes, unparseable files.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Graph file carries a version this build does not understand.
class UnsupportedVersion : public MalformedInput {
 public:
  using MalformedInput::MalformedInput;
};

// Refusal to run an exponential routine past its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// Remote client could not be reached; the request may be retried.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Remote client answered with a payload that violates the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A client failed after retries and no fail-open path applies.
class ClientUnavailable : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace argverify
