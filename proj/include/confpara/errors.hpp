#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace confpara {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input. When the input came from a manifest,
/// `path()` holds the JSON pointer of the offending value.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::string path = {})
      : Error(path.empty() ? what : what + " (at " + path + ")"), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured cap. Never silently truncated.
class ResourceCapExceeded : public Error {
 public:
  ResourceCapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + ": needs " + std::to_string(required) + ", cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// The oracles of a decomposition or witness contradict each other
/// (a cover oracle names a piece that does not cover the point while another
/// one does, a transversal decoder does not factor its input, ...).
class MalformedWitness : public Error {
 public:
  using Error::Error;
};

/// Coset recovery found a translate h_j F_l that is not a single block.
class ReconstructionFailure : public Error {
 public:
  ReconstructionFailure(const std::string& what, std::size_t j, std::size_t l)
      : Error(what), j_(j), l_(l) {}

  std::size_t j() const noexcept { return j_; }
  std::size_t l() const noexcept { return l_; }

 private:
  std::size_t j_;
  std::size_t l_;
};

}  // namespace confpara
