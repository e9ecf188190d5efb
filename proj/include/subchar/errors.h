// Copyright 2026 The SubChar Tokenizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBCHAR_ERRORS_H_
#define SUBCHAR_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace subchar {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; `line()` is 1-based, 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  size_t line() const { return line_; }

 private:
  std::string source_;
  size_t line_;
};

// Well-formed input with inconsistent content (duplicate entries, ...).
class LoadError : public Error {
 public:
  using Error::Error;
};

// Invalid user configuration, e.g. a vocabulary smaller than the alphabet.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Encoded form with no character behind it.
class UnknownFormError : public Error {
 public:
  explicit UnknownFormError(const std::string& form)
      : Error("unknown encoded form: " + form), form_(form) {}
  const std::string& form() const { return form_; }

 private:
  std::string form_;
};

// Encoded form shared by several characters (index-free tables).
class AmbiguityError : public Error {
 public:
  AmbiguityError(const std::string& form, std::vector<char32_t> candidates);
  const std::string& form() const { return form_; }
  const std::vector<char32_t>& candidates() const { return candidates_; }

 private:
  std::string form_;
  std::vector<char32_t> candidates_;
};

// Token id outside the vocabulary.
class InvalidIdError : public Error {
 public:
  InvalidIdError(long long id, size_t vocab_size)
      : Error("token id " + std::to_string(id) + " outside vocabulary of size " +
              std::to_string(vocab_size)) {}
};

}  // namespace subchar

#endif  // SUBCHAR_ERRORS_H_
