// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flkit {

enum class Errc {
  MissingFile,
  ParseError,
  DanglingReference,
  DuplicateDocId,
  DuplicateStatementId,
  UnknownDoc,
  EmptyIndex,
  NoTests,
  NotRunnable,
  NoStatements,
  ArityMismatch,
  EmptyInput,
  TooLarge,
  NoGroundTruth,
  InvalidConfig,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure surfaced by the library. The code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace flkit
