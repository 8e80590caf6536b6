// SPDX-License-Identifier: Apache-2.0
//
// Reference statement extractor for a Java-like language subset.
//
// A brace/keyword-driven recursive-descent scanner recognizes the kinds in
// the statement catalog: every statement, method/catch parameters
// (SingleVariableDeclaration), annotations, anonymous class bodies, block
// lambdas, switch expressions, and field initializers (classified by their
// top-level expression kind). Bodies of compound statements are children,
// not separate Block records; a nested free-standing `{ ... }` is a Block.
//
// Statement ids are "<file_path>:<start_line>:<ordinal>", the ordinal being
// the 0-based position among records starting on the same line, in source
// order. A record's tokens are the identifier and string-literal terms of its
// own text, excluding text owned by nested records.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flkit/corpus.hpp"
#include "flkit/text.hpp"

namespace flkit {

/// Raw identifier material for file-level retrieval documents.
struct FileFields {
  std::vector<std::string> class_names;
  std::vector<std::string> method_names;
  std::vector<std::string> variable_names;  // every other identifier occurrence
  std::vector<std::string> comments;
};

struct ExtractionDiagnostic {
  int line = 0;
  std::string message;
};

struct ExtractedFile {
  std::vector<StatementRecord> statements;
  FileFields fields;
  /// Regions skipped as UnsupportedSyntax; extraction continues past them.
  std::vector<ExtractionDiagnostic> diagnostics;
};

ExtractedFile extract_file(std::string_view file_path, std::string_view source,
                           const Tokenizer& tokenizer = Tokenizer());

std::vector<StatementRecord> extract_statements(std::string_view file_path, std::string_view source);

/// Top-level expression kind of a Java expression fragment ("a.b()" ->
/// MethodInvocation). Returns an empty string when it cannot tell.
std::string classify_expression(std::string_view expression);

}  // namespace flkit
