#pragma once

#include <string>
#include <vector>

#include "qmt/system.hpp"

namespace qmt {

/// On-disk form of a system:
///
///   {"name": ..., "atoms": [labels], "matrix": [[{"re": x, "im": y}, ...], ...],
///    "metadata": {key: string}}
///
/// Rows are listed in atom order; composed atoms follow the pair index
/// i * n2 + j. Numbers are written with 17 significant digits so a
/// write/read/write cycle is byte-identical.
struct SystemDocument {
  std::string name;
  std::vector<std::string> atoms;
  Matrix matrix;
  Metadata metadata;
};

/// Throws ErrorCode::Parse for malformed JSON, missing fields, non-numeric
/// entries or a matrix that is not square or does not match the atoms.
/// Non-string metadata values are kept as their JSON text.
SystemDocument parse_document(const std::string& text);

/// Throws ErrorCode::Axiom when the matrix is not a valid system.
QuantumSystem to_system(const SystemDocument& doc, Tolerance tol = {});
SystemDocument to_document(const QuantumSystem& s);

/// Throws ErrorCode::InvalidArgument for non-finite entries.
std::string write_document(const SystemDocument& doc);
std::string write_document(const QuantumSystem& s);

/// File helpers; unreadable or unwritable paths raise ErrorCode::Parse.
SystemDocument read_document_file(const std::string& path);
void write_document_file(const std::string& path, const QuantumSystem& s);

}  // namespace qmt
