#pragma once

#include <string>

#include "mdpc/binary_word.hpp"
#include "mdpc/mdpc_code.hpp"
#include "mdpc/sparse_matrix.hpp"

namespace mdpc {

// JSON file formats (schemas shipped under docs/schemas/):
//   matrix: {"schema_version", "rows", "cols", "row_supports": [[...], ...]}
//   qc key: {"schema_version", "p", "h0": [...], "h1": [...]}
//   word:   {"schema_version", "length", "support": [...]}
// Readers reject unsorted or duplicated support lists and out-of-range entries.

SparseBinaryMatrix read_matrix(const std::string& path);
void write_matrix(const SparseBinaryMatrix& m, const std::string& path);

QcMdpcKey read_qc_key(const std::string& path);
void write_qc_key(const QcMdpcKey& key, const std::string& path);

BinaryWord read_word(const std::string& path);
void write_word(const BinaryWord& w, const std::string& path);

}  // namespace mdpc
