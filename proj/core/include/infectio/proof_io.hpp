#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "infectio/proof.hpp"

namespace infectio {

/// Reads the S-expression proof format:
///
///   (assume <label> "<formula>")     ; labelled leaf
///   (assume "<formula>")             ; leaf that is never discharged
///   (rule <RuleId> (<proof> ...)
///         (discharge (<premise-index> <label> ...) ...)   ; optional
///         (conclude "<formula>"))                          ; optional
///
/// `conclude` is required only when the premises do not fix the conclusion
/// (OrI1, EFQ, ...). Throws ParseError.
Proof parse_proof(std::string_view text);

/// Inverse of parse_proof; `conclude` is emitted only where it is needed.
std::string write_proof(const Proof& p);

/// Throws std::runtime_error on I/O failure, ParseError on bad content.
Proof read_proof_file(const std::filesystem::path& path);
void write_proof_file(const std::filesystem::path& path, const Proof& p);

}  // namespace infectio
