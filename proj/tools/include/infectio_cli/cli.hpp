#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "infectio/formula.hpp"
#include "infectio/semantics.hpp"

namespace infectio::cli {

inline constexpr int kOk = 0;
inline constexpr int kFails = 1;
inline constexpr int kUsage = 2;

struct Sequent {
  std::vector<Formula> gamma;
  std::vector<Formula> delta;
};

/// `F1, F2, ... |- G1, G2, ...`; either side may be empty and `⊢` is
/// accepted for `|-`. Throws ParseError.
Sequent parse_sequent(std::string_view text);

/// Row-major rendering of a logic's matrices in the order T, B, N, F.
std::string render_tables(LogicId logic);

/// Runs one command line (without the program name) and returns the exit
/// status: 0 holds/valid/normalised, 1 fails, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infectio::cli
