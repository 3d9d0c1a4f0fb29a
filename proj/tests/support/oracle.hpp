#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "infectio/formula.hpp"
#include "infectio/semantics.hpp"

namespace infectio::testing {

/// Directory holding golden files and figure pairs.
std::filesystem::path data_dir();

/// Truth tables keyed by value letters, independent of the library's
/// Matrix representation.
struct Table {
  std::string name;
  std::string values;      // e.g. "TBNF"
  std::string designated;  // e.g. "TB"
  std::map<char, char> neg;
  std::map<std::pair<char, char>, char> and_;
  std::map<std::pair<char, char>, char> or_;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Parses the layout printed by `infectio tables`.
Table parse_table(const std::string& text);
Table read_golden_table(const std::string& logic);

/// FDE from truth/falsity pairs: T=(1,0), B=(1,1), N=(0,0), F=(0,1).
Table fde_table();
/// `base` with `x` made infectious: any argument x gives x.
Table with_infectious(Table base, char x, std::string name);
Table restrict_to(const Table& t, const std::string& values, std::string name);

/// Tables built without the library: FDE-derived logics from the
/// definitions above, directional logics from the golden transcriptions.
Table oracle_table(LogicId id);

using NaiveValuation = std::map<std::string, char>;

char naive_eval(const Table& t, const Formula& f, const NaiveValuation& v);
/// Brute force: every valuation of the variables over t.values.
bool naive_entails(const Table& t, std::span<const Formula> gamma,
                   std::span<const Formula> delta);

/// Every formula over `vars` of depth at most `depth`.
std::vector<Formula> formulas_up_to(const std::vector<std::string>& vars, int depth);

}  // namespace infectio::testing
