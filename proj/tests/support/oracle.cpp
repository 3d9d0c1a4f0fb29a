#include "oracle.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace infectio::testing {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string letters(const std::vector<std::string>& toks, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < toks.size(); ++i) s += toks[i][0];
  return s;
}

// T=(1,0), B=(1,1), N=(0,0), F=(0,1)
std::pair<bool, bool> pair_of(char v) {
  switch (v) {
    case 'T': return {true, false};
    case 'B': return {true, true};
    case 'N': return {false, false};
    default: return {false, true};
  }
}

char value_of(bool t, bool f) {
  if (t) return f ? 'B' : 'T';
  return f ? 'F' : 'N';
}

}  // namespace

std::filesystem::path data_dir() { return INFECTIO_TEST_DATA; }

Table parse_table(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::string>> lines;
  for (std::string line; std::getline(in, line);) {
    auto t = tokens(line);
    if (!t.empty()) lines.push_back(std::move(t));
  }
  if (lines.size() < 3) throw std::runtime_error("truncated table");
  Table t;
  t.name = lines[0][0];
  t.values = letters(lines[1], 1);
  t.designated = letters(lines[2], 1);
  std::size_t i = 3;
  auto expect = [&](const std::string& head) {
    if (i >= lines.size() || lines[i][0] != head) throw std::runtime_error("expected " + head);
    ++i;
  };
  expect("~");
  for (char a : t.values) t.neg[a] = lines[i++][1][0];
  expect("&");
  for (char a : t.values) {
    for (std::size_t j = 0; j < t.values.size(); ++j) t.and_[{a, t.values[j]}] = lines[i][1 + j][0];
    ++i;
  }
  expect("|");
  for (char a : t.values) {
    for (std::size_t j = 0; j < t.values.size(); ++j) t.or_[{a, t.values[j]}] = lines[i][1 + j][0];
    ++i;
  }
  return t;
}

Table read_golden_table(const std::string& logic) {
  std::ifstream in(data_dir() / "golden" / "tables" / (logic + ".txt"));
  if (!in) throw std::runtime_error("missing golden table for " + logic);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

Table fde_table() {
  Table t{"FDE", "TBNF", "TB", {}, {}, {}};
  for (char a : t.values) {
    auto [at, af] = pair_of(a);
    t.neg[a] = value_of(af, at);
    for (char b : t.values) {
      auto [bt, bf] = pair_of(b);
      t.and_[{a, b}] = value_of(at && bt, af || bf);
      t.or_[{a, b}] = value_of(at || bt, af && bf);
    }
  }
  return t;
}

Table with_infectious(Table base, char x, std::string name) {
  base.name = std::move(name);
  for (auto& [k, v] : base.and_) {
    if (k.first == x || k.second == x) v = x;
  }
  for (auto& [k, v] : base.or_) {
    if (k.first == x || k.second == x) v = x;
  }
  return base;
}

Table restrict_to(const Table& t, const std::string& values, std::string name) {
  Table r;
  r.name = std::move(name);
  r.values = values;
  for (char d : t.designated) {
    if (values.find(d) != std::string::npos) r.designated += d;
  }
  for (char a : values) {
    r.neg[a] = t.neg.at(a);
    for (char b : values) {
      r.and_[{a, b}] = t.and_.at({a, b});
      r.or_[{a, b}] = t.or_.at({a, b});
    }
  }
  return r;
}

Table oracle_table(LogicId id) {
  const Table fde = fde_table();
  const Table sfde = with_infectious(fde, 'N', "Sfde");
  const Table dsfde = with_infectious(fde, 'B', "dSfde");
  switch (id) {
    case LogicId::FDE: return fde;
    case LogicId::Sfde: return sfde;
    case LogicId::dSfde: return dsfde;
    case LogicId::K3: return restrict_to(fde, "TNF", "K3");
    case LogicId::LP: return restrict_to(fde, "TBF", "LP");
    case LogicId::K3w: return restrict_to(sfde, "TNF", "K3w");
    case LogicId::PWK: return restrict_to(dsfde, "TBF", "PWK");
    case LogicId::SfdeR: return read_golden_table("SfdeR");
    case LogicId::SfdeL: return read_golden_table("SfdeL");
    case LogicId::dSfdeR: return read_golden_table("dSfdeR");
    case LogicId::dSfdeL: return read_golden_table("dSfdeL");
    case LogicId::K3R: return restrict_to(read_golden_table("SfdeR"), "TNF", "K3R");
    case LogicId::K3L: return restrict_to(read_golden_table("SfdeL"), "TNF", "K3L");
    case LogicId::K3R2: return restrict_to(read_golden_table("dSfdeR"), "TBF", "K3R2");
    case LogicId::K3L2: return restrict_to(read_golden_table("dSfdeL"), "TBF", "K3L2");
  }
  throw std::logic_error("unknown logic");
}

char naive_eval(const Table& t, const Formula& f, const NaiveValuation& v) {
  switch (f.kind()) {
    case Connective::var: return v.at(f.name());
    case Connective::neg: return t.neg.at(naive_eval(t, f.operand(), v));
    case Connective::conj:
      return t.and_.at({naive_eval(t, f.left(), v), naive_eval(t, f.right(), v)});
    case Connective::disj:
      return t.or_.at({naive_eval(t, f.left(), v), naive_eval(t, f.right(), v)});
  }
  throw std::logic_error("unknown connective");
}

bool naive_entails(const Table& t, std::span<const Formula> gamma,
                   std::span<const Formula> delta) {
  std::set<std::string> names;
  for (const auto& f : gamma) names.merge(variables(f));
  for (const auto& f : delta) names.merge(variables(f));
  const std::vector<std::string> vars(names.begin(), names.end());
  auto designated = [&](char c) { return t.designated.find(c) != std::string::npos; };
  std::vector<std::size_t> digits(vars.size(), 0);
  while (true) {
    NaiveValuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = t.values[digits[i]];
    bool premises = true;
    for (const auto& g : gamma) premises = premises && designated(naive_eval(t, g, v));
    if (premises) {
      bool some = false;
      for (const auto& d : delta) some = some || designated(naive_eval(t, d, v));
      if (!some) return false;
    }
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (++digits[i] < t.values.size()) break;
      digits[i] = 0;
    }
    if (i == digits.size()) return true;
  }
}

std::vector<Formula> formulas_up_to(const std::vector<std::string>& vars, int depth) {
  std::vector<Formula> out;
  for (const auto& v : vars) out.push_back(Formula::var(v));
  for (int d = 1; d <= depth; ++d) {
    const std::vector<Formula> prev = out;
    for (const auto& a : prev) {
      if (infectio::depth(a) == static_cast<std::size_t>(d - 1)) out.push_back(~a);
    }
    for (const auto& a : prev) {
      for (const auto& b : prev) {
        if (std::max(infectio::depth(a), infectio::depth(b)) != static_cast<std::size_t>(d - 1)) {
          continue;
        }
        out.push_back(a & b);
        out.push_back(a | b);
      }
    }
  }
  return out;
}

}  // namespace infectio::testing
