#include "dv/cnf.hpp"

#include <charconv>
#include <cstdlib>
#include <cstdint>

#include "dv/errors.hpp"

namespace dv {

void CnfFormula::validate() const {
  for (const Clause& c : clauses)
    for (Literal lit : c)
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars)
        throw InvalidArgument("literal " + std::to_string(lit) + " outside variables 1.." + std::to_string(num_vars));
}

std::string Assignment::to_string() const {
  std::string out = "v";
  for (std::size_t v = 1; v <= values_.size(); ++v) {
    out += ' ';
    if (!values_[v - 1]) out += '-';
    out += std::to_string(v);
  }
  return out + " 0";
}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

template <class T>
T to_int(const Token& tok, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
    throw ParseError(tok.line, std::string("expected integer ") + what + ", got '" + std::string(tok.text) + "'");
  return v;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<Literal> pending;
  std::size_t line_no = 0, pos = 0;

  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<Token> toks;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) toks.push_back({line.substr(i, j - i), line_no});
      i = j;
    }
    if (toks.empty()) continue;
    if (toks[0].text == "c") continue;
    if (toks[0].text == "%") break;
    if (toks[0].text == "p") {
      if (have_header) throw ParseError(line_no, "duplicate 'p' header");
      if (toks.size() != 4 || toks[1].text != "cnf") throw ParseError(line_no, "expected 'p cnf <vars> <clauses>'");
      f.num_vars = to_int<std::size_t>(toks[2], "variable count");
      declared_clauses = to_int<std::size_t>(toks[3], "clause count");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");
    for (const Token& tok : toks) {
      const Literal lit = to_int<Literal>(tok, "literal");
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError(line_no, "clause has " + std::to_string(pending.size()) + " literals, expected 3");
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::abs(static_cast<long long>(lit))) > f.num_vars)
        throw ParseError(line_no, "variable " + std::to_string(std::abs(lit)) + " exceeds declared count " +
                                      std::to_string(f.num_vars));
      pending.push_back(lit);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(line_no, "last clause is not terminated by 0");
  if (f.clauses.size() != declared_clauses)
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  return f;
}

std::string format_dimacs(const CnfFormula& f) {
  std::string out = "c format v1\np cnf " + std::to_string(f.num_vars) + ' ' + std::to_string(f.clauses.size()) + '\n';
  for (const Clause& c : f.clauses)
    out += std::to_string(c[0]) + ' ' + std::to_string(c[1]) + ' ' + std::to_string(c[2]) + " 0\n";
  return out;
}

bool evaluate(const CnfFormula& f, const Assignment& a) {
  if (a.size() < f.num_vars)
    throw InvalidArgument("assignment covers " + std::to_string(a.size()) + " of " + std::to_string(f.num_vars) +
                          " variables");
  for (const Clause& c : f.clauses)
    if (!a.satisfies(c[0]) && !a.satisfies(c[1]) && !a.satisfies(c[2])) return false;
  return true;
}

std::optional<Assignment> solve_sat_brute_force(const CnfFormula& f, std::size_t var_cap) {
  const std::size_t r = f.num_vars;
  if (r > var_cap || r > 62)
    throw ResourceLimit("SAT brute force: " + std::to_string(r) + " variables exceeds cap " + std::to_string(var_cap));
  f.validate();

  // Counter bit (r - v) holds x_v, so counting up is lexicographic order.
  struct Masks {
    std::uint64_t pos = 0, neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) {
    Masks mk;
    for (Literal lit : c) {
      const std::uint64_t bit = std::uint64_t{1} << (r - static_cast<std::size_t>(std::abs(lit)));
      (lit > 0 ? mk.pos : mk.neg) |= bit;
    }
    masks.push_back(mk);
  }

  const std::uint64_t total = std::uint64_t{1} << r;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (const Masks& mk : masks) {
      if ((x & mk.pos) == 0 && (~x & mk.neg) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<bool> values(r);
    for (std::size_t v = 1; v <= r; ++v) values[v - 1] = (x >> (r - v)) & 1U;
    return Assignment(std::move(values));
  }
  return std::nullopt;
}

}  // namespace dv
