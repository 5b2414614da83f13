#include "bsat/dimacs.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "bsat/error.hpp"
#include "bsat/text.hpp"

namespace bsat {

namespace {

void emit_body(const prop::Cnf& cnf, std::string& out) {
  out += "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& clause : cnf.clauses) {
    for (auto lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
}

}  // namespace

std::string emit_dimacs(const prop::Cnf& cnf, const AtomTable& atoms) {
  std::string out;
  for (prop::Var v = 1; v <= atoms.size(); ++v) {
    out += "c " + std::to_string(v) + " " + pretty_print(atoms.atom(v)) + "\n";
  }
  emit_body(cnf, out);
  return out;
}

std::string emit_dimacs(const prop::Cnf& cnf) {
  std::string out;
  emit_body(cnf, out);
  return out;
}

prop::Cnf read_dimacs(std::string_view text) {
  prop::Cnf cnf;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  prop::Clause current;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::SyntaxError, "dimacs line " + std::to_string(line_no) + ": " + what);
  };

  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_ws();
    if (i == line.size() || line[i] == 'c' || line[i] == '%') continue;
    if (line[i] == 'p') {
      if (have_header) fail("duplicate header");
      unsigned long vars = 0, clauses = 0;
      char fmt[8] = {};
      if (std::sscanf(std::string(line.substr(i)).c_str(), "p %7s %lu %lu", fmt, &vars, &clauses) != 3 ||
          std::string_view(fmt) != "cnf") {
        fail("malformed header");
      }
      cnf.num_vars = static_cast<prop::Var>(vars);
      declared_clauses = clauses;
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before header");
    while (i < line.size()) {
      skip_ws();
      if (i == line.size()) break;
      long lit = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), lit);
      if (ec != std::errc{}) fail("bad literal");
      i = static_cast<std::size_t>(ptr - line.data());
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (static_cast<unsigned long>(std::labs(lit)) > cnf.num_vars) fail("literal out of range");
        current.push_back(static_cast<prop::Literal>(lit));
      }
    }
  }
  if (!have_header) throw Error(ErrorKind::SyntaxError, "dimacs: missing header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (cnf.clauses.size() != declared_clauses) {
    throw Error(ErrorKind::SyntaxError, "dimacs: header declares " + std::to_string(declared_clauses) +
                                            " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

}  // namespace bsat
