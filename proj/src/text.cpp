#include <sstream>

#include "hsl/polynomials.hpp"

namespace hsl {

namespace {

std::string half_str(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

void write_part(std::ostringstream& os, bool& first, int q2, const CliffPoly& p) {
  const int m = p.dim();
  for (const auto& [mono, c] : p.grouped()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ") *";
    for (Var v : {Var::X, Var::U, Var::V}) {
      os << ' ' << var_name(v) << "^(";
      for (int i = 0; i < m; ++i) os << (i ? "," : "") << int(mono.at(v, i));
      os << ')';
    }
    os << " * r^(" << half_str(q2) << ')';
  }
}

struct Cursor {
  std::string_view s;
  size_t i = 0;
  void ws() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  void expect(std::string_view t) {
    ws();
    if (s.substr(i, t.size()) != t)
      throw ParseError("expected '" + std::string(t) + "' at offset " + std::to_string(i) + " in polynomial text");
    i += t.size();
  }
  bool done() {
    ws();
    return i >= s.size();
  }
  std::string until(char close) {
    size_t j = s.find(close, i);
    if (j == std::string_view::npos) throw ParseError("unterminated group in polynomial text");
    std::string out(s.substr(i, j - i));
    i = j + 1;
    return out;
  }
  // balanced parenthesised text, opening paren already consumed
  std::string balanced() {
    int depth = 1;
    size_t start = i;
    for (; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')' && --depth == 0) break;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in polynomial text");
    std::string out(s.substr(start, i - start));
    ++i;
    return out;
  }
};

int parse_half(const std::string& t) {
  auto slash = t.find('/');
  if (slash == std::string::npos) return 2 * std::stoi(t);
  if (t.substr(slash + 1) != "2") throw ParseError("radial exponent must be a half-integer: " + t);
  return std::stoi(t.substr(0, slash));
}

}  // namespace

std::string to_text(const CliffPoly& f) { return to_text(RadialFunction(f)); }

std::string to_text(const RadialFunction& f) {
  if (f.parts().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q2, p] : f.parts()) write_part(os, first, q2, p);
  return os.str();
}

RadialFunction parse_radial(std::string_view s, int m) {
  RadialFunction r(m);
  Cursor c{s};
  c.ws();
  if (s.substr(c.i) == "0") return r;
  bool first = true;
  while (!c.done()) {
    if (!first) c.expect("+");
    first = false;
    c.expect("(");
    Multivector coeff = Multivector::parse(c.balanced(), m);
    c.expect("*");
    Monomial mono;
    for (Var v : {Var::X, Var::U, Var::V}) {
      c.expect(std::string(var_name(v)) + "^(");
      std::stringstream ss(c.until(')'));
      std::string tok;
      int i = 0;
      while (std::getline(ss, tok, ',')) {
        if (i >= m) throw ParseError("too many exponents in polynomial text");
        int e = std::stoi(tok);
        if (e < 0 || e > 255) throw ParseError("exponent out of range");
        mono.at(v, i++) = static_cast<std::uint8_t>(e);
      }
      if (i != m) throw ParseError("exponent tuple length does not match dimension");
    }
    c.expect("*");
    c.expect("r^(");
    int q2 = parse_half(c.until(')'));
    r.add_part(q2, CliffPoly::monomial(m, mono, coeff));
  }
  return r;
}

CliffPoly parse_poly(std::string_view s, int m) { return parse_radial(s, m).as_polynomial(); }

}  // namespace hsl
