#include "quatfact/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace quatfact {

json to_json(const Quaternion& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

json to_json(const DualQuaternion& q) { return {{"primal", to_json(q.primal())}, {"dual", to_json(q.dual())}}; }

json to_json(const RealUniPoly& p) { return {{"var", var_name(p.var())}, {"coeffs", p.coeffs()}}; }

json to_json(const QuatBiPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"t", m.t}, {"s", m.s}, {"c", to_json(c)}});
  return {{"terms", terms}};
}

json to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& x : f.factors) factors.push_back({{"var", var_name(x.var)}, {"h", to_json(x.h)}});
  return {{"unit", to_json(f.unit)}, {"K", to_json(f.K)}, {"factors", factors}};
}

json to_json(const EnumerationEntry& e) {
  json j = to_json(e.factorization);
  return {{"role", var_name(e.role)},     {"order", e.order},         {"K", j["K"]},
          {"unit", j["unit"]},            {"factors", j["factors"]},  {"residual", e.residual},
          {"k_is_one", e.k_is_one},       {"class", e.equivalence_class}};
}

json to_json(const LiftSolution& s) {
  json layout = json::array();
  for (const auto& c : s.layout) layout.push_back({{"side", std::string(1, c.side)}, {"index", c.index}});
  return {{"dimension", s.dimension}, {"basis", s.basis}, {"parameters", s.parameters}, {"layout", layout}};
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

Var var_from(const json& j) {
  const std::string v = j.get<std::string>();
  if (v == "t") return Var::t;
  if (v == "s") return Var::s;
  bad("variable must be \"t\" or \"s\", got \"" + v + "\"");
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

Quaternion quaternion_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array() || j.size() != 4) bad("quaternion must be an array [w, x, y, z]");
    return Quaternion(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  });
}

RealUniPoly real_poly_from_json(const json& j) {
  return guarded([&] { return RealUniPoly(var_from(j.at("var")), j.at("coeffs").get<std::vector<double>>()); });
}

QuatBiPoly quat_poly_from_json(const json& j) {
  return guarded([&] {
    QuatBiPoly p;
    for (const auto& term : j.at("terms")) {
      const int t = term.at("t").get<int>(), s = term.at("s").get<int>();
      if (t < 0 || s < 0) bad("negative exponent in term");
      p = p + QuatBiPoly::term(t, s, quaternion_from_json(term.at("c")));
    }
    return p;
  });
}

Factorization factorization_from_json(const json& j) {
  return guarded([&] {
    Factorization f;
    if (j.contains("unit")) f.unit = quaternion_from_json(j["unit"]);
    if (j.contains("K")) f.K = real_poly_from_json(j["K"]);
    for (const auto& x : j.at("factors")) f.factors.push_back({var_from(x.at("var")), quaternion_from_json(x.at("h"))});
    return f;
  });
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  QuatBiPoly parse_all() {
    QuatBiPoly p = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

  // Sequence of top-level parenthesized groups.
  std::vector<QuatBiPoly> groups() {
    std::vector<QuatBiPoly> out;
    skip();
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*') {
        ++pos_;
        skip();
        continue;
      }
      if (src_[pos_] != '(') fail("expected '(' starting a factor");
      ++pos_;
      out.push_back(expr());
      expect(')');
      skip();
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { bad(msg + " at offset " + std::to_string(pos_)); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool starts_factor() {
    const char c = peek();
    return c == '(' || c == '[' || c == '.' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::string_view("ijkts").find(c) != std::string_view::npos;
  }

  QuatBiPoly expr() {
    QuatBiPoly acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      const QuatBiPoly rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  QuatBiPoly term() {
    QuatBiPoly acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        const double d = real_constant(unary(), "divisor");
        if (d == 0.0) fail("division by zero");
        acc = (1.0 / d) * acc;
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  QuatBiPoly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  QuatBiPoly power() {
    const QuatBiPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    int n = 0;
    const auto* first = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), n);
    if (ec != std::errc() || n < 0) fail("exponent must be a nonnegative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    QuatBiPoly r(1.0);
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
  }

  double real_constant(const QuatBiPoly& p, const char* what) {
    if (p.deg_t() > 0 || p.deg_s() > 0) fail(std::string(what) + " must be a real constant");
    const Quaternion c = p.coeff(0, 0);
    if (c.x() != 0.0 || c.y() != 0.0 || c.z() != 0.0) fail(std::string(what) + " must be real");
    return c.w();
  }

  QuatBiPoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      QuatBiPoly p = expr();
      expect(')');
      return p;
    }
    if (c == '[') {
      // Quaternion literal [w, x, y, z] with real constant components.
      ++pos_;
      double v[4];
      for (int n = 0; n < 4; ++n) {
        if (n > 0) expect(',');
        v[n] = real_constant(expr(), "quaternion component");
      }
      expect(']');
      return QuatBiPoly(Quaternion(v[0], v[1], v[2], v[3]));
    }
    if (src_.substr(pos_).starts_with("sqrt")) {
      pos_ += 4;
      expect('(');
      const double v = real_constant(expr(), "sqrt argument");
      expect(')');
      if (v < 0.0) fail("sqrt of a negative number");
      return QuatBiPoly(std::sqrt(v));
    }
    switch (c) {
      case 'i': ++pos_; return QuatBiPoly(Quaternion::i());
      case 'j': ++pos_; return QuatBiPoly(Quaternion::j());
      case 'k': ++pos_; return QuatBiPoly(Quaternion::k());
      case 't': ++pos_; return QuatBiPoly::variable(Var::t);
      case 's': ++pos_; return QuatBiPoly::variable(Var::s);
      default: break;
    }
    if (c == '.' || std::isdigit(static_cast<unsigned char>(c))) return QuatBiPoly(number());
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  double number() {
    const char* first = src_.data() + pos_;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }
};

}  // namespace

QuatBiPoly parse_poly_text(std::string_view text) { return Parser(text).parse_all(); }

Factorization parse_factorization_text(std::string_view text) {
  Factorization f;
  const auto groups = Parser(text).groups();
  if (groups.empty()) bad("no factors found");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const QuatBiPoly& p = groups[g];
    if (p.deg_t() <= 0 && p.deg_s() <= 0) {
      if (g != 0) bad("constant factor is only allowed in front");
      f.unit = p.coeff(0, 0);
      continue;
    }
    const Var v = p.deg_t() > 0 ? Var::t : Var::s;
    if (p.degree(other(v)) > 0 || p.degree(v) != 1 || p.terms().size() > 2)
      bad("factor " + std::to_string(g + 1) + " is not linear in a single variable");
    const Quaternion lead = v == Var::t ? p.coeff(1, 0) : p.coeff(0, 1);
    if (lead != Quaternion(1.0)) bad("factor " + std::to_string(g + 1) + " is not monic");
    f.factors.push_back({v, -p.coeff(0, 0)});
  }
  return f;
}

namespace {

bool looks_like_json(std::string_view content) {
  for (char c : content)
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  return false;
}

json parse_json(std::string_view content) {
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
}

}  // namespace

QuatBiPoly load_poly(std::string_view content) {
  if (!looks_like_json(content)) return parse_poly_text(content);
  const json j = parse_json(content);
  if (j.contains("terms")) return quat_poly_from_json(j);
  if (j.contains("polynomial")) return quat_poly_from_json(j["polynomial"]);
  bad("JSON input has no \"terms\"");
}

Factorization load_factorization(std::string_view content) {
  if (!looks_like_json(content)) return parse_factorization_text(content);
  const json j = parse_json(content);
  if (j.contains("factorization")) return factorization_from_json(j["factorization"]);
  return factorization_from_json(j);
}

std::string format_number(double x) { return json(x).dump(); }

std::string format_quaternion(const Quaternion& q) {
  return "[" + format_number(q.w()) + ", " + format_number(q.x()) + ", " + format_number(q.y()) + ", " +
         format_number(q.z()) + "]";
}

std::string format_factorization(const Factorization& f) {
  std::ostringstream os;
  if (f.unit != Quaternion(1.0)) os << '(' << format_quaternion(f.unit) << ')';
  for (const auto& x : f.factors) os << '(' << var_name(x.var) << " - " << format_quaternion(x.h) << ')';
  return os.str();
}

}  // namespace quatfact
