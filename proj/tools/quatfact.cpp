// Command-line front end. Talks to the library only through quatfact.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "quatfact/quatfact.h"

namespace {

using json = nlohmann::json;

enum Exit : int {
  kOk = 0,
  kResidual = 1,
  kNfc = 2,
  kMismatch = 3,
  kUsage = 64,
  kIo = 66,
};

constexpr double kResidualBound = 1e-8;

struct Failure {
  int code;
  std::string message;
};

int exit_for(qf_status s) {
  switch (s) {
    case QF_NFC_VIOLATED:
    case QF_NOT_RANK_ONE: return kNfc;
    case QF_MISMATCHED_POLYNOMIALS:
    case QF_DIFFERENT_POLYNOMIALS: return kMismatch;
    case QF_PARSE_ERROR:
    case QF_INVALID_ARGUMENT: return kUsage;
    default: return kResidual;
  }
}

void check(qf_status s) {
  if (s != QF_OK) throw Failure{exit_for(s), qf_last_error()};
}

struct PolyDeleter {
  void operator()(qf_poly* p) const { qf_poly_free(p); }
};
struct FactDeleter {
  void operator()(qf_factorization* f) const { qf_factorization_free(f); }
};
using Poly = std::unique_ptr<qf_poly, PolyDeleter>;
using Fact = std::unique_ptr<qf_factorization, FactDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  qf_string_free(s);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw Failure{kIo, "cannot open " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Poly load_poly(const std::string& path) {
  qf_poly* p = nullptr;
  const qf_status s = qf_poly_parse(read_input(path).c_str(), &p);
  if (s != QF_OK) throw Failure{kUsage, path + ": " + qf_last_error()};
  return Poly(p);
}

Fact load_fact(const std::string& path) {
  qf_factorization* f = nullptr;
  const qf_status s = qf_factorization_parse(read_input(path).c_str(), &f);
  if (s != QF_OK) throw Failure{kUsage, path + ": " + qf_last_error()};
  return Fact(f);
}

json fact_json(const qf_factorization* f) {
  char* s = nullptr;
  check(qf_factorization_to_json(f, &s));
  return json::parse(take(s));
}

json poly_json(const qf_poly* p) {
  char* s = nullptr;
  check(qf_poly_to_json(p, &s));
  return json::parse(take(s));
}

// Text rendering reuses the JSON number writer so both formats print the
// same digits.
std::string num(const json& x) { return x.dump(); }

std::string quat_text(const json& q) {
  return "[" + num(q[0]) + ", " + num(q[1]) + ", " + num(q[2]) + ", " + num(q[3]) + "]";
}

std::string real_poly_text(const json& p) {
  const std::string v = p["var"].get<std::string>();
  const auto& c = p["coeffs"];
  std::string out;
  for (std::size_t n = c.size(); n-- > 0;) {
    const double x = c[n].get<double>();
    if (x == 0.0) continue;
    const bool neg = x < 0.0;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const double mag = neg ? -x : x;
    if (n == 0 || mag != 1.0) out += num(json(mag)) + (n > 0 ? "*" : "");
    if (n >= 1) out += v;
    if (n >= 2) out += "^" + std::to_string(n);
  }
  return out.empty() ? "0" : out;
}

std::string factors_text(const json& f) {
  std::string out;
  for (const auto& x : f["factors"]) out += "(" + x["var"].get<std::string>() + " - " + quat_text(x["h"]) + ")";
  return out;
}

struct Options {
  std::string var = "s";
  std::string order;
  double eps = 1e-9;
  double rank_tol = 1e-10;
  unsigned threads = 0;
  std::string format = "text";
  std::vector<std::string> files;
};

qf_var var_of(const std::string& v) {
  if (v == "t") return QF_VAR_T;
  if (v == "s") return QF_VAR_S;
  if (v == "both") return QF_VAR_BOTH;
  throw Failure{kUsage, "--var must be s, t or both"};
}

std::vector<size_t> parse_order(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<size_t>(v));
    } catch (const std::exception&) {
      throw Failure{kUsage, "--order must be a comma-separated list of indices, got '" + text + "'"};
    }
  }
  return out;
}

void need_files(const Options& o, std::size_t lo, std::size_t hi) {
  if (o.files.size() < lo || o.files.size() > hi)
    throw Failure{kUsage, "expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                              " input file(s), got " + std::to_string(o.files.size())};
}

int cmd_nfc(const Options& o) {
  need_files(o, 1, 1);
  const Poly p = load_poly(o.files[0]);
  int sat = 0;
  double worst = 0.0;
  char* js = nullptr;
  check(qf_nfc(p.get(), o.eps, &sat, &worst, &js));
  const json j = json::parse(take(js));
  if (o.format == "json") {
    std::cout << j.dump() << '\n';
  } else if (sat) {
    std::cout << "NFC satisfied\nP = " << real_poly_text(j["P"]) << "\nR = " << real_poly_text(j["R"]) << '\n';
    for (const auto& q : j["t_quadratics"]) std::cout << "t-quadratic: " << real_poly_text(q) << '\n';
    for (const auto& q : j["s_quadratics"]) std::cout << "s-quadratic: " << real_poly_text(q) << '\n';
  }
  if (!sat) {
    std::cerr << "NFC violated: worst 2x2 minor of the norm coefficients (rows " << j["minor"]["rows"][0] << ","
              << j["minor"]["rows"][1] << "; cols " << j["minor"]["cols"][0] << "," << j["minor"]["cols"][1]
              << ") has relative magnitude " << num(j["worst_minor"]) << '\n';
    return kNfc;
  }
  return kOk;
}

int cmd_factor(const Options& o) {
  need_files(o, 1, 1);
  const Poly p = load_poly(o.files[0]);
  const qf_var v = var_of(o.var);
  if (v == QF_VAR_BOTH) throw Failure{kUsage, "factor needs --var s or --var t"};
  char* qs = nullptr;
  check(qf_quadratics(p.get(), v, o.eps, &qs));
  const json quads = json::parse(take(qs));
  std::vector<size_t> order = o.order.empty() ? std::vector<size_t>{} : parse_order(o.order);
  if (o.order.empty())
    for (size_t n = 0; n < quads.size(); ++n) order.push_back(n);

  qf_factorization* raw = nullptr;
  check(qf_factor(p.get(), v, order.data(), order.size(), o.eps, &raw));
  const Fact f(raw);
  double res = 0.0;
  check(qf_verify(p.get(), f.get(), &res));
  const json fj = fact_json(f.get());
  json consumed = json::array();
  for (size_t n : order) consumed.push_back(quads[n]);

  if (o.format == "json") {
    std::cout << json{{"polynomial", poly_json(p.get())}, {"var", o.var},          {"order", order},
                      {"quadratics", consumed},           {"factorization", fj},   {"residual", res}}
                     .dump()
              << '\n';
  } else {
    for (const auto& q : consumed) std::cout << "consumed: " << real_poly_text(q) << '\n';
    std::cout << "K = " << real_poly_text(fj["K"]) << "\nunit = " << quat_text(fj["unit"]) << "\nfactors = "
              << factors_text(fj) << "\nresidual = " << num(json(res)) << '\n';
  }
  return res <= kResidualBound ? kOk : kResidual;
}

int cmd_verify(const Options& o) {
  need_files(o, 1, 2);
  // One file: a `factor` JSON report carrying both polynomial and factors.
  const Poly p = load_poly(o.files[0]);
  const Fact f = load_fact(o.files.size() == 2 ? o.files[1] : o.files[0]);
  double res = 0.0;
  check(qf_verify(p.get(), f.get(), &res));
  if (o.format == "json")
    std::cout << json{{"residual", res}, {"pass", res <= kResidualBound}}.dump() << '\n';
  else
    std::cout << "residual = " << num(json(res)) << (res <= kResidualBound ? " (pass)" : " (FAIL)") << '\n';
  return res <= kResidualBound ? kOk : kResidual;
}

int cmd_enumerate(const Options& o) {
  need_files(o, 1, 1);
  const Poly p = load_poly(o.files[0]);
  char* nd = nullptr;
  size_t k_one = 0;
  int classes = 0;
  check(qf_enumerate(p.get(), var_of(o.var), o.eps, o.threads, &nd, &k_one, &classes));
  std::istringstream lines(take(nd));
  std::size_t records = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    ++records;
    if (o.format == "json") {
      std::cout << line << '\n';
      continue;
    }
    const json r = json::parse(line);
    std::cout << r["role"].get<std::string>() << " order " << r["order"].dump() << ": K = " << real_poly_text(r["K"])
              << ", class " << r["class"] << "\n  " << factors_text(r) << '\n';
  }
  const json summary = {{"records", records}, {"k_one_count", k_one}, {"class_count", classes}};
  if (o.format == "json")
    std::cout << json{{"summary", summary}}.dump() << '\n';
  else
    std::cout << "summary: " << records << " permutations, " << k_one << " with K = 1, " << classes
              << " non-equivalent classes\n";
  return kOk;
}

int cmd_equiv(const Options& o) {
  need_files(o, 2, 2);
  const Fact a = load_fact(o.files[0]);
  const Fact b = load_fact(o.files[1]);
  int te = 0, se = 0, eq = 0;
  check(qf_equivalent(a.get(), b.get(), o.eps, &te, &se, &eq));
  if (o.format == "json")
    std::cout << json{{"t_equivalent", te != 0}, {"s_equivalent", se != 0}, {"equivalent", eq != 0}}.dump() << '\n';
  else
    std::cout << "t-equivalent: " << (te ? "yes" : "no") << "\ns-equivalent: " << (se ? "yes" : "no")
              << "\nequivalent: " << (eq ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_lift(const Options& o) {
  need_files(o, 2, 2);
  const Fact a = load_fact(o.files[0]);
  const Fact b = load_fact(o.files[1]);
  size_t dim = 0;
  double worst = 0.0;
  char* js = nullptr;
  check(qf_lift(a.get(), b.get(), o.rank_tol, o.eps, &dim, &worst, &js));
  const json j = json::parse(take(js));
  if (o.format == "json") {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "equations = " << j["equations"] << ", unknowns = " << j["unknowns"] << "\ndimension = " << dim
              << '\n';
    for (std::size_t n = 0; n < j["basis"].size(); ++n) {
      std::cout << j["parameters"][n].get<std::string>() << ":";
      for (const auto& x : j["basis"][n]) std::cout << ' ' << num(x);
      std::cout << "\n  residual = " << num(j["residuals"][n]) << '\n';
    }
  }
  return worst <= kResidualBound ? kOk : kResidual;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("QUATFACT_EPS")) {
    try {
      o.eps = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: QUATFACT_EPS is not a number\n";
      return kUsage;
    }
  }

  CLI::App app{"Factorization of bivariate quaternion polynomials"};
  app.require_subcommand(1);
  const auto add = [&](const char* name, const char* desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("--eps", o.eps, "relative tolerance (default 1e-9, or $QUATFACT_EPS)")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    c->add_option("files", o.files, "input files ('-' for stdin)")->required();
    return c;
  };
  add("nfc", "check the norm factorization condition");
  CLI::App* factor = add("factor", "multiplication technique for one order of the norm's quadratics");
  factor->add_option("--var", o.var, "variable whose quadratics are consumed")->check(CLI::IsMember({"s", "t"}));
  factor->add_option("--order", o.order, "permutation of the canonical quadratic indices, e.g. 1,0");
  add("verify", "residual of a factorization against a polynomial");
  CLI::App* en = add("enumerate", "run every distinct order and group K = 1 results");
  en->add_option("--var", o.var, "role: s, t or both")->check(CLI::IsMember({"s", "t", "both"}));
  en->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  add("equiv", "t-equivalence, s-equivalence and equivalence of two factorizations");
  CLI::App* lift = add("lift", "dual-quaternion lift of two factorizations");
  lift->add_option("--rank-tol", o.rank_tol, "relative singular value cutoff")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "nfc") return cmd_nfc(o);
    if (cmd == "factor") return cmd_factor(o);
    if (cmd == "verify") return cmd_verify(o);
    if (cmd == "enumerate") return cmd_enumerate(o);
    if (cmd == "equiv") return cmd_equiv(o);
    return cmd_lift(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
