#include "quatfact/quatfact.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "quatfact/io.hpp"

using namespace quatfact;

struct qf_poly {
  QuatBiPoly p;
};
struct qf_factorization {
  Factorization f;
};

namespace {

thread_local std::string g_last_error;

qf_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroDivisor: return QF_ZERO_DIVISOR;
    case ErrorCode::DidNotConverge: return QF_DID_NOT_CONVERGE;
    case ErrorCode::OddRealRoot: return QF_ODD_REAL_ROOT;
    case ErrorCode::NonMonicDivisor: return QF_NON_MONIC_DIVISOR;
    case ErrorCode::NotRankOne: return QF_NOT_RANK_ONE;
    case ErrorCode::NonRealResidue: return QF_NON_REAL_RESIDUE;
    case ErrorCode::DivisibleByM: return QF_DIVISIBLE_BY_M;
    case ErrorCode::ZeroRemainder: return QF_ZERO_REMAINDER;
    case ErrorCode::ConjugatePair: return QF_CONJUGATE_PAIR;
    case ErrorCode::NFCViolated: return QF_NFC_VIOLATED;
    case ErrorCode::DegenerateRemainder: return QF_DEGENERATE_REMAINDER;
    case ErrorCode::DifferentPolynomials: return QF_DIFFERENT_POLYNOMIALS;
    case ErrorCode::StateBudgetExceeded: return QF_STATE_BUDGET_EXCEEDED;
    case ErrorCode::MismatchedPolynomials: return QF_MISMATCHED_POLYNOMIALS;
    case ErrorCode::InvalidArgument: return QF_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return QF_PARSE_ERROR;
    case ErrorCode::ResidualTooLarge: return QF_RESIDUAL_TOO_LARGE;
  }
  return QF_INTERNAL_ERROR;
}

template <class F>
qf_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return QF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QF_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Tolerance tol_of(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  return Tolerance{eps};
}

Var var_of(qf_var v) {
  if (v == QF_VAR_T) return Var::t;
  if (v == QF_VAR_S) return Var::s;
  throw Error(ErrorCode::InvalidArgument, "variable must be t or s");
}

json tuple_json(const QuadraticFactorTuple& t) {
  json arr = json::array();
  for (const auto& f : t.factors) arr.push_back(to_json(f));
  return arr;
}

}  // namespace

extern "C" {

const char* qf_status_name(qf_status status) {
  if (status == QF_OK) return "OK";
  if (status == QF_INTERNAL_ERROR) return "InternalError";
  if (status < QF_OK || status > QF_INTERNAL_ERROR) return "Unknown";
  return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_string_free(char* s) { std::free(s); }

qf_status qf_poly_parse(const char* text, qf_poly** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new qf_poly{load_poly(text)};
  });
}

void qf_poly_free(qf_poly* p) { delete p; }

qf_status qf_poly_to_json(const qf_poly* p, char** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = dup(to_json(p->p).dump());
  });
}

qf_status qf_poly_to_text(const qf_poly* p, char** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = dup(p->p.to_string());
  });
}

qf_status qf_nfc(const qf_poly* p, double eps, int* satisfied, double* worst_minor, char** json_out) {
  return guard([&] {
    require(p, "poly");
    const Tolerance tol = tol_of(eps);
    const NfcResult r = nfc_rank1(norm_poly(p->p, tol), tol);
    if (satisfied) *satisfied = r.satisfied ? 1 : 0;
    if (worst_minor) *worst_minor = r.worst_minor;
    if (json_out) {
      json j = {{"satisfied", r.satisfied},
                {"worst_minor", r.worst_minor},
                {"minor", {{"rows", {r.minor_rows[0], r.minor_rows[1]}}, {"cols", {r.minor_cols[0], r.minor_cols[1]}}}}};
      if (r.satisfied) {
        j["P"] = to_json(r.P);
        j["R"] = to_json(r.R);
        j["t_quadratics"] = tuple_json(norm_part_quadratics(p->p, Var::t, tol));
        j["s_quadratics"] = tuple_json(norm_part_quadratics(p->p, Var::s, tol));
      }
      *json_out = dup(j.dump());
    }
  });
}

qf_status qf_quadratics(const qf_poly* p, qf_var var, double eps, char** json_out) {
  return guard([&] {
    require(p, "poly");
    require(json_out, "json_out");
    *json_out = dup(tuple_json(norm_part_quadratics(p->p, var_of(var), tol_of(eps))).dump());
  });
}

qf_status qf_factor(const qf_poly* p, qf_var var, const size_t* order, size_t order_len, double eps,
                    qf_factorization** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    const Tolerance tol = tol_of(eps);
    const Var v = var_of(var);
    const Quaternion lc = p->p.leading_coefficient();
    QuadraticFactorTuple tuple = norm_part_quadratics(QuatBiPoly(lc.inverse(0.0)) * p->p, v, tol);
    if (order) tuple = tuple.permuted(std::vector<std::size_t>(order, order + order_len));
    *out = new qf_factorization{v == Var::s ? algorithm2(p->p, tuple, tol) : algorithm2_t(p->p, tuple, tol)};
  });
}

qf_status qf_factorization_parse(const char* text, qf_factorization** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new qf_factorization{load_factorization(text)};
  });
}

void qf_factorization_free(qf_factorization* f) { delete f; }

qf_status qf_factorization_to_json(const qf_factorization* f, char** out) {
  return guard([&] {
    require(f, "factorization");
    require(out, "out");
    *out = dup(to_json(f->f).dump());
  });
}

qf_status qf_factorization_to_text(const qf_factorization* f, char** out) {
  return guard([&] {
    require(f, "factorization");
    require(out, "out");
    *out = dup(format_factorization(f->f));
  });
}

qf_status qf_factorization_product(const qf_factorization* f, qf_poly** out) {
  return guard([&] {
    require(f, "factorization");
    require(out, "out");
    *out = new qf_poly{f->f.product()};
  });
}

size_t qf_factorization_length(const qf_factorization* f) { return f ? f->f.factors.size() : 0; }

int qf_factorization_k_is_one(const qf_factorization* f) { return f && f->f.k_is_one(1e-8) ? 1 : 0; }

qf_status qf_verify(const qf_poly* p, const qf_factorization* f, double* residual) {
  return guard([&] {
    require(p, "poly");
    require(f, "factorization");
    require(residual, "residual");
    *residual = verify(p->p, f->f);
  });
}

qf_status qf_enumerate(const qf_poly* p, qf_var role, double eps, unsigned threads, char** ndjson_out,
                       size_t* k_one_count, int* class_count) {
  return guard([&] {
    require(p, "poly");
    const Role r = role == QF_VAR_S ? Role::s : role == QF_VAR_T ? Role::t : Role::both;
    const EnumerationReport rep = enumerate(p->p, r, tol_of(eps), {}, threads);
    if (k_one_count) *k_one_count = rep.k_one_count;
    if (class_count) *class_count = rep.class_count;
    if (ndjson_out) {
      std::string s;
      for (const auto& e : rep.entries) s += to_json(e).dump() + "\n";
      *ndjson_out = dup(s);
    }
  });
}

qf_status qf_equivalent(const qf_factorization* a, const qf_factorization* b, double eps, int* t_eq, int* s_eq,
                        int* eq) {
  return guard([&] {
    require(a, "first factorization");
    require(b, "second factorization");
    const Tolerance tol = tol_of(eps);
    if (t_eq) *t_eq = t_equivalent(a->f, b->f, tol) ? 1 : 0;
    if (s_eq) *s_eq = s_equivalent(a->f, b->f, tol) ? 1 : 0;
    if (eq) *eq = equivalent(a->f, b->f, tol) ? 1 : 0;
  });
}

qf_status qf_lift(const qf_factorization* a, const qf_factorization* b, double rank_tol, double eps,
                  size_t* dimension, double* max_residual, char** json_out) {
  return guard([&] {
    require(a, "first factorization");
    require(b, "second factorization");
    if (!(rank_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be positive");
    const LiftSystem sys = build_lift_system(a->f, b->f, tol_of(eps));
    const LiftSolution sol = solve_lift(sys, rank_tol);
    json residuals = json::array();
    double worst = 0.0;
    for (const auto& v : sol.basis) {
      const double r = verify_lift(a->f, b->f, v);
      residuals.push_back(r);
      worst = std::max(worst, r);
    }
    if (dimension) *dimension = sol.dimension;
    if (max_residual) *max_residual = worst;
    if (json_out) {
      json j = to_json(sol);
      j["equations"] = sys.equations();
      j["unknowns"] = sys.unknowns();
      j["residuals"] = residuals;
      *json_out = dup(j.dump());
    }
  });
}

}  // extern "C"
