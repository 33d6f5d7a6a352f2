#include "tto/tto.h"

#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "tto/clark.hpp"
#include "tto/config.hpp"
#include "tto/operators.hpp"
#include "tto/parse.hpp"
#include "tto/runner.hpp"

struct tto_blaschke {
  tto::FiniteBlaschke b;
};
struct tto_symbol {
  tto::Symbol s;
};
struct tto_matrix {
  tto::OperatorMatrix m;
};
struct tto_clark {
  tto::ClarkMeasure c;
};
struct tto_config {
  tto::ConfigDocument doc;
};

namespace {

thread_local std::string g_last_error;

tto_status status_of(tto::ErrorCode code) {
  switch (code) {
    case tto::ErrorCode::kInvalidArgument: return TTO_INVALID_ARGUMENT;
    case tto::ErrorCode::kDomain: return TTO_DOMAIN;
    case tto::ErrorCode::kNonFinite: return TTO_NON_FINITE;
    case tto::ErrorCode::kNotConverged: return TTO_NOT_CONVERGED;
    case tto::ErrorCode::kConfig: return TTO_CONFIG;
    case tto::ErrorCode::kIo: return TTO_IO;
    case tto::ErrorCode::kAssertion: return TTO_ASSERTION;
    case tto::ErrorCode::kInternal: return TTO_INTERNAL;
  }
  return TTO_INTERNAL;
}

template <class F>
tto_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return TTO_OK;
  } catch (const tto::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TTO_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TTO_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) tto::fail(tto::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tto::QuadratureConfig quadrature_of(const tto_quadrature* q) {
  tto::QuadratureConfig cfg;
  if (q) {
    cfg.initial_points = q->initial_points;
    cfg.max_points = q->max_points;
    cfg.abs_tol = q->abs_tol;
    cfg.rel_tol = q->rel_tol;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

extern "C" {

const char* tto_version(void) { return tto::kToolVersion; }

const char* tto_last_error(void) { return g_last_error.c_str(); }

const char* tto_status_name(tto_status status) {
  switch (status) {
    case TTO_OK: return "ok";
    case TTO_INVALID_ARGUMENT: return "invalid_argument";
    case TTO_DOMAIN: return "domain";
    case TTO_NON_FINITE: return "non_finite";
    case TTO_NOT_CONVERGED: return "not_converged";
    case TTO_CONFIG: return "config";
    case TTO_IO: return "io";
    case TTO_ASSERTION: return "assertion";
    case TTO_INTERNAL: return "internal";
  }
  return "unknown";
}

void tto_string_free(char* s) { delete[] s; }

void tto_quadrature_default(tto_quadrature* out) {
  if (!out) return;
  const tto::QuadratureConfig d;
  *out = {d.initial_points, d.max_points, d.abs_tol, d.rel_tol};
}

tto_status tto_blaschke_create(const double* re, const double* im, size_t count, tto_blaschke** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) {
      require(re, "re");
      require(im, "im");
    }
    std::vector<tto::cplx> zeros;
    for (size_t k = 0; k < count; ++k) zeros.emplace_back(re[k], im[k]);
    *out = new tto_blaschke{tto::FiniteBlaschke(std::move(zeros))};
  });
}

tto_status tto_blaschke_generate(const char* generator, double param, size_t count, tto_blaschke** out) {
  return guarded([&] {
    require(generator, "generator");
    require(out, "out");
    const auto kind = tto::generator_from_string(generator);
    if (!kind || *kind == tto::GeneratorKind::kExplicit)
      tto::fail(tto::ErrorCode::kInvalidArgument,
                std::string("unknown generator '") + generator + "' (valid: " + tto::valid_generator_tags() + ")");
    tto::ZeroSequence seq;
    switch (*kind) {
      case tto::GeneratorKind::kConstantModulus: seq = tto::ZeroSequence::constant_modulus(param); break;
      case tto::GeneratorKind::kAlternating3k: seq = tto::ZeroSequence::alternating_3k(param); break;
      case tto::GeneratorKind::kFrostmanFast: seq = tto::ZeroSequence::frostman_fast(); break;
      case tto::GeneratorKind::kDenseNonBlaschke: seq = tto::ZeroSequence::dense_nonblaschke(param); break;
      default: break;
    }
    *out = new tto_blaschke{tto::FiniteBlaschke(tto::generate_zeros(seq, count))};
  });
}

void tto_blaschke_free(tto_blaschke* b) { delete b; }

tto_status tto_blaschke_degree(const tto_blaschke* b, size_t* out) {
  return guarded([&] {
    require(b, "b");
    require(out, "out");
    *out = b->b.degree();
  });
}

tto_status tto_blaschke_zero(const tto_blaschke* b, size_t j, double* re, double* im) {
  return guarded([&] {
    require(b, "b");
    require(re, "re");
    require(im, "im");
    if (j >= b->b.degree()) tto::fail(tto::ErrorCode::kInvalidArgument, "zero index out of range");
    *re = b->b.zero(j).real();
    *im = b->b.zero(j).imag();
  });
}

tto_status tto_blaschke_eval(const tto_blaschke* b, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    require(b, "b");
    require(out_re, "out_re");
    require(out_im, "out_im");
    const tto::cplx v = b->b({re, im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

tto_status tto_blaschke_abs_derivative(const tto_blaschke* b, double angle, double* out) {
  return guarded([&] {
    require(b, "b");
    require(out, "out");
    *out = b->b.abs_derivative(angle);
  });
}

tto_status tto_symbol_parse(const char* text, tto_symbol** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tto_symbol{tto::parse_symbol(text)};
  });
}

void tto_symbol_free(tto_symbol* s) { delete s; }

tto_status tto_symbol_eval(const tto_symbol* s, double angle, double* out_re, double* out_im) {
  return guarded([&] {
    require(s, "s");
    require(out_re, "out_re");
    require(out_im, "out_im");
    const tto::cplx v = s->s(angle);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

tto_status tto_toeplitz_build(const tto_blaschke* b, const tto_symbol* phi, const tto_quadrature* q,
                              tto_matrix** out) {
  return guarded([&] {
    require(b, "b");
    require(phi, "phi");
    require(out, "out");
    *out = new tto_matrix{tto::build_truncated_toeplitz(b->b, phi->s, quadrature_of(q))};
  });
}

tto_status tto_clark_unitary_build(const tto_blaschke* b, double alpha_angle, const tto_quadrature* q,
                                   tto_matrix** out) {
  return guarded([&] {
    require(b, "b");
    require(out, "out");
    *out = new tto_matrix{tto::build_clark_unitary(b->b, tto::unit(alpha_angle), quadrature_of(q))};
  });
}

tto_status tto_matrix_apply_function(const tto_matrix* a, const char* function, tto_matrix** out) {
  return guarded([&] {
    require(a, "a");
    require(function, "function");
    require(out, "out");
    tto::OperatorMatrix m = a->m;
    m.matrix = tto::apply_function(a->m.matrix, tto::parse_function(function));
    *out = new tto_matrix{std::move(m)};
  });
}

void tto_matrix_free(tto_matrix* m) { delete m; }

tto_status tto_matrix_dim(const tto_matrix* m, size_t* out) {
  return guarded([&] {
    require(m, "m");
    require(out, "out");
    *out = m->m.dim();
  });
}

tto_status tto_matrix_entry(const tto_matrix* m, size_t i, size_t j, double* re, double* im) {
  return guarded([&] {
    require(m, "m");
    require(re, "re");
    require(im, "im");
    if (i >= m->m.dim() || j >= m->m.dim()) tto::fail(tto::ErrorCode::kInvalidArgument, "entry index out of range");
    *re = m->m.matrix(i, j).real();
    *im = m->m.matrix(i, j).imag();
  });
}

tto_status tto_matrix_trace(const tto_matrix* m, double* re, double* im) {
  return guarded([&] {
    require(m, "m");
    require(re, "re");
    require(im, "im");
    const tto::cplx t = tto::trace(m->m.matrix);
    *re = t.real();
    *im = t.imag();
  });
}

tto_status tto_matrix_norms(const tto_matrix* m, double* hs, double* trace_norm, double* op_norm) {
  return guarded([&] {
    require(m, "m");
    if (hs) *hs = tto::hs_norm(m->m.matrix);
    if (trace_norm || op_norm) {
      const auto sv = tto::singular_values(m->m.matrix);
      double s = 0.0;
      for (double x : sv) s += x;
      if (trace_norm) *trace_norm = s;
      if (op_norm) *op_norm = sv.empty() ? 0.0 : sv.front();
    }
  });
}

tto_status tto_matrix_converged(const tto_matrix* m, int* out) {
  return guarded([&] {
    require(m, "m");
    require(out, "out");
    *out = m->m.quadrature.converged ? 1 : 0;
  });
}

tto_status tto_matrix_to_json(const tto_matrix* m, char** out) {
  return guarded([&] {
    require(m, "m");
    require(out, "out");
    *out = dup_string(tto::matrix_to_json(m->m));
  });
}

tto_status tto_clark_measure(const tto_blaschke* b, double alpha_angle, tto_clark** out) {
  return guarded([&] {
    require(b, "b");
    require(out, "out");
    *out = new tto_clark{tto::clark_measure(b->b, tto::unit(alpha_angle))};
  });
}

void tto_clark_free(tto_clark* c) { delete c; }

tto_status tto_clark_atom_count(const tto_clark* c, size_t* out) {
  return guarded([&] {
    require(c, "c");
    require(out, "out");
    *out = c->c.atoms.size();
  });
}

tto_status tto_clark_atom(const tto_clark* c, size_t k, double* angle, double* weight) {
  return guarded([&] {
    require(c, "c");
    require(angle, "angle");
    require(weight, "weight");
    if (k >= c->c.atoms.size()) tto::fail(tto::ErrorCode::kInvalidArgument, "atom index out of range");
    *angle = c->c.atoms[k].zeta.angle();
    *weight = c->c.atoms[k].weight;
  });
}

tto_status tto_config_default(tto_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new tto_config{};
  });
}

tto_status tto_config_load(const char* path, tto_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tto_config{tto::load_config_document(path)};
  });
}

void tto_config_free(tto_config* c) { delete c; }

tto_status tto_config_set(tto_config* c, const char* key, const char* value) {
  return guarded([&] {
    require(c, "c");
    require(key, "key");
    require(value, "value");
    tto::set_config_value(c->doc, key, value);
  });
}

tto_status tto_config_canonical(const tto_config* c, char** out) {
  return guarded([&] {
    require(c, "c");
    require(out, "out");
    *out = dup_string(tto::canonical_config(tto::build_config(c->doc)));
  });
}

tto_status tto_config_hash(const tto_config* c, char** out) {
  return guarded([&] {
    require(c, "c");
    require(out, "out");
    *out = dup_string(tto::config_hash(tto::build_config(c->doc)));
  });
}

tto_status tto_run(const char* subcommand, const tto_config* c, int* exit_code, char** report) {
  return guarded([&] {
    require(subcommand, "subcommand");
    require(c, "c");
    require(exit_code, "exit_code");
    const auto r = tto::run_subcommand(subcommand, c->doc);
    *exit_code = static_cast<int>(r.status);
    if (r.status == tto::ExitStatus::kConfig || r.status == tto::ExitStatus::kRuntime) g_last_error = r.error;
    if (report) {
      nlohmann::ordered_json j;
      j["exit_code"] = static_cast<int>(r.status);
      j["output_dir"] = r.output_dir;
      j["outputs"] = r.outputs;
      j["failures"] = r.failures;
      j["warnings"] = r.warnings;
      j["error"] = r.error;
      *report = dup_string(j.dump());
    }
  });
}

}  // extern "C"
