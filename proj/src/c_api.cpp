#include "diracbag/diracbag.h"
#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include "diracbag/perturb.hpp"
#include "diracbag/run.hpp"
#include "diracbag/shooting.hpp"
#include <algorithm>
#include <string>

struct dbag_spectrum_s {
  diracbag::Spectrum spectrum;
};

struct dbag_report_s {
  diracbag::ShiftReport report;
};

struct dbag_output_s {
  std::string text;
};

namespace {

thread_local std::string last_error;

dbag_status fail(dbag_status status, const std::string &message) {
  last_error = message;
  return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename F> dbag_status guarded(F &&body) {
  try {
    last_error.clear();
    body();
    return DBAG_OK;
  } catch (const diracbag::DomainError &e) {
    return fail(DBAG_ERR_DOMAIN, e.what());
  } catch (const diracbag::UsageError &e) {
    return fail(DBAG_ERR_USAGE, e.what());
  } catch (const diracbag::NumericError &e) {
    return fail(DBAG_ERR_NUMERIC, e.what());
  } catch (const diracbag::ConsistencyError &e) {
    return fail(DBAG_ERR_INTERNAL, e.what());
  } catch (const std::exception &e) {
    return fail(DBAG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DBAG_ERR_INTERNAL, "unknown exception");
  }
}

diracbag::BagConfig to_cpp(const dbag_config &c) { return {c.a, c.mass, c.lambda}; }

bool known(dbag_prescription p) { return p == DBAG_PAULI || p == DBAG_FEYNMAN; }

diracbag::Prescription to_cpp(dbag_prescription p) {
  return p == DBAG_FEYNMAN ? diracbag::Prescription::feynman
                           : diracbag::Prescription::pauli_respecting;
}

} // namespace

extern "C" {

const char *dbag_version(void) { return "1.0.0"; }

const char *dbag_last_error(void) { return last_error.c_str(); }

const char *dbag_status_string(dbag_status status) {
  switch (status) {
  case DBAG_OK: return "ok";
  case DBAG_ERR_NULL: return "null argument";
  case DBAG_ERR_DOMAIN: return "domain error";
  case DBAG_ERR_USAGE: return "usage error";
  case DBAG_ERR_NUMERIC: return "numeric failure";
  case DBAG_ERR_INTERNAL: return "internal consistency failure";
  case DBAG_ERR_RANGE: return "out of range";
  }
  return "unknown status";
}

dbag_status dbag_massless_levels(double a, int n_lo, int n_hi, double *out,
                                 size_t capacity) {
  if (!out)
    return fail(DBAG_ERR_NULL, "dbag_massless_levels: out is NULL");
  if (n_hi >= n_lo && size_t(long(n_hi) - long(n_lo)) + 1 > capacity)
    return fail(DBAG_ERR_RANGE, "dbag_massless_levels: buffer too small");
  return guarded([&] {
    const auto levels = diracbag::massless_levels(a, n_lo, n_hi);
    std::copy(levels.begin(), levels.end(), out);
  });
}

dbag_status dbag_find_levels(const dbag_config *cfg, double e_min, double e_max,
                             double tol, dbag_spectrum *out) {
  if (!cfg || !out)
    return fail(DBAG_ERR_NULL, "dbag_find_levels: NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto spectrum = diracbag::find_levels(to_cpp(*cfg), e_min, e_max, tol);
    *out = new dbag_spectrum_s{std::move(spectrum)};
  });
}

size_t dbag_spectrum_size(dbag_spectrum spectrum) {
  return spectrum ? spectrum->spectrum.modes.size() : 0;
}

dbag_status dbag_spectrum_level(dbag_spectrum spectrum, size_t i, int *index,
                                double *energy) {
  if (!spectrum)
    return fail(DBAG_ERR_NULL, "dbag_spectrum_level: NULL spectrum");
  if (i >= spectrum->spectrum.modes.size())
    return fail(DBAG_ERR_RANGE, "dbag_spectrum_level: index out of range");
  const auto &m = spectrum->spectrum.modes[i];
  if (index)
    *index = m.index();
  if (energy)
    *energy = m.energy();
  return DBAG_OK;
}

dbag_status dbag_spectrum_eval(dbag_spectrum spectrum, size_t i, double x,
                               double *u, double *v) {
  if (!spectrum || !u || !v)
    return fail(DBAG_ERR_NULL, "dbag_spectrum_eval: NULL argument");
  if (i >= spectrum->spectrum.modes.size())
    return fail(DBAG_ERR_RANGE, "dbag_spectrum_eval: index out of range");
  return guarded([&] {
    const auto s = spectrum->spectrum.modes[i](x);
    *u = s.u.real();
    *v = s.v.real();
  });
}

void dbag_spectrum_destroy(dbag_spectrum spectrum) { delete spectrum; }

dbag_status dbag_exact_shift(const dbag_config *cfg, int level, double *out) {
  if (!cfg || !out)
    return fail(DBAG_ERR_NULL, "dbag_exact_shift: NULL argument");
  return guarded([&] { *out = diracbag::exact_shift(to_cpp(*cfg), level); });
}

dbag_status dbag_first_order(const dbag_config *cfg, int level, double *out) {
  if (!cfg || !out)
    return fail(DBAG_ERR_NULL, "dbag_first_order: NULL argument");
  return guarded([&] { *out = diracbag::first_order(to_cpp(*cfg), level); });
}

dbag_status dbag_compare(const dbag_config *cfg, int cutoff, double tol,
                         dbag_report *out) {
  if (!cfg || !out)
    return fail(DBAG_ERR_NULL, "dbag_compare: NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto report = diracbag::compare(to_cpp(*cfg), 0, cutoff, tol);
    *out = new dbag_report_s{std::move(report)};
  });
}

dbag_status dbag_report_second_order(dbag_report report, dbag_prescription p,
                                     double *value, int *converged) {
  if (!report)
    return fail(DBAG_ERR_NULL, "dbag_report_second_order: NULL report");
  if (!known(p))
    return fail(DBAG_ERR_USAGE, "dbag_report_second_order: unknown prescription");
  const auto *s = report->report.find(to_cpp(p));
  if (!s)
    return fail(DBAG_ERR_RANGE, "dbag_report_second_order: prescription absent");
  if (value)
    *value = s->value;
  if (converged)
    *converged = s->converged ? 1 : 0;
  return DBAG_OK;
}

dbag_status dbag_report_exact(dbag_report report, double *value) {
  if (!report || !value)
    return fail(DBAG_ERR_NULL, "dbag_report_exact: NULL argument");
  if (!report->report.w_exact)
    return fail(DBAG_ERR_RANGE, "dbag_report_exact: no exact shift");
  *value = *report->report.w_exact;
  return DBAG_OK;
}

dbag_status dbag_report_first_order(dbag_report report, double *value) {
  if (!report || !value)
    return fail(DBAG_ERR_NULL, "dbag_report_first_order: NULL argument");
  *value = report->report.w_first;
  return DBAG_OK;
}

dbag_status dbag_report_partial_sums(dbag_report report, dbag_prescription p,
                                     double *out, size_t capacity, size_t *count) {
  if (!report || (!out && capacity > 0))
    return fail(DBAG_ERR_NULL, "dbag_report_partial_sums: NULL argument");
  if (!known(p))
    return fail(DBAG_ERR_USAGE, "dbag_report_partial_sums: unknown prescription");
  const auto *s = report->report.find(to_cpp(p));
  if (!s)
    return fail(DBAG_ERR_RANGE, "dbag_report_partial_sums: prescription absent");
  const auto n = s->partial_sums.size();
  for (size_t i = 0; i < n && i < capacity; ++i)
    out[i] = s->partial_sums[i].value;
  if (count)
    *count = n;
  return DBAG_OK;
}

void dbag_report_destroy(dbag_report report) { delete report; }

void dbag_run_config_init(dbag_run_config *cfg) {
  if (!cfg)
    return;
  *cfg = dbag_run_config{};
  cfg->command = "spectrum";
  cfg->model = {1.0, 0.0, 0.0};
  cfg->cutoff = 100;
  cfg->prescription = "feynman";
  cfg->format = "json";
}

dbag_status dbag_run(const dbag_run_config *cfg, dbag_output *out) {
  if (!cfg || !out)
    return fail(DBAG_ERR_NULL, "dbag_run: NULL argument");
  *out = nullptr;

  diracbag::RunConfig run;
  diracbag::OutputFormat format = diracbag::OutputFormat::json;
  const auto parsed = guarded([&] {
    run.command = diracbag::parse_command(cfg->command ? cfg->command : "");
    run.a = cfg->model.a;
    run.mass = cfg->model.mass;
    run.lambda = cfg->model.lambda;
    if (cfg->has_window)
      run.window = std::pair{cfg->window_lo, cfg->window_hi};
    if (cfg->levels > 0)
      run.levels = cfg->levels;
    run.cutoff = cfg->cutoff;
    if (cfg->has_tol)
      run.tol = cfg->tol;
    run.prescription =
        diracbag::parse_prescription(cfg->prescription ? cfg->prescription : "feynman");
    format = diracbag::parse_format(cfg->format ? cfg->format : "json");
    run.format = format;
    diracbag::validate(run);
  });
  if (parsed != DBAG_OK)
    return fail(DBAG_ERR_USAGE, last_error);

  std::string kind;
  const auto status = guarded([&] {
    *out = new dbag_output_s{diracbag::render(diracbag::run(run), format)};
  });
  if (status == DBAG_OK)
    return status;
  // keep the message; attach a diagnostic payload for scripts
  const std::string message = last_error;
  kind = dbag_status_string(status);
  *out = new dbag_output_s{
      diracbag::render(diracbag::failure_record(run, kind, message),
                       diracbag::OutputFormat::json)};
  last_error = message;
  return status == DBAG_ERR_DOMAIN || status == DBAG_ERR_USAGE ? DBAG_ERR_NUMERIC
                                                                : status;
}

const char *dbag_output_text(dbag_output output) {
  return output ? output->text.c_str() : "";
}

size_t dbag_output_length(dbag_output output) {
  return output ? output->text.size() : 0;
}

void dbag_output_destroy(dbag_output output) { delete output; }

} // extern "C"
