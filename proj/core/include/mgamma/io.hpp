#pragma once

#include <optional>
#include <string>

#include "mgamma/distribution.hpp"
#include "mgamma/sample.hpp"
#include "mgamma/validate.hpp"

namespace mgamma {

/// Contents of a distribution spec file. The polynomial is stored with
/// subsets as comma-joined 1-based lists, the constant term implicit:
///   {"n": 2, "lambda": 2.0, "coeffs": {"1": 3.0, "2": 3.0, "1,2": 1.0},
///    "Lambda": [3.0, 4.0]}            // optional, multifactor margins
/// Extra optional fields: "p" (exchangeable parameter) and "rho"/"scales"
/// (chain record written by the markov command).
struct SpecFile {
  AffinePolynomial poly{1};
  double lambda = 1.0;
  std::optional<std::vector<double>> margin_shapes;
  std::optional<double> exchangeable_p;
  std::optional<std::vector<double>> rho;
  std::optional<std::vector<double>> scales;

  bool is_mfgd() const { return margin_shapes.has_value(); }
  MgdSpec mgd() const { return MgdSpec(poly, lambda); }
  MfgdSpec mfgd() const { return MfgdSpec(poly, lambda, *margin_shapes); }
};

/// Parses a spec document; errors carry the offending field or the parser's
/// position context.
SpecFile parse_spec(const std::string& json_text);
SpecFile load_spec(const std::string& path);

std::string spec_to_json(const SpecFile& spec);
void write_spec(const std::string& path, const SpecFile& spec);

/// Batch CSV: header x1,...,xn then one row per sample, full precision.
void write_batch_csv(const std::string& path, const SampleBatch& batch);

/// Sidecar metadata for a batch: generating spec (when given), seed and
/// stream, algorithm id, row count, spec fingerprint, library version.
std::string batch_sidecar_json(const SampleBatch& batch,
                               const SpecFile* spec = nullptr);
void write_batch_sidecar(const std::string& path, const SampleBatch& batch,
                         const SpecFile* spec = nullptr);

/// Divisibility report as JSON (verdict, dual and partition tables, failures).
std::string id_report_json(const AffinePolynomial& poly);

/// Validation configs and reports.
ValidationConfig parse_validation_config(const std::string& json_text);
ValidationConfig load_validation_config(const std::string& path);
std::string report_to_json(const ValidationReport& report);

/// Library version string recorded in sidecars.
const char* library_version();

}  // namespace mgamma
