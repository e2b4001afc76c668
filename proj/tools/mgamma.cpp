// Command-line front end: divisibility checking, sampling, density grids,
// chain-polynomial construction and the statistical validation suite.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mgamma/density.hpp"
#include "mgamma/dual_tables.hpp"
#include "mgamma/io.hpp"
#include "mgamma/markov.hpp"
#include "mgamma/sample.hpp"
#include "mgamma/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MGAMMA_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 12345;
}

struct SampleOptions {
  std::string spec_path;
  std::string algo;
  std::string out = "samples.csv";
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  unsigned threads = 1;
  bool seed_given = false;
};

mgamma::SampleBatch run_sampler(const mgamma::SpecFile& spec,
                                const std::string& algo, std::size_t count,
                                mgamma::RngStream& rng) {
  using namespace mgamma;
  if (algo == "exchangeable") {
    if (!spec.exchangeable_p) {
      throw std::runtime_error("spec needs field \"p\" for the exchangeable sampler");
    }
    return sample_exchangeable(spec.poly.dimension(), *spec.exchangeable_p,
                               spec.lambda, count, rng);
  }
  if (algo == "bgd") return sample_bgd(spec.poly, spec.lambda, count, rng);
  if (algo == "tgd-a") {
    return sample_tgd(spec.poly, spec.lambda, count, TgdVariant::a, rng);
  }
  if (algo == "tgd-b") {
    return sample_tgd(spec.poly, spec.lambda, count, TgdVariant::b, rng);
  }
  if (algo == "qgd") return sample_qgd(spec.poly, spec.lambda, count, rng);
  if (algo == "markov") {
    if (!spec.rho) {
      throw std::runtime_error("spec needs field \"rho\" for the chain sampler");
    }
    return sample_markov(*spec.rho, spec.lambda, count,
                         spec.scales ? *spec.scales : std::vector<double>{}, rng);
  }
  if (algo == "mfgd") {
    if (!spec.is_mfgd()) {
      throw std::runtime_error("spec needs field \"Lambda\" for the multifactor sampler");
    }
    return sample_mfgd(spec.mfgd(), count, rng);
  }
  throw std::runtime_error("unknown algorithm '" + algo + "'");
}

int cmd_check(const std::string& spec_path, bool as_json) {
  const mgamma::SpecFile spec = mgamma::load_spec(spec_path);
  const mgamma::IdReport report = mgamma::check_id(spec.poly);
  if (as_json) {
    std::cout << mgamma::id_report_json(spec.poly);
  } else {
    const int n = spec.poly.dimension();
    if (spec.poly.top_coeff() != 0.0) {
      const mgamma::DualTables tables = mgamma::dual_tables(spec.poly);
      std::printf("%-12s %-22s %-22s\n", "subset", "dual", "b_dual");
      for (const mgamma::SubsetIndex& t : mgamma::subsets(n, true)) {
        if (t.cardinality() >= 2) {
          std::printf("%-12s %-22.12g %-22.12g\n", t.to_string().c_str(),
                      tables.dual_of(t), tables.b_dual_of(t));
        } else {
          std::printf("%-12s %-22.12g %-22s\n", t.to_string().c_str(),
                      tables.dual_of(t), "-");
        }
      }
    }
    if (report.is_id) {
      std::printf("infinitely divisible: yes\n");
    } else if (report.boundary_ok()) {
      std::printf(
          "infinitely divisible: yes (on the boundary: the values below are "
          "zero up to roundoff)\n");
      for (const mgamma::IdFailure& f : report.failures) {
        std::printf("  boundary at {%s}: value %.12g\n",
                    f.subset.to_string().c_str(), f.value);
      }
    } else {
      std::printf("infinitely divisible: no\n");
      for (const mgamma::IdFailure& f : report.failures) {
        std::printf("  violated at {%s}: value %.12g%s\n",
                    f.subset.to_string().c_str(), f.value,
                    f.borderline ? " (borderline)" : "");
      }
    }
  }
  return report.boundary_ok() ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const SampleOptions& opt) {
  const mgamma::SpecFile spec = mgamma::load_spec(opt.spec_path);
  const std::uint64_t seed = opt.seed_given ? opt.seed : default_seed();
  const std::size_t total = static_cast<std::size_t>(opt.count);

  mgamma::SampleBatch batch;
  if (opt.threads <= 1) {
    mgamma::RngStream rng(seed, opt.stream);
    batch = run_sampler(spec, opt.algo, total, rng);
  } else {
    // shard across streams; chunk t uses stream id opt.stream + t and the
    // output is concatenated in stream order regardless of scheduling
    const unsigned t = opt.threads;
    std::vector<mgamma::SampleBatch> parts(t);
    std::vector<std::thread> workers;
    std::vector<std::string> errors(t);
    for (unsigned i = 0; i < t; ++i) {
      const std::size_t lo = total * i / t;
      const std::size_t hi = total * (i + 1) / t;
      workers.emplace_back([&, i, lo, hi] {
        try {
          mgamma::RngStream rng(seed, opt.stream + i);
          parts[i] = run_sampler(spec, opt.algo, hi - lo, rng);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
    }
    for (std::thread& w : workers) w.join();
    for (const std::string& e : errors) {
      if (!e.empty()) throw std::runtime_error(e);
    }
    batch = parts.front();
    for (unsigned i = 1; i < t; ++i) {
      batch.data.insert(batch.data.end(), parts[i].data.begin(),
                        parts[i].data.end());
      batch.rows += parts[i].rows;
    }
  }
  mgamma::write_batch_csv(opt.out, batch);
  mgamma::write_batch_sidecar(opt.out + ".meta.json", batch, &spec);
  std::printf("wrote %zu x %d samples to %s\n", batch.rows, batch.dim,
              opt.out.c_str());
  return kExitOk;
}

struct PdfOptions {
  std::string spec_path;
  std::string out = "pdf.csv";
  int points = 100;
  std::vector<double> maxima;
  int fixed_axis = 0;  // 1-based; 0 = none
  double fixed_value = 0.0;
  double tol = 1e-12;
  std::uint64_t max_terms = 5'000'000;
};

int cmd_pdf(const PdfOptions& opt) {
  using namespace mgamma;
  const SpecFile spec = load_spec(opt.spec_path);
  const int n = spec.poly.dimension();
  SeriesParams params;
  params.tol = opt.tol;
  params.max_terms = opt.max_terms;

  const bool exchangeable = spec.exchangeable_p.has_value();
  std::function<double(std::span<const double>)> density;
  if (spec.is_mfgd()) {
    if (n != 2) {
      throw std::runtime_error("multifactor density export supports n = 2 only");
    }
    density = [&](std::span<const double> x) {
      return pdf_bivariate_mfgd(spec.poly, spec.lambda,
                                spec.margin_shapes->at(0),
                                spec.margin_shapes->at(1), x, params)
          .value;
    };
  } else if (exchangeable) {
    density = [&](std::span<const double> x) {
      return pdf_exchangeable(n, *spec.exchangeable_p, spec.lambda, x, params)
          .value;
    };
  } else if (n == 2) {
    density = [&](std::span<const double> x) {
      return pdf_bgd(spec.poly, spec.lambda, x, params).value;
    };
  } else if (n == 3) {
    density = [&](std::span<const double> x) {
      return pdf_tgd(spec.poly, spec.lambda, x, params).value;
    };
  } else {
    throw std::runtime_error(
        "density export supports n in {2,3} or exchangeable specs");
  }

  // default box: mean + 6 sd per axis
  std::vector<double> upper(n);
  {
    const Moments m = spec.is_mfgd() ? moments(spec.mfgd()) : moments(spec.mgd());
    for (int i = 0; i < n; ++i) {
      upper[i] = m.mean[i] + 6.0 * std::sqrt(m.cov(i, i));
    }
  }
  if (!opt.maxima.empty()) {
    if (opt.maxima.size() == 1) {
      upper.assign(n, opt.maxima[0]);
    } else if (static_cast<int>(opt.maxima.size()) == n) {
      upper = opt.maxima;
    } else {
      throw std::runtime_error("--max needs one value or one per axis");
    }
  }
  if (opt.fixed_axis < 0 || opt.fixed_axis > n) {
    throw std::runtime_error("--fix-axis out of range");
  }

  std::ofstream out(opt.out);
  if (!out) throw std::runtime_error("cannot open '" + opt.out + "'");
  for (int i = 0; i < n; ++i) out << (i ? "," : "") << "x" << (i + 1);
  out << ",density\n";

  std::vector<int> loop_axes;
  for (int i = 1; i <= n; ++i) {
    if (i != opt.fixed_axis) loop_axes.push_back(i);
  }
  std::vector<double> x(n, 0.0);
  if (opt.fixed_axis > 0) x[opt.fixed_axis - 1] = opt.fixed_value;

  const auto emit = [&] {
    char buf[40];
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", x[i]);
      out << (i ? "," : "") << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", density(x));
    out << "," << buf << "\n";
  };
  const auto recurse = [&](auto&& self, std::size_t level) -> void {
    if (level == loop_axes.size()) {
      emit();
      return;
    }
    const int axis = loop_axes[level];
    for (int k = 0; k < opt.points; ++k) {
      x[axis - 1] = (k + 0.5) * upper[axis - 1] / opt.points;
      self(self, level + 1);
    }
  };
  recurse(recurse, 0);
  if (!out) throw std::runtime_error("write to '" + opt.out + "' failed");
  return kExitOk;
}

int cmd_markov(const std::vector<double>& rho, const std::vector<double>& scales,
               double lambda, const std::string& out) {
  using namespace mgamma;
  SpecFile spec;
  spec.poly = markov_polynomial(markov_sqrt_matrix(rho), scales);
  spec.lambda = lambda;
  spec.rho = rho;
  if (!scales.empty()) spec.scales = scales;
  write_spec(out, spec);
  std::printf("wrote %d-dimensional chain spec to %s\n", spec.poly.dimension(),
              out.c_str());
  return kExitOk;
}

int cmd_validate(const std::string& config_path, bool quick,
                 const std::string& out) {
  using namespace mgamma;
  ValidationConfig config = config_path.empty()
                                ? default_validation_config(quick)
                                : load_validation_config(config_path);
  if (quick && !config_path.empty()) {
    config.samples = std::min<std::size_t>(config.samples, 20'000);
  }
  const ValidationReport report = run_suite(config);
  const std::string text = report_to_json(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out);
    file << text;
    if (!file) throw std::runtime_error("write to '" + out + "' failed");
  }
  int failed = 0;
  for (const CheckResult& c : report.checks) {
    if (!c.expect_fail && !c.passed) ++failed;
  }
  std::fprintf(stderr, "%zu checks, %d failed, overall %s\n",
               report.checks.size(), failed,
               report.overall_pass ? "pass" : "FAIL");
  return report.overall_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multivariate gamma distributions: check, sample, validate"};
  app.require_subcommand(1);

  // check
  std::string check_spec;
  bool check_json = false;
  CLI::App* check = app.add_subcommand("check", "divisibility check of a spec file");
  check->add_option("--spec", check_spec, "spec JSON file")->required();
  check->add_flag("--json", check_json, "print the full JSON report");

  // sample
  SampleOptions sopt;
  CLI::App* sample = app.add_subcommand("sample", "draw samples to CSV");
  sample->add_option("--spec", sopt.spec_path, "spec JSON file")->required();
  sample
      ->add_option("--algo", sopt.algo,
                   "exchangeable|bgd|tgd-a|tgd-b|qgd|markov|mfgd")
      ->required();
  sample->add_option("--n", sopt.count, "number of rows")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = sample->add_option("--seed", sopt.seed, "RNG seed");
  sample->add_option("--stream", sopt.stream, "base stream id");
  sample->add_option("--threads", sopt.threads, "shard across this many streams")
      ->check(CLI::PositiveNumber);
  sample->add_option("--out", sopt.out, "output CSV path");

  // pdf
  PdfOptions popt;
  CLI::App* pdf = app.add_subcommand("pdf", "density values on a grid");
  pdf->add_option("--spec", popt.spec_path, "spec JSON file")->required();
  pdf->add_option("--points", popt.points, "grid points per axis")
      ->check(CLI::PositiveNumber);
  pdf->add_option("--max", popt.maxima, "upper bound per axis")->delimiter(',');
  pdf->add_option("--fix-axis", popt.fixed_axis, "1-based axis to hold fixed");
  pdf->add_option("--fix-value", popt.fixed_value, "value of the fixed axis");
  pdf->add_option("--tol", popt.tol, "series tolerance");
  pdf->add_option("--max-terms", popt.max_terms, "series term budget");
  pdf->add_option("--out", popt.out, "output CSV path");

  // markov
  std::vector<double> rho, scales;
  double chain_lambda = 1.0;
  std::string markov_out = "chain.json";
  CLI::App* markov = app.add_subcommand("markov", "expand a chain into a spec file");
  markov->add_option("--rho", rho, "chain correlations, in (0,1)")
      ->required()
      ->delimiter(',');
  markov->add_option("--scales", scales, "per-axis scales")->delimiter(',');
  markov->add_option("--lambda", chain_lambda, "shape parameter");
  markov->add_option("--out", markov_out, "output spec path");

  // validate
  std::string config_path, report_out;
  bool quick = false;
  CLI::App* validate = app.add_subcommand("validate", "run the statistical suite");
  validate->add_option("--config", config_path, "suite config JSON");
  validate->add_flag("--quick", quick, "smaller samples, looser thresholds");
  validate->add_option("--out", report_out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return cmd_check(check_spec, check_json);
    if (*sample) {
      sopt.seed_given = seed_opt->count() > 0;
      return cmd_sample(sopt);
    }
    if (*pdf) return cmd_pdf(popt);
    if (*markov) return cmd_markov(rho, scales, chain_lambda, markov_out);
    if (*validate) return cmd_validate(config_path, quick, report_out);
  } catch (const std::domain_error& e) {
    // admissibility violations (non-divisible spec, vanishing coefficients)
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
