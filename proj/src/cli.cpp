#include "countprob/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "countprob/count_finite.hpp"
#include "countprob/count_limit.hpp"
#include "countprob/error.hpp"
#include "countprob/io.hpp"
#include "countprob/montecarlo.hpp"
#include "countprob/verify.hpp"

namespace countprob::cli {
namespace {

const std::set<std::string> kCommands = {"limit-pmf", "finite-pmf", "oracle-pmf", "cf", "sample", "estimate", "verify"};

bool given(const CLI::App* sub, const std::string& name) {
  const auto* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InadmissiblePmf:
    case ErrorKind::NonConvergent:
      return kInadmissible;
    case ErrorKind::Internal:
      return kToleranceViolation;
    default:
      return kInvalidInput;
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, path + ": " + e.what());
  }
}

const CorrelationModel& require_model(const JobConfig& job) {
  if (!job.model) throw Error(ErrorKind::BadInput, job.command + " needs a model (--c, --model or --model-json)");
  return *job.model;
}

// Prints the pmf, then reports inadmissibility through the exit code.
int emit_pmf(const JobConfig& job, const Pmf& pmf, std::ostream& out, std::ostream& err) {
  if (job.output_format == "json") {
    out << io::pmf_to_json(pmf).dump() << '\n';
  } else {
    io::write_pmf_csv(out, pmf);
  }
  if (!pmf.admissible()) {
    const auto worst = pmf.most_negative();
    err << "inadmissible model: p(" << worst->first << ") = " << io::format_double(worst->second) << '\n';
    return kInadmissible;
  }
  return kSuccess;
}

Pmf model_pmf(const JobConfig& job) {
  auto model = require_model(job);
  if (job.n) model = model.with_n(job.n);
  if (model.n()) return finite_count_pmf(model);
  return limit_pmf(model, job.mass_tolerance);
}

int run_verify_command(const JobConfig& job, std::ostream& out) {
  VerifyOptions options;
  if (job.n) options.n = static_cast<int>(*job.n);
  options.trials = job.trials;
  options.seed = job.seed.value_or(1);
  const auto checks = run_verify(options);
  bool all = true;
  if (job.output_format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
      arr.push_back({{"identity", c.name}, {"worst", c.worst}, {"tolerance", c.tolerance}, {"cases", c.cases},
                     {"passed", c.passed()}});
      all = all && c.passed();
    }
    out << arr.dump() << '\n';
  } else {
    for (const auto& c : checks) {
      out << (c.passed() ? "PASS " : "FAIL ") << c.name << " worst=" << io::format_double(c.worst)
          << " tol=" << io::format_double(c.tolerance) << " cases=" << c.cases << '\n';
      all = all && c.passed();
    }
  }
  return all ? kSuccess : kToleranceViolation;
}

int dispatch(const JobConfig& job, std::ostream& out, std::ostream& err) {
  if (!kCommands.contains(job.command)) throw Error(ErrorKind::BadInput, "unknown command '" + job.command + "'");
  if (job.output_format != "csv" && job.output_format != "json") {
    throw Error(ErrorKind::BadInput, "output format must be csv or json");
  }

  if (job.command == "limit-pmf") {
    auto model = require_model(job);
    return emit_pmf(job, limit_pmf(model.with_n(std::nullopt), job.mass_tolerance), out, err);
  }
  if (job.command == "finite-pmf") {
    auto model = require_model(job);
    if (job.n) model = model.with_n(job.n);
    if (!model.n()) throw Error(ErrorKind::BadInput, "finite-pmf needs --n");
    return emit_pmf(job, finite_count_pmf(model), out, err);
  }
  if (job.command == "oracle-pmf") {
    if (!job.n) throw Error(ErrorKind::BadInput, "oracle-pmf needs --n");
    if (job.mixture.empty()) throw Error(ErrorKind::BadInput, "oracle-pmf needs --mixture");
    const auto joint = build_mixture_joint(io::parse_mixture(job.mixture), static_cast<int>(*job.n));
    return emit_pmf(job, count_pmf_from_joint(joint), out, err);
  }
  if (job.command == "cf") {
    if (job.u_grid.empty()) throw Error(ErrorKind::BadInput, "cf needs --u start:stop:count");
    const auto grid = char_fn(require_model(job), io::parse_grid(job.u_grid));
    if (job.output_format == "json") {
      out << io::cf_to_json(grid).dump() << '\n';
    } else {
      io::write_cf_csv(out, grid);
    }
    return kSuccess;
  }
  if (job.command == "sample") {
    if (job.count < 1) throw Error(ErrorKind::BadInput, "sample needs --count >= 1");
    const auto pmf = model_pmf(job);
    const auto counts = sample_counts(pmf, job.count, job.seed.value_or(0));
    if (job.output_format == "json") {
      out << nlohmann::json{{"counts", counts}}.dump() << '\n';
    } else {
      std::string buffer;
      buffer.reserve(counts.size() * 3);
      for (auto c : counts) {
        buffer += std::to_string(c);
        buffer += '\n';
      }
      out << buffer;
    }
    return kSuccess;
  }
  if (job.command == "estimate") {
    if (job.input.empty()) throw Error(ErrorKind::BadInput, "estimate needs --input");
    std::vector<std::int64_t> counts;
    if (job.input == "-") {
      counts = io::read_counts(std::cin);
    } else {
      std::ifstream in(job.input);
      if (!in) throw Error(ErrorKind::BadInput, "cannot open " + job.input);
      counts = io::read_counts(in);
    }
    if (counts.empty()) throw Error(ErrorKind::BadInput, "no counts in " + job.input);
    const auto report = estimate_coefficients(counts, job.l_max, job.bootstrap, job.seed.value_or(0));
    if (job.output_format == "csv") {
      out << "l,c_hat,std_err\n";
      for (std::size_t l = 0; l < report.c_hat.size(); ++l) {
        out << l + 1 << ',' << io::format_double(report.c_hat[l]) << ',' << io::format_double(report.std_err[l]) << '\n';
      }
    } else {
      out << io::report_to_json(report).dump() << '\n';
    }
    return kSuccess;
  }
  return run_verify_command(job, out);
}

}  // namespace

JobConfig job_from_json(const nlohmann::json& j) {
  try {
    JobConfig job;
    job.command = j.at("command").get<std::string>();
    if (j.contains("model") && !j.at("model").is_null()) job.model = io::model_from_json(j.at("model"));
    job.output_format = j.value("output_format", job.output_format);
    if (j.contains("seed") && !j.at("seed").is_null()) job.seed = j.at("seed").get<std::uint64_t>();
    job.mass_tolerance = j.value("mass_tolerance", job.mass_tolerance);
    if (j.contains("n") && !j.at("n").is_null()) job.n = j.at("n").get<std::int64_t>();
    job.mixture = j.value("mixture", job.mixture);
    job.u_grid = j.value("u", job.u_grid);
    job.count = j.value("count", job.count);
    job.input = j.value("input", job.input);
    job.l_max = j.value("lmax", job.l_max);
    job.trials = j.value("trials", job.trials);
    job.bootstrap = j.value("bootstrap", job.bootstrap);
    return job;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("config: ") + e.what());
  }
}

int execute(const JobConfig& job, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(job, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count statistics of exchangeable correlated events"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON job file mirroring the command-line options");

  JobConfig job;
  std::string coefficients, model_path, model_json;
  std::int64_t n = 0;
  std::uint64_t seed = 0;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--c", coefficients, "Coefficients C_1,C_2,... (comma separated)");
    sub->add_option("--model", model_path, "Model JSON file");
    sub->add_option("--model-json", model_json, "Inline model JSON");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", job.output_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* limit = app.add_subcommand("limit-pmf", "Limiting count pmf as N -> infinity");
  add_model(limit);
  add_format(limit);
  limit->add_option("--tol", job.mass_tolerance, "Mass tolerance for the support cut-off");

  auto* finite = app.add_subcommand("finite-pmf", "Exact count pmf for N events");
  add_model(finite);
  add_format(finite);
  finite->add_option("--n", n, "Number of events")->required();

  auto* oracle = app.add_subcommand("oracle-pmf", "Count pmf of a Bernoulli mixture joint by direct summation");
  add_format(oracle);
  oracle->add_option("--n", n, "Number of events")->required();
  oracle->add_option("--mixture", job.mixture, "Atoms p:weight,p:weight,...")->required();

  auto* cf = app.add_subcommand("cf", "Characteristic function of the limiting law");
  add_model(cf);
  add_format(cf);
  cf->add_option("--u", job.u_grid, "Grid start:stop:count")->required();

  auto* sample = app.add_subcommand("sample", "Draw counts from the limiting (or, with --n, finite) pmf");
  add_model(sample);
  add_format(sample);
  sample->add_option("--n", n, "Sample the finite-N pmf instead of the limit");
  sample->add_option("--count", job.count, "Number of samples")->required();
  sample->add_option("--seed", seed, "Generator seed");
  sample->add_option("--tol", job.mass_tolerance, "Mass tolerance for the limiting pmf");

  auto* estimate = app.add_subcommand("estimate", "Estimate C_1..C_lmax from observed counts");
  add_format(estimate);
  estimate->add_option("--input", job.input, "Counts file (one per line or CSV sample_index,count); - for stdin")
      ->required();
  estimate->add_option("--lmax", job.l_max, "Highest coefficient order (<= 4)");
  estimate->add_option("--seed", seed, "Bootstrap seed");
  estimate->add_option("--bootstrap", job.bootstrap, "Bootstrap resamples");

  auto* verify = app.add_subcommand("verify", "Run the identity suite on random joints and models");
  add_format(verify);
  verify->add_option("--n", n, "Events per random joint (2..8)");
  verify->add_option("--trials", job.trials, "Random trials per identity");
  verify->add_option("--seed", seed, "Generator seed");

  std::vector<const char*> argv{"countprob"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) throw Error(ErrorKind::BadInput, "--config replaces the subcommand");
      return execute(job_from_json(read_json_file(config_path)), out, err);
    }
    if (app.get_subcommands().empty()) {
      out << app.help();
      return kInvalidInput;
    }
    const auto* sub = app.get_subcommands().front();
    job.command = sub->get_name();
    // estimate defaults to the JSON report unless --format csv is explicit.
    if (job.command == "estimate" && !given(sub, "--format")) job.output_format = "json";
    if (given(sub, "--n")) job.n = n;
    if (given(sub, "--seed")) job.seed = seed;

    const int sources = given(sub, "--c") + given(sub, "--model") + given(sub, "--model-json");
    if (sources > 1) throw Error(ErrorKind::BadInput, "give the model once: --c, --model or --model-json");
    if (given(sub, "--c")) {
      job.model = validate_model(CorrelationModel(io::parse_coefficients(coefficients)));
    } else if (given(sub, "--model")) {
      job.model = io::model_from_json(read_json_file(model_path));
    } else if (given(sub, "--model-json")) {
      try {
        job.model = io::model_from_json(nlohmann::json::parse(model_json));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadInput, std::string("--model-json: ") + e.what());
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return execute(job, out, err);
}

}  // namespace countprob::cli
