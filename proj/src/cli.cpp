// Copyright 2026 The revgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revgrad/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "revgrad/ansatz.hpp"
#include "revgrad/bench.hpp"
#include "revgrad/circuit_text.hpp"
#include "revgrad/errors.hpp"
#include "revgrad/gradient.hpp"
#include "revgrad/selftest.hpp"

namespace revgrad {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_param_list(const std::string& text, const std::string& origin) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream ss(normalized);
  std::vector<double> values;
  std::size_t index = 0;
  for (std::string tok; ss >> tok; ++index) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::domain_error("invalid parameter value '" + tok + "' (entry " +
                              std::to_string(index) + " of " + origin + ")");
    }
  }
  return values;
}

struct GradArgs {
  std::string circuit_path;
  std::string observable = "z_all";
  std::string params;
  std::string params_file;
  std::string method = "reverse";
  double delta = kDefaultFiniteDifferenceStep;
};

int cmd_grad(const GradArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const Circuit circuit = load_circuit(a.circuit_path);
    const Observable obs = load_observable(a.observable, circuit.num_qubits());
    std::vector<double> theta;
    if (!a.params_file.empty()) {
      std::ifstream in(a.params_file);
      if (!in) throw std::runtime_error("cannot open parameter file '" + a.params_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      theta = parse_param_list(buf.str(), a.params_file);
    } else {
      theta = parse_param_list(a.params, "--params");
    }
    const GradientMethod method = parse_method(a.method);
    const StateVector input = init_basis_state(circuit.num_qubits(), 0);
    const GradientReport report = compute_gradient(method, circuit, theta, obs, input, a.delta);

    out << "energy " << fmt17(report.energy.real()) << ' ' << fmt17(report.energy.imag()) << '\n';
    for (std::size_t k = 0; k < report.values.size(); ++k) {
      out << 'p' << k << ' ' << fmt17(report.values[k].real()) << ' '
          << fmt17(report.values[k].imag()) << '\n';
    }
    const OpCounters& c = report.counters;
    out << "ops gate_applies=" << c.gate_applies << " derivative_applies=" << c.derivative_applies
        << " clones=" << c.clones << " inner_products=" << c.inner_products
        << " observable_applies=" << c.observable_applies
        << " peak_live_states=" << report.peak_live_states << '\n';
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const NonInvertibleGate& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonInvertible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}

struct BenchArgs {
  std::string family = "C";
  std::size_t qubits = 4;
  std::vector<std::size_t> reps;
  std::vector<std::string> methods = {"reverse", "reference"};
  std::size_t repetitions = 24;
  std::string output;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  try {
    config.family = parse_family(a.family);
    config.num_qubits = a.qubits;
    config.reps = a.reps;
    config.methods.clear();
    for (const std::string& m : a.methods) config.methods.push_back(parse_method(m));
    config.repetitions = a.repetitions;
    config.seed = a.seed;
    // Validates family/qubits before any timing starts.
    for (std::size_t r : config.reps) (void)ansatz_num_params({config.family, config.num_qubits, r});
    if (config.repetitions < 1) throw std::domain_error("--repetitions must be >= 1");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  std::ofstream csv(a.output, std::ios::binary | std::ios::trunc);
  if (!csv) {
    err << "error: cannot write '" << a.output << "'\n";
    return kExitUnwritable;
  }
  BenchResult result;
  try {
    result = run_benchmark(config, &err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  write_bench_csv(csv, result);
  csv.flush();
  if (!csv) {
    err << "error: failed writing '" << a.output << "'\n";
    return kExitUnwritable;
  }
  for (const ScalingFit& f : result.fits) {
    out << "fit " << f.method << ' ' << f.quantity << " slope=" << f.slope
        << " intercept=" << f.intercept << " r2=" << f.r_squared << '\n';
  }
  return kExitOk;
}

int cmd_selftest(bool perturb, std::ostream& out) {
  SelftestOptions opts;
  opts.perturb_derivative = perturb;
  bool all = true;
  for (const SelftestCheck& c : run_selftest(opts)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_ansatz(const std::string& family, std::size_t qubits, std::size_t reps,
               const std::string& output, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = to_circuit_text(build_ansatz({parse_family(family), qubits, reps}));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  if (output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    err << "error: cannot write '" << output << "'\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"State-vector gradients of parameterized circuits"};
  app.require_subcommand(1);

  GradArgs grad;
  CLI::App* grad_cmd = app.add_subcommand("grad", "Gradient of <psi|obs|psi> for a circuit file");
  grad_cmd->add_option("--circuit", grad.circuit_path, "Circuit text file")->required();
  grad_cmd->add_option("--observable", grad.observable,
                       "Observable file, or built-in hadamard_all / z_all")
      ->capture_default_str();
  auto* params_opt =
      grad_cmd->add_option("--params", grad.params, "Comma-separated parameter values");
  auto* params_file_opt =
      grad_cmd->add_option("--params-file", grad.params_file, "File of parameter values");
  params_opt->excludes(params_file_opt);
  grad_cmd->add_option("--method", grad.method,
                       "reverse | reference | non-hermitian | finite-difference")
      ->capture_default_str();
  grad_cmd->add_option("--delta", grad.delta, "Finite-difference step")->capture_default_str();

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Runtime scaling of the gradient methods");
  bench_cmd->add_option("--family", bench.family, "Ansatz family A|B|C|D")->capture_default_str();
  bench_cmd->add_option("--qubits", bench.qubits, "Number of qubits")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Comma-separated repetition counts")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Timed runs per cell")
      ->capture_default_str();
  bench_cmd->add_option("--output", bench.output, "CSV output path")->required();
  bench_cmd->add_option("--seed", bench.seed, "Seed for the angle draws")->capture_default_str();

  bool perturb = false;
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant suites");
  selftest_cmd->add_flag("--perturb-derivative", perturb,
                         "Negative control: corrupt the derivative convention");

  std::string family = "C", ansatz_output;
  std::size_t qubits = 4, reps = 1;
  CLI::App* ansatz_cmd = app.add_subcommand("ansatz", "Write a benchmark ansatz as circuit text");
  ansatz_cmd->add_option("--family", family, "Ansatz family A|B|C|D")->capture_default_str();
  ansatz_cmd->add_option("--qubits", qubits, "Number of qubits")->capture_default_str();
  ansatz_cmd->add_option("--reps", reps, "Repetitions")->capture_default_str();
  ansatz_cmd->add_option("--output", ansatz_output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  if (grad_cmd->parsed()) return cmd_grad(grad, out, err);
  if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
  if (selftest_cmd->parsed()) return cmd_selftest(perturb, out);
  return cmd_ansatz(family, qubits, reps, ansatz_output, out, err);
}

}  // namespace revgrad
