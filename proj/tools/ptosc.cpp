// ptosc: verification CLI for the deformed-oscillator system.
//
//   ptosc verify spectrum|orthonormality|operators|algebra|all [flags]
//   ptosc export contour [flags]
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 configuration
// error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ptosc/contour.hpp"
#include "ptosc/format.hpp"
#include "ptosc/verify.hpp"

namespace {

struct CliOptions {
  ptosc::RunConfig cfg;
  std::vector<double> eps;
  std::string fault = "none";
  std::string format = "text";
  std::string out_path;
  bool allow_large_eps = false;

  // export contour
  double q_range = 50.0;
  int samples = 1001;
};

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << content;
  if (!file) throw std::runtime_error("write failed: " + path);
}

int finish_verify(const std::vector<ptosc::VerificationReport>& reports,
                  const CliOptions& opt) {
  std::string content;
  if (opt.format == "json") {
    content = reports.size() == 1 ? ptosc::to_json(reports.front())
                                  : ptosc::to_json(reports);
    content += '\n';
  } else if (opt.format == "csv") {
    content = ptosc::to_csv(reports);
  } else {
    content = ptosc::to_text(reports);
  }
  write_output(content, opt.out_path);
  for (const auto& r : reports) {
    if (!r.passed()) return 1;
  }
  return 0;
}

void check_config(const CliOptions& opt) {
  if (!opt.allow_large_eps) {
    for (double e : opt.eps) {
      if (std::abs(e) > 0.5) {
        throw CLI::ValidationError(
            "--eps", "|eps| > 0.5 needs --allow-large-eps (pole approaches the grid)");
      }
    }
  }
  if (opt.cfg.n_max > 20) {
    throw CLI::ValidationError("--n-max", "n_max must be <= 20");
  }
}

ptosc::Fault parse_fault(const std::string& name) {
  if (name == "none") return ptosc::Fault::None;
  if (name == "energy-shift") return ptosc::Fault::EnergyShift;
  if (name == "sign-flip") return ptosc::Fault::SignFlip;
  throw CLI::ValidationError("--inject-fault", "unknown fault: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for the PT-symmetric deformed oscillator"};
  app.require_subcommand(1);

  CliOptions opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--eps", opt.eps, "deformation parameter(s) eps");
    cmd->add_option("--n-max", opt.cfg.n_max, "highest state index");
    cmd->add_option("--order", opt.cfg.order, "BCH/Taylor comparison order");
    cmd->add_option("--tol", opt.cfg.tol, "override the suite tolerance");
    cmd->add_option("--seed", opt.cfg.seed, "seed for randomized sweeps");
    cmd->add_option("--format", opt.format, "output format: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", opt.out_path, "write the report to a file");
    cmd->add_flag("--allow-large-eps", opt.allow_large_eps,
                  "accept |eps| > 0.5");
    cmd->add_option("--inject-fault", opt.fault,
                    "negative control: none|energy-shift|sign-flip")
        ->check(CLI::IsMember({"none", "energy-shift", "sign-flip"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  for (const char* name : {"spectrum", "orthonormality", "operators", "algebra", "all"}) {
    add_common(verify->add_subcommand(name));
  }

  CLI::App* exp = app.add_subcommand("export", "export machine-readable data");
  CLI::App* contour = exp->add_subcommand("contour", "sample the integration path");
  contour->add_option("--eps", opt.eps, "deformation parameter eps (nonzero)");
  contour->add_option("--q-range", opt.q_range, "parameter half-range");
  contour->add_option("--samples", opt.samples, "number of rows");
  contour->add_option("--format", opt.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  contour->add_option("--out", opt.out_path, "write the table to a file");
  contour->add_flag("--allow-large-eps", opt.allow_large_eps, "accept |eps| > 0.5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    check_config(opt);
    opt.cfg.eps_list = opt.eps;
    opt.cfg.fault = parse_fault(opt.fault);

    if (verify->parsed()) {
      std::vector<ptosc::VerificationReport> reports;
      if (verify->get_subcommand("spectrum")->parsed()) {
        reports.push_back(ptosc::verify_spectrum(opt.cfg));
      } else if (verify->get_subcommand("orthonormality")->parsed()) {
        reports.push_back(ptosc::verify_orthonormality(opt.cfg));
      } else if (verify->get_subcommand("operators")->parsed()) {
        reports.push_back(ptosc::verify_operators(opt.cfg));
      } else if (verify->get_subcommand("algebra")->parsed()) {
        reports.push_back(ptosc::verify_algebra(opt.cfg));
      } else {
        reports = ptosc::verify_all(opt.cfg);
      }
      return finish_verify(reports, opt);
    }

    // export contour
    if (opt.eps.size() != 1 || opt.eps.front() == 0.0) {
      throw CLI::ValidationError("--eps",
                                 "export contour needs exactly one nonzero eps");
    }
    if (opt.samples < 2) {
      throw CLI::ValidationError("--samples", "need at least 2 samples");
    }
    const ptosc::PTSystem sys{opt.eps.front()};
    const ptosc::ContourTable table =
        ptosc::export_contour(sys, opt.q_range, opt.samples);
    if (opt.format == "json") {
      std::string json = "{\"endpoint\":[" + ptosc::format_17(table.endpoint.real()) +
                         "," + ptosc::format_17(table.endpoint.imag()) + "],\"rows\":[";
      for (Eigen::Index i = 0; i < table.q.size(); ++i) {
        if (i) json += ',';
        json += '[' + ptosc::format_17(table.q[i]) + ',' +
                ptosc::format_17(table.z[i].real()) + ',' +
                ptosc::format_17(table.z[i].imag()) + ']';
      }
      write_output(json + "]}\n", opt.out_path);
    } else {
      write_output(ptosc::to_csv(table), opt.out_path);
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
