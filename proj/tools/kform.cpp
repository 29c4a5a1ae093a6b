#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "kform/cli.hpp"

namespace {

struct Flags {
  std::string model;
  std::optional<int> n;
  std::optional<double> kappa;
  std::optional<int> m;
  std::string path;
  std::optional<int> p;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string out;
  bool human = false;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--model", f.model,
                  "model kind (sphere, flat, cpn, product, weyl4, file) or a compact spec "
                  "like sphere:5:1 or product(sphere:2:1,sphere:3:1)");
  cmd->add_option("--n", f.n, "ambient dimension (sphere, flat, weyl4 embedding)");
  cmd->add_option("--kappa", f.kappa, "sectional curvature (sphere)");
  cmd->add_option("--m", f.m, "complex dimension (cpn)");
  cmd->add_option("--path", f.path, "curvature JSON file (file kind)");
}

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--p", f.p, "form degree");
  cmd->add_option("--seed", f.seed, "seed for sampled checks");
  cmd->add_option("--tol", f.tol, "residual tolerance");
  cmd->add_option("--out", f.out, "write the JSON report to this path");
  cmd->add_flag("--human", f.human, "tables instead of JSON");
}

// Combine --model with the per-kind flags into the compact spec syntax; a
// model string that is already compact passes through.
std::string resolve_model(const Flags& f, std::string* error) {
  const std::string& m = f.model;
  if (m.empty()) {
    *error = "--model is required";
    return "";
  }
  if (m.find(':') != std::string::npos || m.find('(') != std::string::npos) return m;
  if (m == "sphere") {
    if (!f.n) {
      *error = "sphere needs --n";
      return "";
    }
    std::string spec = "sphere:" + std::to_string(*f.n);
    if (f.kappa) {
      std::ostringstream os;
      os << *f.kappa;
      spec += ":" + os.str();
    }
    return spec;
  }
  if (m == "flat") {
    if (!f.n) {
      *error = "flat needs --n";
      return "";
    }
    return "flat:" + std::to_string(*f.n);
  }
  if (m == "cpn") {
    if (!f.m) {
      *error = "cpn needs --m";
      return "";
    }
    return "cpn:" + std::to_string(*f.m);
  }
  if (m == "weyl4") return f.n ? "weyl4:" + std::to_string(*f.n) : "weyl4";
  if (m == "file") {
    if (f.path.empty()) {
      *error = "file needs --path";
      return "";
    }
    return "file:" + f.path;
  }
  return m;  // unknown kinds fall through to the spec parser's diagnostics
}

kform::cli::Options to_options(const Flags& f) {
  kform::cli::Options opt;
  opt.p = f.p;
  opt.seed = f.seed;
  opt.tol = f.tol;
  opt.out = f.out;
  opt.human = f.human;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature-action classifier for Killing-type form equations"};
  app.require_subcommand(1);

  Flags f;
  CLI::App* catalog = app.add_subcommand("catalog", "list available model kinds");
  catalog->add_flag("--human", f.human, "tables instead of JSON");
  catalog->add_option("--out", f.out, "write the JSON listing to this path");

  CLI::App* classify = app.add_subcommand("classify", "run the subspace-pair classification");
  add_model_flags(classify, f);
  add_common_flags(classify, f);

  CLI::App* verify = app.add_subcommand("verify", "run the identity checks for one model");
  add_model_flags(verify, f);
  add_common_flags(verify, f);

  CLI::App* demo = app.add_subcommand("demo", "4-d Weyl-tensor counterexample transcript");
  (void)demo;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kform::cli::kOk : kform::cli::kInputError;
  }

  kform::cli::Options opt = to_options(f);
  if (catalog->parsed()) return kform::cli::run_catalog(opt, std::cout, std::cerr);
  if (demo->parsed()) return kform::cli::run_demo(opt, std::cout, std::cerr);

  std::string error;
  opt.model = resolve_model(f, &error);
  if (opt.model.empty()) {
    std::cerr << "error: " << error << "\n";
    return kform::cli::kInputError;
  }
  if (classify->parsed()) return kform::cli::run_classify(opt, std::cout, std::cerr);
  return kform::cli::run_verify(opt, std::cout, std::cerr);
}
