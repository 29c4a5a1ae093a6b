#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kform::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // failing check or inconsistent model
inline constexpr int kInputError = 2;   // unresolvable model / bad arguments

struct Options {
  std::string model;            // compact model spec, e.g. "sphere:5:1"
  std::optional<int> p;         // form degree; absent = all applicable
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string out;              // when nonempty, also write the JSON there
  bool human = false;           // tables instead of JSON
};

int run_catalog(const Options& opt, std::ostream& os, std::ostream& err);
int run_classify(const Options& opt, std::ostream& os, std::ostream& err);
int run_verify(const Options& opt, std::ostream& os, std::ostream& err);
int run_demo(const Options& opt, std::ostream& os, std::ostream& err);

}  // namespace kform::cli
