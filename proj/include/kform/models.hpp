#pragma once

#include <string>
#include <vector>

#include "kform/curvature.hpp"

namespace kform {

// Parsed description of a curvature model the tool can build.
struct ModelSpec {
  enum class Kind { kSphere, kFlat, kCpn, kProduct, kWeyl4, kFile };

  Kind kind = Kind::kSphere;
  int n = 0;           // sphere/flat ambient dim; weyl4 embedding dim (>= 4)
  double kappa = 1.0;  // sphere sectional curvature
  int m = 1;           // cpn complex dimension
  std::string path;    // file kind
  std::vector<ModelSpec> factors;  // product kind

  // Compact form: "sphere:5:1", "flat:4", "cpn:2", "weyl4", "weyl4:6",
  // "file:/path.json", "product(sphere:2:1,sphere:3:1)".
  static ModelSpec parse(const std::string& text);

  CurvatureTensor build() const;
  std::string name() const;
};

struct CatalogEntry {
  std::string kind;
  std::string parameters;
  std::string description;
};

const std::vector<CatalogEntry>& catalog_entries();

// Model sweeps used by the verification and acceptance suites.
std::vector<ModelSpec> compact_type_catalog();  // spheres, cpn, Kähler/product
std::vector<ModelSpec> standard_catalog();      // compact type + flat + weyl4 family

}  // namespace kform
