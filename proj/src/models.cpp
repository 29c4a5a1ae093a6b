#include "kform/models.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace kform {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("model spec: bad integer for " + what + ": '" + s + "'");
  }
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("model spec: bad number for " + what + ": '" + s + "'");
  }
}

std::string format_real(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ModelSpec ModelSpec::parse(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("model spec: empty");

  if (text.rfind("product(", 0) == 0) {
    if (text.back() != ')') throw std::invalid_argument("model spec: unbalanced product(...)");
    std::string inner = text.substr(8, text.size() - 9);
    ModelSpec spec;
    spec.kind = Kind::kProduct;
    for (const auto& part : split_top_level(inner)) spec.factors.push_back(parse(part));
    if (spec.factors.size() < 2)
      throw std::invalid_argument("model spec: product needs at least two factors");
    return spec;
  }

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
    // A file path may itself contain ':'; treat the rest as one token.
    if (parts[0] == "file") {
      parts.push_back(text.substr(start));
      break;
    }
  }

  const std::string& kind = parts[0];
  ModelSpec spec;
  if (kind == "sphere") {
    if (parts.size() < 2 || parts.size() > 3)
      throw std::invalid_argument("model spec: sphere needs n and optional kappa");
    spec.kind = Kind::kSphere;
    spec.n = parse_int(parts[1], "sphere dimension");
    spec.kappa = parts.size() == 3 ? parse_real(parts[2], "sphere kappa") : 1.0;
  } else if (kind == "flat") {
    if (parts.size() != 2) throw std::invalid_argument("model spec: flat needs n");
    spec.kind = Kind::kFlat;
    spec.n = parse_int(parts[1], "flat dimension");
  } else if (kind == "cpn") {
    if (parts.size() != 2) throw std::invalid_argument("model spec: cpn needs m");
    spec.kind = Kind::kCpn;
    spec.m = parse_int(parts[1], "cpn complex dimension");
  } else if (kind == "weyl4") {
    if (parts.size() > 2) throw std::invalid_argument("model spec: weyl4 takes one optional n");
    spec.kind = Kind::kWeyl4;
    spec.n = parts.size() == 2 ? parse_int(parts[1], "weyl4 embedding dimension") : 4;
    if (spec.n < 4) throw std::invalid_argument("model spec: weyl4 embedding dimension must be >= 4");
  } else if (kind == "file") {
    if (parts.size() != 2 || parts[1].empty())
      throw std::invalid_argument("model spec: file needs a path");
    spec.kind = Kind::kFile;
    spec.path = parts[1];
  } else {
    throw std::invalid_argument("model spec: unknown kind '" + kind + "'");
  }
  return spec;
}

CurvatureTensor ModelSpec::build() const {
  switch (kind) {
    case Kind::kSphere:
      return CurvatureTensor::constant_curvature(n, kappa);
    case Kind::kFlat:
      return CurvatureTensor::flat(n);
    case Kind::kCpn:
      return CurvatureTensor::fubini_study(m);
    case Kind::kWeyl4: {
      CurvatureTensor w = CurvatureTensor::weyl4();
      return n > 4 ? CurvatureTensor::embed_trivial(w, n) : w;
    }
    case Kind::kFile:
      return load_curvature_json(path);
    case Kind::kProduct: {
      CurvatureTensor acc = factors.front().build();
      for (std::size_t i = 1; i < factors.size(); ++i)
        acc = CurvatureTensor::product(acc, factors[i].build());
      return acc;
    }
  }
  throw std::invalid_argument("model spec: unknown kind");
}

std::string ModelSpec::name() const {
  switch (kind) {
    case Kind::kSphere:
      return "sphere:" + std::to_string(n) + ":" + format_real(kappa);
    case Kind::kFlat:
      return "flat:" + std::to_string(n);
    case Kind::kCpn:
      return "cpn:" + std::to_string(m);
    case Kind::kWeyl4:
      return n == 4 ? "weyl4" : "weyl4:" + std::to_string(n);
    case Kind::kFile:
      return "file:" + path;
    case Kind::kProduct: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += factors[i].name();
      }
      return s + ")";
    }
  }
  return "?";
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"sphere", "n kappa", "constant sectional curvature kappa on R^n"},
      {"flat", "n", "zero curvature on R^n"},
      {"cpn", "m", "complex projective space CP^m (n = 2m), holomorphic sectional curvature 4"},
      {"product", "(spec,spec)", "orthogonal direct sum of two or more models"},
      {"weyl4", "[n]", "rank-2 self-dual Weyl operator on R^4, optionally embedded in R^n"},
      {"file", "<path>", "curvature tensor from a JSON file {n, entries}"},
  };
  return entries;
}

std::vector<ModelSpec> compact_type_catalog() {
  return {
      ModelSpec::parse("sphere:4:1"),
      ModelSpec::parse("sphere:5:1"),
      ModelSpec::parse("sphere:6:1"),
      ModelSpec::parse("cpn:1"),
      ModelSpec::parse("cpn:2"),
      ModelSpec::parse("product(sphere:2:1,sphere:3:1)"),
  };
}

std::vector<ModelSpec> standard_catalog() {
  std::vector<ModelSpec> models = compact_type_catalog();
  models.push_back(ModelSpec::parse("flat:4"));
  models.push_back(ModelSpec::parse("weyl4"));
  return models;
}

}  // namespace kform
