#include "isorep/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "isorep/errors.hpp"

namespace isorep {
namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field", join(path, key));
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError("expected a number", path);
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError("expected an integer", path);
  return j.get<int>();
}

std::optional<int> optional_int(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return integer(*it, join(path, key));
}

Point2 point_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError("expected [m, n]", path);
  return {integer(j[0], index_path(path, 0)), integer(j[1], index_path(path, 1))};
}

Json point_to_json(Point2 p) { return Json::array({p.m, p.n}); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  const int rows = integer(require(j, "rows", path), join(path, "rows"));
  const int cols = integer(require(j, "cols", path), join(path, "cols"));
  if (rows < 0 || cols < 0) throw InputError("negative shape", path);
  const Json& re = require(j, "re", path);
  if (!re.is_array() || re.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InputError("expected rows * cols entries", join(path, "re"));
  }
  const Json* im = nullptr;
  if (auto it = j.find("im"); it != j.end()) {
    im = &*it;
    if (!im->is_array() || im->size() != re.size()) throw InputError("expected rows * cols entries", join(path, "im"));
  }
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c);
      const double x = number(re[k], index_path(join(path, "re"), k));
      const double y = im ? number((*im)[k], index_path(join(path, "im"), k)) : 0.0;
      m(r, c) = Complex(x, y);
    }
  }
  return m;
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw InputError("expected a non-empty array", path);
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = index_path(path, k);
    if (j[k].is_array()) {
      if (j[k].size() != 2) throw InputError("expected [re, im]", p);
      v(static_cast<Eigen::Index>(k)) = Complex(number(j[k][0], p), number(j[k][1], p));
    } else {
      v(static_cast<Eigen::Index>(k)) = number(j[k], p);
    }
  }
  return v;
}

ComplexVector vector_from_csv(const std::string& text, const std::string& path) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + item + "'", index_path(path, values.size()));
    }
  }
  if (values.empty()) throw InputError("expected comma-separated numbers", path);
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) v(static_cast<Eigen::Index>(k)) = values[k];
  return v;
}

FamilyKind family_kind_from_string(const std::string& s, const std::string& path) {
  if (s == "projection") return FamilyKind::projection;
  if (s == "reflection") return FamilyKind::reflection;
  if (s == "custom") return FamilyKind::custom;
  if (s == "truncated_infinite") return FamilyKind::truncated_infinite;
  throw InputError("unknown family kind '" + s + "'", path);
}

RepConfig rep_config_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError("expected an object", path.empty() ? "config" : path);
  RepConfig c;
  const Json& family = require(j, "family", path);
  if (!family.is_string()) throw InputError("expected a string", join(path, "family"));
  c.family = family_kind_from_string(family.get<std::string>(), join(path, "family"));
  c.n = optional_int(j, "n", path);
  c.L = optional_int(j, "L", path);
  c.guard = optional_int(j, "guard", path);
  if (auto it = j.find("unitary"); it != j.end()) c.unitary = matrix_from_json(*it, join(path, "unitary"));
  if (auto it = j.find("projections"); it != j.end()) {
    const std::string p = join(path, "projections");
    if (it->is_string()) {
      if (it->get<std::string>() != "standard_basis") throw InputError("expected \"standard_basis\" or a list", p);
    } else if (it->is_array()) {
      std::vector<ComplexMatrix> ps;
      for (std::size_t k = 0; k < it->size(); ++k) ps.push_back(matrix_from_json((*it)[k], index_path(p, k)));
      c.projections = std::move(ps);
    } else {
      throw InputError("expected \"standard_basis\" or a list of matrices", p);
    }
  }
  if (auto it = j.find("a_vector"); it != j.end()) c.a_vector = vector_from_json(*it, join(path, "a_vector"));
  if (auto it = j.find("w1"); it != j.end()) c.w1 = matrix_from_json(*it, join(path, "w1"));
  if (auto it = j.find("w2"); it != j.end()) c.w2 = matrix_from_json(*it, join(path, "w2"));
  if (auto it = j.find("reparam"); it != j.end()) {
    const std::string p = join(path, "reparam");
    c.reparam = Reparametrization{point_from_json(require(*it, "a", p), join(p, "a")),
                                  point_from_json(require(*it, "b", p), join(p, "b"))};
  }
  return c;
}

Json rep_config_to_json(const RepConfig& c) {
  Json j;
  j["family"] = to_string(c.family);
  if (c.n) j["n"] = *c.n;
  if (c.L) j["L"] = *c.L;
  if (c.guard) j["guard"] = *c.guard;
  if (c.unitary) j["unitary"] = matrix_to_json(*c.unitary);
  if (c.family == FamilyKind::projection) {
    if (c.projections) {
      Json ps = Json::array();
      for (const auto& p : *c.projections) ps.push_back(matrix_to_json(p));
      j["projections"] = std::move(ps);
    } else {
      j["projections"] = "standard_basis";
    }
  }
  if (c.a_vector) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < c.a_vector->size(); ++k) a.push_back(Json::array({(*c.a_vector)(k).real(), (*c.a_vector)(k).imag()}));
    j["a_vector"] = std::move(a);
  }
  if (c.w1) j["w1"] = matrix_to_json(*c.w1);
  if (c.w2) j["w2"] = matrix_to_json(*c.w2);
  if (c.reparam) j["reparam"] = Json{{"a", point_to_json(c.reparam->a)}, {"b", point_to_json(c.reparam->b)}};
  return j;
}

namespace {

void check_n(const RepConfig& c, Eigen::Index actual, const std::string& source) {
  if (c.n && *c.n != actual) {
    throw InputError("n = " + std::to_string(*c.n) + " but " + source + " acts on C^" + std::to_string(actual), "n");
  }
}

TruncationParams truncation_for(const RepConfig& c, int n, TruncationParams defaults) {
  TruncationParams t = defaults;
  t.n = n;
  if (c.L) t.L = *c.L;
  if (c.guard) t.guard = *c.guard;
  try {
    t.validate();
  } catch (const InputError& e) {
    throw InputError(e.what(), c.guard ? "guard" : "L");
  }
  return t;
}

}  // namespace

std::optional<ProjectionFamily> family_from_config(const RepConfig& c, const ToleranceConfig& tol) {
  if (c.family == FamilyKind::projection) {
    if (!c.unitary) throw InputError("projection family needs a unitary", "unitary");
    check_n(c, c.unitary->rows(), "unitary");
    ProjectionFamily fam = ProjectionFamily::standard_basis(*c.unitary);
    if (c.projections) fam.projections = *c.projections;
    fam.validate(tol);
    return fam;
  }
  if (c.family == FamilyKind::reflection) {
    if (!c.a_vector) throw InputError("reflection family needs a_vector", "a_vector");
    check_n(c, c.a_vector->size(), "a_vector");
    if (c.a_vector->norm() == 0.0) throw InputError("a_vector must be non-zero", "a_vector");
    return ProjectionFamily::standard_basis(reflection_unitary(*c.a_vector));
  }
  return std::nullopt;
}

IsoRep2 build_rep(const RepConfig& c, const ToleranceConfig& tol) {
  IsoRep2 rep;
  switch (c.family) {
    case FamilyKind::projection: {
      const ProjectionFamily fam = *family_from_config(c, tol);
      const int n = static_cast<int>(fam.dim());
      const TruncationParams t = truncation_for(c, n, default_truncation(n, fam.size()));
      if (fam.size() > t.interior_levels()) {
        throw InputError("d = " + std::to_string(fam.size()) + " exceeds L - guard", c.L ? "L" : "guard");
      }
      rep = build_projection_family_rep(fam, t, tol);
      break;
    }
    case FamilyKind::reflection: {
      family_from_config(c, tol);
      const int n = static_cast<int>(c.a_vector->size());
      const TruncationParams t = truncation_for(c, n, default_truncation(n, n));
      if (n > t.interior_levels()) throw InputError("d = n exceeds L - guard", c.L ? "L" : "guard");
      rep = build_reflection_rep(*c.a_vector, t, tol);
      break;
    }
    case FamilyKind::truncated_infinite: {
      if (!c.n) throw InputError("truncated_infinite needs n", "n");
      if (*c.n < 2) throw InputError("must be >= 2", "n");
      const TruncationParams t = truncation_for(c, *c.n, truncated_infinite_truncation(*c.n));
      if (*c.n > t.interior_levels()) throw InputError("d = n exceeds L - guard", c.L ? "L" : "guard");
      rep = build_truncated_infinite_rep(*c.n, t, tol);
      break;
    }
    case FamilyKind::custom: {
      if (!c.w1) throw InputError("custom representation needs w1", "w1");
      if (!c.w2) throw InputError("custom representation needs w2", "w2");
      if (!c.n) throw InputError("custom representation needs n", "n");
      if (!c.L) throw InputError("custom representation needs L", "L");
      if (!c.guard) throw InputError("custom representation needs guard", "guard");
      const TruncationParams t = truncation_for(c, *c.n, {});
      for (const char* key : {"w1", "w2"}) {
        const ComplexMatrix& w = std::string(key) == "w1" ? *c.w1 : *c.w2;
        if (w.rows() != t.dim() || w.cols() != t.dim()) {
          throw InputError("expected a " + std::to_string(t.dim()) + " x " + std::to_string(t.dim()) + " matrix (n L)", key);
        }
      }
      rep = make_custom_rep(*c.w1, *c.w2, t);
      break;
    }
  }
  if (c.reparam) {
    try {
      rep = reparametrize(rep, c.reparam->a, c.reparam->b);
    } catch (const InputError& e) {
      throw InputError(e.what(), "reparam");
    }
  }
  return rep;
}

Json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open file", file);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), file);
  }
}

Json to_json(const ValidationReport& r) {
  return Json{{"isometry_w1", r.isometry_w1}, {"isometry_w2", r.isometry_w2}, {"commutation", r.commutation},
              {"passed", r.passed()}};
}

Json to_json(const PurityReport& r) {
  Json per = Json::array();
  for (std::size_t g = 0; g < r.per_generator.size(); ++g) {
    per.push_back(Json{{"verdict", to_string(r.per_generator[g])},
                       {"multiplicity", r.multiplicity[g]},
                       {"ranks", r.ranks[g]}});
  }
  return Json{{"verdict", to_string(r.verdict)}, {"generators", std::move(per)}};
}

Json to_json(const CocycleResiduals& r) {
  return Json{{"kernel_w1", r.kernel_w1}, {"kernel_w2", r.kernel_w2}, {"compatibility", r.compatibility}};
}

Json to_json(const CocycleSpace& s, bool with_basis) {
  Json j{{"dim", s.dim()}, {"stable", s.stable}, {"unfiltered_dim", s.unfiltered_dim}, {"residuals", to_json(s.residuals)}};
  if (with_basis) {
    Json basis = Json::array();
    for (const auto& c : s.basis) basis.push_back(Json{{"eta10", matrix_to_json(c.eta10)}, {"eta01", matrix_to_json(c.eta01)}});
    j["basis"] = std::move(basis);
  }
  return j;
}

Json to_json(const IndexResult& r) {
  Json index;
  switch (r.kind) {
    case IndexKind::finite: index["finite"] = r.value; break;
    case IndexKind::unbounded_with_truncation:
      index["unbounded_with_truncation"] = Json{{"value", r.value}, {"value_larger_family", r.value_extended_family}};
      break;
    case IndexKind::unstable:
      index["unstable"] = Json{{"value", r.value}, {"value_larger_L", r.value_extended_level}};
      break;
  }
  Json out{{"index", std::move(index)},
           {"stable", r.stable},
           {"value", r.value},
           {"value_larger_L", r.value_extended_level}};
  if (r.kind == IndexKind::unbounded_with_truncation) out["value_larger_family"] = r.value_extended_family;
  return out;
}

Json to_json(const EquivalenceVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"witness", v.witness ? matrix_to_json(*v.witness) : Json(nullptr)},
              {"residuals", Json{{"unitarity", v.unitarity_residual}, {"intertwining", v.intertwining_residual}}},
              {"intertwiner_dim", v.intertwiner_dim},
              {"condition", std::isfinite(v.condition) ? Json(v.condition) : Json(nullptr)},
              {"path", v.path},
              {"seed", v.seed}};
}

Json to_json(const TruncationParams& t) { return Json{{"n", t.n}, {"L", t.L}, {"guard", t.guard}}; }

}  // namespace isorep
