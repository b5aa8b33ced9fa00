// Copyright 2026 The maxstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maxstab/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "maxstab/error.hpp"

namespace maxstab::io {
namespace {

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::string& where, ParseContext& ctx) {
  require(j.is_object(), where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key)) continue;
    const std::string msg = "unknown field '" + key + "' in " + where;
    require(!ctx.strict, msg);
    ctx.warnings.push_back(msg);
  }
}

// Missing keys and type mismatches surface as validation errors.
template <typename F>
auto validated(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidArgument(e.what());
  }
}

double number(const json& j, const std::string& what) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return kInf;
  require(j.is_number(), what + " must be a number");
  return j.get<double>();
}

Eigen::MatrixXd matrix(const json& j, const std::string& what) {
  require(j.is_array() && !j.empty(), what + " must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n,
            what + " must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

std::vector<double> vector_of(const json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, what));
  return v;
}

json number_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

NormSpec norm_from_json(const json& j) {
  if (j.is_number() || j.is_string()) return NormSpec::lp(number(j, "norm p"));
  require(j.is_object(), "norm must be an object");
  const std::string kind = j.value("kind", std::string("lp"));
  const double p = number(j.at("p"), "norm p");
  if (kind == "lp") {
    require(!j.contains("weights"), "plain lp norms take no weights");
    return NormSpec::lp(p);
  }
  require(kind == "weighted_lp", "norm kind must be 'lp' or 'weighted_lp'");
  return NormSpec::weighted_lp(p, vector_of(j.at("weights"), "norm weights"));
}

json to_json(const NormSpec& norm) {
  json j{{"kind", norm.is_weighted() ? "weighted_lp" : "lp"}, {"p", number_json(norm.p())}};
  if (norm.is_weighted()) j["weights"] = norm.weights();
  return j;
}

AngularMeasure measure_from_json(const json& j, ParseContext& ctx) {
  return validated([&] {
    check_fields(j, {"dim", "alpha", "norm", "atoms"}, "spectral_measure", ctx);
    const double alpha = number(j.at("alpha"), "alpha");
    const NormSpec norm = norm_from_json(j.at("norm"));
    const auto& atoms_json = j.at("atoms");
    require(atoms_json.is_array() && !atoms_json.empty(), "atoms must be a nonempty array");
    std::vector<AngularAtom> atoms;
    for (const auto& a : atoms_json) {
      require(a.is_array() && a.size() == 2, "each atom is [[point], weight]");
      atoms.push_back({vector_of(a[0], "atom point"), number(a[1], "atom weight")});
    }
    if (j.contains("dim")) {
      const auto dim = j.at("dim").get<std::size_t>();
      for (const auto& a : atoms) require(a.point.size() == dim, "atom dimension differs from dim");
    }
    return AngularMeasure(alpha, norm, std::move(atoms));
  });
}

json to_json(const AngularMeasure& h) {
  json atoms = json::array();
  for (const auto& a : h.atoms()) atoms.push_back(json::array({a.point, a.weight}));
  return {{"dim", h.dim()}, {"alpha", h.alpha()}, {"norm", to_json(h.norm())}, {"atoms", atoms}};
}

ModelSpec model_from_json(const json& j, ParseContext& ctx) {
  return validated([&] {
    check_fields(j,
                 {"schema", "family", "dim", "alpha", "theta", "lambda_matrix", "covariance",
                  "spectral_measure", "spectral_measure_file", "margins", "mvn_tol", "mvn_seed"},
                 "model", ctx);
    if (j.contains("schema")) {
      require(j.at("schema") == kSchemaVersion, "unsupported schema version");
    }
    const Family family = parse_family(j.at("family").get<std::string>());
    MvnSettings mvn;
    if (j.contains("mvn_tol")) mvn.tol = number(j.at("mvn_tol"), "mvn_tol");
    if (j.contains("mvn_seed")) mvn.seed = j.at("mvn_seed").get<std::uint64_t>();
    const double alpha = j.contains("alpha") ? number(j.at("alpha"), "alpha") : 1.0;
    auto dim = [&] {
      const auto d = j.at("dim").get<long long>();
      require(d >= 1, "dim must be positive");
      return static_cast<std::size_t>(d);
    };
    std::optional<MaxStableModel> model;
    switch (family) {
      case Family::kLogistic:
        model = MaxStableModel::logistic(dim(), number(j.at("theta"), "theta"), alpha);
        break;
      case Family::kIndependent:
        model = MaxStableModel::independent(dim(), alpha);
        break;
      case Family::kComonotone:
        model = MaxStableModel::comonotone(dim(), alpha);
        break;
      case Family::kDiscreteSpectral: {
        json m;
        if (j.contains("spectral_measure")) {
          m = j.at("spectral_measure");
        } else {
          require(j.contains("spectral_measure_file"),
                  "discrete_spectral needs spectral_measure or spectral_measure_file");
          m = read_json_file(ctx.base_dir / j.at("spectral_measure_file").get<std::string>());
        }
        model = MaxStableModel::discrete_spectral(measure_from_json(m, ctx));
        break;
      }
      case Family::kHuslerReiss:
        model = MaxStableModel::husler_reiss(matrix(j.at("lambda_matrix"), "lambda_matrix"), mvn);
        break;
      case Family::kBrownResnick:
        model = MaxStableModel::brown_resnick(matrix(j.at("covariance"), "covariance"), mvn);
        break;
    }
    if (j.contains("dim")) require(dim() == model->dim(), "dim does not match the model");
    ModelSpec spec{*model, std::nullopt};
    if (j.contains("margins")) {
      const auto& mj = j.at("margins");
      check_fields(mj, {"scale", "index"}, "margins", ctx);
      MarginSpec m{vector_of(mj.at("scale"), "margin scale"), vector_of(mj.at("index"), "margin index")};
      m.validate(model->dim());
      spec.margins = std::move(m);
    }
    return spec;
  });
}

PairSpec pair_from_json(const json& j, ParseContext& ctx) {
  return validated([&] {
    check_fields(j, {"schema", "pair_id", "first", "second"}, "pair", ctx);
    require(j.value("schema", kSchemaVersion) == kSchemaVersion, "unsupported schema version");
    auto side = [&](const char* key) {
      const auto& s = j.at(key);
      if (s.is_string()) return load_model(ctx.base_dir / s.get<std::string>(), ctx);
      return model_from_json(s, ctx);
    };
    PairSpec p{j.value("pair_id", std::string("pair")), side("first"), side("second")};
    require(p.first.model.dim() == p.second.model.dim(), "pair models differ in dimension");
    return p;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

ModelSpec load_model(const std::filesystem::path& path, ParseContext& ctx) {
  const json j = read_json_file(path);
  ParseContext local{ctx.strict, path.parent_path(), {}};
  ModelSpec m = model_from_json(j, local);
  ctx.warnings.insert(ctx.warnings.end(), local.warnings.begin(), local.warnings.end());
  return m;
}

PairSpec load_pair(const std::filesystem::path& path, ParseContext& ctx) {
  const json j = read_json_file(path);
  ParseContext local{ctx.strict, path.parent_path(), {}};
  PairSpec p = pair_from_json(j, local);
  ctx.warnings.insert(ctx.warnings.end(), local.warnings.begin(), local.warnings.end());
  return p;
}

json to_json(const BoundReport& r) {
  json j{{"bound_name", r.name}, {"bound_value", r.value}, {"constants", r.constants}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.dominated_quantity) {
    j["dominated_quantity"] = *r.dominated_quantity;
    j["dominated_label"] = r.dominated_label;
    j["slack"] = *r.slack();
  }
  return j;
}

json to_json(const KolmogorovResult& r) {
  json wx = json::array();
  for (double v : r.witness_x) wx.push_back(number_json(v));
  json wu = json::array();
  for (double v : r.witness_u) wu.push_back(number_json(v));
  return {{"value", r.value},       {"certified_lower", r.certified_lower},
          {"witness_u", wu},        {"witness_r", r.witness_r},
          {"witness_x", wx},        {"converged", r.converged},
          {"heuristic", r.heuristic}, {"evaluations", r.evaluations}};
}

json to_json(const TransportPlan& plan) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < plan.coupling.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < plan.coupling.cols(); ++c) row.push_back(plan.coupling(r, c));
    rows.push_back(row);
  }
  return {{"cost", plan.cost}, {"coupling", rows}, {"optimal", plan.optimal}, {"pivots", plan.pivots}};
}

}  // namespace maxstab::io
