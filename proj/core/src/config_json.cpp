#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qfisim/experiment.hpp"

namespace qfisim {

using nlohmann::json;

std::string to_string(ExperimentKind e) {
  switch (e) {
    case ExperimentKind::QFI_TIMESERIES: return "QFI_TIMESERIES";
    case ExperimentKind::SCALING_SWEEP: return "SCALING_SWEEP";
    case ExperimentKind::HEATMAP: return "HEATMAP";
    case ExperimentKind::ETA_TABLE: return "ETA_TABLE";
    case ExperimentKind::ASYMPTOTE: return "ASYMPTOTE";
    case ExperimentKind::BOUND_CHECK: return "BOUND_CHECK";
  }
  return "?";
}

std::string to_string(EngineKind e) {
  switch (e) {
    case EngineKind::ED: return "ED";
    case EngineKind::FREE_FERMION: return "FREE_FERMION";
    case EngineKind::BOTH: return "BOTH";
  }
  return "?";
}

namespace {

std::optional<ExperimentKind> experiment_from_string(const std::string& s) {
  if (s == "QFI_TIMESERIES") return ExperimentKind::QFI_TIMESERIES;
  if (s == "SCALING_SWEEP") return ExperimentKind::SCALING_SWEEP;
  if (s == "HEATMAP") return ExperimentKind::HEATMAP;
  if (s == "ETA_TABLE") return ExperimentKind::ETA_TABLE;
  if (s == "ASYMPTOTE") return ExperimentKind::ASYMPTOTE;
  if (s == "BOUND_CHECK") return ExperimentKind::BOUND_CHECK;
  return std::nullopt;
}

std::optional<EngineKind> engine_from_string(const std::string& s) {
  if (s == "ED") return EngineKind::ED;
  if (s == "FREE_FERMION") return EngineKind::FREE_FERMION;
  if (s == "BOTH") return EngineKind::BOTH;
  return std::nullopt;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment", "family",   "n_sites", "J",      "h",
      "lambda",     "alpha_exponent", "lambda_star", "custom_terms", "theta",
      "phi",        "t_grid",   "n_grid",  "engine", "output_dir",
      "seed"};
  return keys;
}

bool fetch_number(const json& j, const std::string& key, double& out,
                  std::vector<Diagnostic>& diags) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    diags.push_back({key, "must be a number"});
    return false;
  }
  out = v.get<double>();
  return true;
}

void parse_custom_terms(const json& v, ExperimentConfig& c, std::vector<Diagnostic>& diags) {
  if (!v.is_array()) {
    diags.push_back({"custom_terms", "must be an array of term objects"});
    return;
  }
  for (const auto& term : v) {
    if (!term.is_object() || !term.contains("sites") || !term.contains("axes") ||
        !term.contains("coefficient")) {
      diags.push_back({"custom_terms", "each term needs sites, axes, coefficient"});
      return;
    }
    const auto& sites = term.at("sites");
    const auto& axes = term.at("axes");
    const auto& coef = term.at("coefficient");
    if (!sites.is_array() || !axes.is_string() || !coef.is_number()) {
      diags.push_back({"custom_terms", "sites: int array, axes: string, coefficient: number"});
      return;
    }
    const std::string ax = axes.get<std::string>();
    if (sites.size() != ax.size() || sites.empty()) {
      diags.push_back({"custom_terms", "sites and axes must have equal nonzero length"});
      return;
    }
    PauliString p;
    p.n_sites = c.model.n_sites;
    p.coefficient = cplx(coef.get<double>(), 0.0);
    for (std::size_t q = 0; q < ax.size(); ++q) {
      if (!sites[q].is_number_integer()) {
        diags.push_back({"custom_terms", "sites must be integers"});
        return;
      }
      const int site = sites[q].get<int>();
      PauliAxis axis;
      switch (ax[q]) {
        case 'X': axis = PauliAxis::X; break;
        case 'Y': axis = PauliAxis::Y; break;
        case 'Z': axis = PauliAxis::Z; break;
        default:
          diags.push_back({"custom_terms", "axes characters must be X, Y, or Z"});
          return;
      }
      if (p.factors.count(site)) {
        diags.push_back({"custom_terms", "repeated site within one term"});
        return;
      }
      p.factors[site] = axis;
    }
    c.model.custom_terms.push_back(std::move(p));
  }
}

}  // namespace

ParsedConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  ParsedConfig out;
  auto& c = out.config;
  auto& diags = out.diagnostics;

  if (!j.is_object()) {
    diags.push_back({"(root)", "config must be a JSON object"});
    return out;
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known_keys().count(key)) diags.push_back({key, "unknown key"});
  }
  if (!diags.empty()) return out;

  if (!j.contains("experiment") || !j.at("experiment").is_string()) {
    diags.push_back({"experiment", "required string"});
  } else if (auto e = experiment_from_string(j.at("experiment").get<std::string>())) {
    c.experiment = *e;
  } else {
    diags.push_back({"experiment", "unrecognized experiment kind"});
  }

  // bound checks draw their own random models, so no family is needed there
  const bool family_needed = c.experiment != ExperimentKind::BOUND_CHECK;
  if (!j.contains("family") || !j.at("family").is_string()) {
    if (family_needed || (j.contains("family") && !j.at("family").is_string()))
      diags.push_back({"family", "required string"});
  } else if (auto f = model_family_from_string(j.at("family").get<std::string>())) {
    c.model.family = *f;
  } else {
    diags.push_back({"family", "unrecognized model family"});
  }

  if (j.contains("n_sites")) {
    if (!j.at("n_sites").is_number_integer())
      diags.push_back({"n_sites", "must be an integer"});
    else
      c.model.n_sites = j.at("n_sites").get<int>();
  }

  for (const char* name : {"J", "h", "lambda", "alpha_exponent"}) {
    if (j.contains(name)) {
      double v = 0.0;
      if (fetch_number(j, name, v, diags)) c.model.couplings[name] = v;
    }
  }

  if (j.contains("lambda_star")) {
    const auto& v = j.at("lambda_star");
    if (v.is_string() && v.get<std::string>() == "inf") {
      c.has_lambda_star = true;
      c.lambda_star_infinite = true;
    } else if (v.is_number()) {
      c.has_lambda_star = true;
      c.lambda_star_value = v.get<double>();
    } else {
      diags.push_back({"lambda_star", "must be a number or the string \"inf\""});
    }
  }

  if (j.contains("custom_terms")) parse_custom_terms(j.at("custom_terms"), c, diags);

  if (j.contains("theta")) fetch_number(j, "theta", c.theta, diags);
  if (j.contains("phi")) fetch_number(j, "phi", c.phi, diags);

  if (j.contains("t_grid")) {
    const auto& v = j.at("t_grid");
    if (!v.is_array()) {
      diags.push_back({"t_grid", "must be an array of numbers"});
    } else {
      for (const auto& x : v) {
        if (!x.is_number()) {
          diags.push_back({"t_grid", "must be an array of numbers"});
          break;
        }
        c.t_grid.push_back(x.get<double>());
      }
    }
  }

  if (j.contains("n_grid")) {
    const auto& v = j.at("n_grid");
    if (!v.is_array()) {
      diags.push_back({"n_grid", "must be an array of integers"});
    } else {
      for (const auto& x : v) {
        if (!x.is_number_integer()) {
          diags.push_back({"n_grid", "must be an array of integers"});
          break;
        }
        c.n_grid.push_back(x.get<int>());
      }
    }
  }

  if (j.contains("engine")) {
    if (!j.at("engine").is_string()) {
      diags.push_back({"engine", "must be a string"});
    } else if (auto e = engine_from_string(j.at("engine").get<std::string>())) {
      c.engine = *e;
    } else {
      diags.push_back({"engine", "must be ED, FREE_FERMION, or BOTH"});
    }
  }

  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string())
      diags.push_back({"output_dir", "must be a string"});
    else
      c.output_dir = j.at("output_dir").get<std::string>();
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0)
      diags.push_back({"seed", "must be a nonnegative integer"});
    else
      c.seed = j.at("seed").get<std::uint64_t>();
  }

  // Late fixup: custom terms are parsed before n_sites is guaranteed set when
  // keys arrive out of order, so re-stamp the chain length.
  for (auto& p : c.model.custom_terms) p.n_sites = c.model.n_sites;
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["family"] = to_string(c.model.family);
  j["n_sites"] = c.model.n_sites;
  for (const auto& [name, value] : c.model.couplings) j[name] = value;
  if (c.has_lambda_star) {
    if (c.lambda_star_infinite)
      j["lambda_star"] = "inf";
    else
      j["lambda_star"] = c.lambda_star_value;
  }
  if (!c.model.custom_terms.empty()) {
    json terms = json::array();
    for (const auto& p : c.model.custom_terms) {
      json term;
      term["coefficient"] = p.coefficient.real();
      json sites = json::array();
      std::string axes;
      for (const auto& [site, axis] : p.factors) {
        sites.push_back(site);
        axes += char(axis);
      }
      term["sites"] = sites;
      term["axes"] = axes;
      terms.push_back(term);
    }
    j["custom_terms"] = terms;
  }
  j["theta"] = c.theta;
  j["phi"] = c.phi;
  j["t_grid"] = c.t_grid;
  j["n_grid"] = c.n_grid;
  j["engine"] = to_string(c.engine);
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2);
}

}  // namespace qfisim
