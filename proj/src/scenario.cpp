#include "netsim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netsim/errors.hpp"

namespace netsim {

namespace {

using nlohmann::json;

// Tracks which keys of an object were consumed so leftovers can be rejected.
class Section {
 public:
  Section(const json* obj, std::string path) : obj_(obj), path_(std::move(path)) {}

  bool present(const std::string& key) const { return obj_ && obj_->contains(key); }

  const json* child(const std::string& key) {
    if (!present(key)) return nullptr;
    used_.insert(key);
    const json& c = (*obj_)[key];
    if (!c.is_object()) throw ConfigError(join(key), "expected an object");
    return &c;
  }

  template <typename T>
  void get(const std::string& key, T& value) {
    if (!present(key)) return;
    used_.insert(key);
    try {
      value = (*obj_)[key].get<T>();
    } catch (const json::exception&) {
      throw ConfigError(join(key), "wrong type");
    }
  }

  void get_vec3(const std::string& key, Vec3& value) {
    if (!present(key)) return;
    used_.insert(key);
    const json& a = (*obj_)[key];
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number())
      throw ConfigError(join(key), "expected an array of 3 numbers");
    value = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
  }

  const json* raw(const std::string& key) {
    if (!present(key)) return nullptr;
    used_.insert(key);
    return &(*obj_)[key];
  }

  void finish() const {
    if (!obj_) return;
    for (auto it = obj_->begin(); it != obj_->end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(join(it.key()), "unknown key");
    }
  }

  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json* obj_;
  std::string path_;
  std::set<std::string> used_;
};

ControllerKind parse_controller(const std::string& s, const std::string& path) {
  if (s == "pid") return ControllerKind::Pid;
  if (s == "smc") return ControllerKind::Smc;
  throw ConfigError(path, "expected \"pid\" or \"smc\", got \"" + s + "\"");
}

NetModelKind parse_model(const std::string& s, const std::string& path) {
  if (s == "inextensible") return NetModelKind::InextensibleEdges;
  if (s == "shell") return NetModelKind::Shell;
  if (s == "saint_venant") return NetModelKind::SaintVenant;
  throw ConfigError(path, "expected \"inextensible\", \"shell\" or \"saint_venant\", got \"" +
                              s + "\"");
}

SmcForm parse_smc_form(const std::string& s, const std::string& path) {
  if (s == "paper") return SmcForm::PaperEq8;
  if (s == "consistent") return SmcForm::Consistent;
  if (s == "integral") return SmcForm::Integral;
  throw ConfigError(path, "expected \"paper\", \"consistent\" or \"integral\", got \"" + s +
                              "\"");
}

Combination parse_combination(const std::string& s, const std::string& path) {
  const auto plus = s.find('+');
  if (plus == std::string::npos) throw ConfigError(path, "expected \"controller+model\"");
  Combination c;
  c.controller = parse_controller(s.substr(0, plus), path);
  c.model = parse_model(s.substr(plus + 1), path);
  return c;
}

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void read_scenario(const json& root, Scenario& sc) {
  Section top(&root, "");

  std::string controller = to_string(sc.sim.gains.kind);
  top.get("controller", controller);
  sc.sim.gains.kind = parse_controller(controller, "controller");

  std::string model = to_string(sc.sim.model);
  top.get("net_model", model);
  sc.sim.model = parse_model(model, "net_model");

  if (const json* j = top.child("net")) {
    Section s(j, "net");
    s.get("rows", sc.sim.net.rows);
    s.get("cols", sc.sim.net.cols);
    s.get("side_length", sc.sim.net.side_length);
    s.get("node_mass", sc.sim.net.node_mass);
    s.get("corner_mass", sc.sim.net.corner_mass);
    s.get_vec3("offset", sc.sim.net.offset);
    s.get_vec3("relative_velocity", sc.sim.net.relative_velocity);
    s.get("spawn_clearance", sc.sim.net.spawn_clearance);
    s.finish();
  }

  if (const json* j = top.child("elastic")) {
    Section s(j, "elastic");
    s.get("young_modulus", sc.sim.elastic.young_modulus);
    s.get("poisson_ratio", sc.sim.elastic.poisson_ratio);
    s.get("damping", sc.sim.elastic.damping);
    s.get("thickness", sc.sim.elastic.thickness);
    s.get("bending_stiffness", sc.sim.elastic.bending_stiffness);
    s.get("edge_stiffness", sc.sim.elastic.edge_stiffness);
    s.get("constraint_iterations", sc.sim.elastic.constraint_iterations);
    s.finish();
  }

  if (const json* j = top.child("gains")) {
    Section s(j, "gains");
    s.get("kp", sc.sim.gains.kp);
    s.get("ki", sc.sim.gains.ki);
    s.get("kd", sc.sim.gains.kd);
    s.get("lambda", sc.sim.gains.lambda);
    s.get("k_sw", sc.sim.gains.k_sw);
    s.get("sigma", sc.sim.gains.sigma);
    std::string form = to_string(sc.sim.gains.smc_form);
    s.get("smc_form", form);
    sc.sim.gains.smc_form = parse_smc_form(form, "gains.smc_form");
    s.get("smc_mass_scaled", sc.sim.gains.smc_mass_scaled);
    s.get("smc_leak", sc.sim.gains.smc_leak);
    s.get("thrust_limit", sc.sim.gains.thrust_limit);
    s.get("isp", sc.sim.gains.isp);
    s.get("g0", sc.sim.gains.g0);
    s.finish();
  }

  if (const json* j = top.child("guidance")) {
    Section s(j, "guidance");
    double deg = sc.sim.guidance.leftover_angle_threshold / kDegToRad;
    s.get("leftover_angle_deg", deg);
    sc.sim.guidance.leftover_angle_threshold = deg * kDegToRad;
    s.get("area_fraction", sc.sim.guidance.area_fraction_threshold);
    s.get("capture_corner_distance", sc.sim.guidance.capture_corner_distance);
    s.get("capture_velocity_tol", sc.sim.guidance.capture_velocity_tol);
    s.get("capture_sustain_steps", sc.sim.guidance.capture_sustain_steps);
    s.get("no_contact_retry_steps", sc.sim.guidance.no_contact_retry_steps);
    s.get("approach_scale", sc.sim.guidance.approach_scale);
    s.get("target_vel_limit", sc.sim.guidance.target_vel_limit);
    s.get("target_acc_limit", sc.sim.guidance.target_acc_limit);
    s.finish();
  }

  if (const json* j = top.child("contact")) {
    Section s(j, "contact");
    s.get("penalty_stiffness", sc.sim.contact.penalty_stiffness);
    s.get("penalty_damping", sc.sim.contact.penalty_damping);
    s.get("friction", sc.sim.contact.friction_coeff);
    s.get("node_radius", sc.sim.contact.node_radius);
    s.get("self_contact", sc.sim.contact.self_contact_enabled);
    s.get("friction_regularization_vel", sc.sim.contact.friction_regularization_vel);
    s.finish();
  }

  if (const json* j = top.child("orbit")) {
    Section s(j, "orbit");
    s.get("omega", sc.sim.orbit.omega);
    s.get("r0_km", sc.sim.orbit.r0_km);
    s.finish();
  }

  if (const json* j = top.child("debris")) {
    Section s(j, "debris");
    s.get("mass", sc.sim.debris.mass);
    s.get_vec3("initial_velocity", sc.sim.debris.initial_velocity);
    s.get_vec3("initial_angular_velocity", sc.sim.debris.initial_angular_velocity);
    if (const json* g = s.raw("geometry")) {
      if (!g->is_array() || g->empty())
        throw ConfigError("debris.geometry", "expected a non-empty array of boxes");
      sc.sim.debris.geometry.primitives.clear();
      int idx = 0;
      for (const auto& item : *g) {
        const std::string path = "debris.geometry[" + std::to_string(idx++) + "]";
        Section b(&item, path);
        BoxPrimitive prim;
        b.get_vec3("half_extents", prim.half_extents);
        b.get_vec3("offset", prim.offset);
        b.finish();
        sc.sim.debris.geometry.primitives.push_back(prim);
      }
    }
    s.finish();
  }

  if (const json* j = top.child("sim")) {
    Section s(j, "sim");
    s.get("control_step", sc.sim.control_step);
    s.get("substeps", sc.sim.substeps);
    s.get("timeout", sc.sim.timeout);
    s.get("fuel_floor_mass", sc.sim.fuel_floor_mass);
    s.get("divergence_limit", sc.sim.divergence_limit);
    s.get("seed", sc.sim.seed);
    s.get("log_trajectory", sc.sim.log_trajectory);
    s.finish();
  }

  if (const json* j = top.child("batch")) {
    Section s(j, "batch");
    s.get("samples", sc.batch.samples);
    s.get("radius", sc.batch.sphere_radius);
    s.get("seed", sc.batch.seed);
    s.get("surface", sc.batch.sphere_surface);
    s.get("workers", sc.batch.workers);
    s.get("output_dir", sc.batch.output_dir);
    if (const json* c = s.raw("combinations")) {
      if (c->is_string() && c->get<std::string>() == "all") {
        sc.batch.combinations = all_combinations();
      } else if (c->is_array()) {
        sc.batch.combinations.clear();
        int idx = 0;
        for (const auto& item : *c) {
          const std::string path = "batch.combinations[" + std::to_string(idx++) + "]";
          if (!item.is_string()) throw ConfigError(path, "expected a string");
          sc.batch.combinations.push_back(parse_combination(item.get<std::string>(), path));
        }
        if (sc.batch.combinations.empty())
          throw ConfigError("batch.combinations", "must be non-empty");
      } else {
        throw ConfigError("batch.combinations", "expected \"all\" or an array");
      }
    }
    s.finish();
  }

  top.finish();
  sc.sim.validate();
  if (sc.batch.samples < 1) throw ConfigError("batch.samples", "must be >= 1");
  if (sc.batch.sphere_radius <= 0.0) throw ConfigError("batch.radius", "must be > 0");
  if (sc.batch.workers < 0) throw ConfigError("batch.workers", "must be >= 0");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario sc;

  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) return sc;  // empty scenario: paper-baseline defaults

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ConfigError(origin, "parse error at line " + std::to_string(line) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin, "scenario must be a JSON object");

  read_scenario(root, sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string scenario_text(const Scenario& sc) {
  auto vec = [](const Vec3& v) { return json::array({v.x, v.y, v.z}); };

  json geometry = json::array();
  for (const auto& p : sc.sim.debris.geometry.primitives) {
    geometry.push_back({{"half_extents", vec(p.half_extents)}, {"offset", vec(p.offset)}});
  }

  json combos = json::array();
  for (const auto& c : sc.batch.combinations) combos.push_back(c.label());

  const json doc = {
      {"controller", to_string(sc.sim.gains.kind)},
      {"net_model", to_string(sc.sim.model)},
      {"net",
       {{"rows", sc.sim.net.rows},
        {"cols", sc.sim.net.cols},
        {"side_length", sc.sim.net.side_length},
        {"node_mass", sc.sim.net.node_mass},
        {"corner_mass", sc.sim.net.corner_mass},
        {"offset", vec(sc.sim.net.offset)},
        {"relative_velocity", vec(sc.sim.net.relative_velocity)},
        {"spawn_clearance", sc.sim.net.spawn_clearance}}},
      {"elastic",
       {{"young_modulus", sc.sim.elastic.young_modulus},
        {"poisson_ratio", sc.sim.elastic.poisson_ratio},
        {"damping", sc.sim.elastic.damping},
        {"thickness", sc.sim.elastic.thickness},
        {"bending_stiffness", sc.sim.elastic.bending_stiffness},
        {"edge_stiffness", sc.sim.elastic.edge_stiffness},
        {"constraint_iterations", sc.sim.elastic.constraint_iterations}}},
      {"gains",
       {{"kp", sc.sim.gains.kp},
        {"ki", sc.sim.gains.ki},
        {"kd", sc.sim.gains.kd},
        {"lambda", sc.sim.gains.lambda},
        {"k_sw", sc.sim.gains.k_sw},
        {"sigma", sc.sim.gains.sigma},
        {"smc_form", to_string(sc.sim.gains.smc_form)},
        {"smc_mass_scaled", sc.sim.gains.smc_mass_scaled},
        {"smc_leak", sc.sim.gains.smc_leak},
        {"thrust_limit", sc.sim.gains.thrust_limit},
        {"isp", sc.sim.gains.isp},
        {"g0", sc.sim.gains.g0}}},
      {"guidance",
       {{"leftover_angle_deg", sc.sim.guidance.leftover_angle_threshold / kDegToRad},
        {"area_fraction", sc.sim.guidance.area_fraction_threshold},
        {"capture_corner_distance", sc.sim.guidance.capture_corner_distance},
        {"capture_velocity_tol", sc.sim.guidance.capture_velocity_tol},
        {"capture_sustain_steps", sc.sim.guidance.capture_sustain_steps},
        {"no_contact_retry_steps", sc.sim.guidance.no_contact_retry_steps},
        {"approach_scale", sc.sim.guidance.approach_scale},
        {"target_vel_limit", sc.sim.guidance.target_vel_limit},
        {"target_acc_limit", sc.sim.guidance.target_acc_limit}}},
      {"contact",
       {{"penalty_stiffness", sc.sim.contact.penalty_stiffness},
        {"penalty_damping", sc.sim.contact.penalty_damping},
        {"friction", sc.sim.contact.friction_coeff},
        {"node_radius", sc.sim.contact.node_radius},
        {"self_contact", sc.sim.contact.self_contact_enabled},
        {"friction_regularization_vel", sc.sim.contact.friction_regularization_vel}}},
      {"orbit", {{"omega", sc.sim.orbit.omega}, {"r0_km", sc.sim.orbit.r0_km}}},
      {"debris",
       {{"mass", sc.sim.debris.mass},
        {"initial_velocity", vec(sc.sim.debris.initial_velocity)},
        {"initial_angular_velocity", vec(sc.sim.debris.initial_angular_velocity)},
        {"geometry", geometry}}},
      {"sim",
       {{"control_step", sc.sim.control_step},
        {"substeps", sc.sim.substeps},
        {"timeout", sc.sim.timeout},
        {"fuel_floor_mass", sc.sim.fuel_floor_mass},
        {"divergence_limit", sc.sim.divergence_limit},
        {"seed", sc.sim.seed},
        {"log_trajectory", sc.sim.log_trajectory}}},
      {"batch",
       {{"samples", sc.batch.samples},
        {"radius", sc.batch.sphere_radius},
        {"seed", sc.batch.seed},
        {"surface", sc.batch.sphere_surface},
        {"workers", sc.batch.workers},
        {"output_dir", sc.batch.output_dir},
        {"combinations", combos}}}};

  return doc.dump(2) + "\n";
}

void write_scenario(const std::string& path, const Scenario& scenario) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << scenario_text(scenario);
}

}  // namespace netsim
