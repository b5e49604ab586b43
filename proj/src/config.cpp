#include "ostar/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ostar {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct ScenarioName {
  ScenarioId id;
  std::string_view name;
};
constexpr ScenarioName kScenarios[] = {
    {ScenarioId::PowerSweep, "power_sweep"},
    {ScenarioId::Wavelength, "wavelength"},
    {ScenarioId::UserCount, "user_count"},
    {ScenarioId::AllocStrategies, "alloc_strategies"},
    {ScenarioId::ElementSweep, "element_sweep"},
};

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

// One accepted key: how to read it into the config and how to write it back.
struct Field {
  std::function<void(ExperimentConfig&, const json&)> set;
  std::function<json(const ExperimentConfig&)> get;
};

// A double stored internally as value * scale. `ref` is a generic accessor
// usable on both const and mutable configs.
template <typename F>
Field scaled(F ref, double scale) {
  return {[ref, scale](ExperimentConfig& c, const json& j) { ref(c) = j.get<double>() * scale; },
          [ref, scale](const ExperimentConfig& c) { return json(ref(c) / scale); }};
}

template <typename T, typename F>
Field plain(F ref) {
  return {[ref](ExperimentConfig& c, const json& j) { ref(c) = j.get<T>(); },
          [ref](const ExperimentConfig& c) { return json(ref(c)); }};
}

AngleLaw parse_law(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected an object");
  AngleLaw law;
  bool have_kind = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "kind") {
      const auto s = v.get<std::string>();
      if (s == "uniform") {
        law.kind = AngleLaw::Kind::Uniform;
      } else if (s == "laplace") {
        law.kind = AngleLaw::Kind::TruncatedLaplace;
      } else {
        throw std::invalid_argument("kind must be \"uniform\" or \"laplace\"");
      }
      have_kind = true;
    } else if (k == "lo_deg") {
      law.lo = v.get<double>() * kDeg;
    } else if (k == "hi_deg") {
      law.hi = v.get<double>() * kDeg;
    } else if (k == "location_deg") {
      law.location = v.get<double>() * kDeg;
    } else if (k == "scale_deg") {
      law.scale = v.get<double>() * kDeg;
    } else {
      throw std::invalid_argument("unknown key '" + k + "'");
    }
  }
  if (!have_kind) throw std::invalid_argument("missing key 'kind'");
  return law;
}

json law_to_json(const AngleLaw& law) {
  return {{"kind", law.kind == AngleLaw::Kind::Uniform ? "uniform" : "laplace"},
          {"lo_deg", law.lo / kDeg},
          {"hi_deg", law.hi / kDeg},
          {"location_deg", law.location / kDeg},
          {"scale_deg", law.scale / kDeg}};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> f;
    using C = ExperimentConfig;

    f["scenario"] = {[](C& c, const json& j) { c.scenario = parse_scenario(j.get<std::string>()); },
                     [](const C& c) { return json(std::string(to_string(c.scenario))); }};
    f["trials"] = plain<int>([](auto& c) -> auto& { return c.trials; });
    f["seed"] = plain<std::uint64_t>([](auto& c) -> auto& { return c.seed; });
    f["threads"] = plain<int>([](auto& c) -> auto& { return c.threads; });
    f["out_dir"] = plain<std::string>([](auto& c) -> auto& { return c.out_dir; });

    // Transmitter and receiver optics.
    f["phi_half_deg"] = scaled([](auto& c) -> auto& { return c.channel.led.phi_half; }, kDeg);
    f["a_pd_cm2"] = scaled([](auto& c) -> auto& { return c.channel.pd.area; }, 1e-4);
    f["t_filter"] = scaled([](auto& c) -> auto& { return c.channel.pd.filter_gain; }, 1.0);
    f["concentrator_f"] = scaled([](auto& c) -> auto& { return c.channel.pd.concentrator_f; }, 1.0);
    f["fov_deg"] = scaled([](auto& c) -> auto& { return c.channel.pd.fov; }, kDeg);
    f["r_pd"] = scaled([](auto& c) -> auto& { return c.channel.pd.responsivity; }, 1.0);
    f["rho_ris"] = scaled([](auto& c) -> auto& { return c.channel.rho_ris; }, 1.0);
    f["rho_wall"] = scaled([](auto& c) -> auto& { return c.rho_wall; }, 1.0);
    f["wavelength_nm"] = scaled([](auto& c) -> auto& { return c.channel.wavelength; }, 1e-9);
    f["psi_mode"] = {[](C& c, const json& j) {
                       const auto s = j.get<std::string>();
                       if (s == "per_element") {
                         c.channel.psi_mode = PsiMode::PerElement;
                       } else if (s == "panel_aggregate") {
                         c.channel.psi_mode = PsiMode::PanelAggregate;
                       } else {
                         throw std::invalid_argument("expected \"per_element\" or \"panel_aggregate\"");
                       }
                     },
                     [](const C& c) {
                       return json(c.channel.psi_mode == PsiMode::PerElement ? "per_element"
                                                                             : "panel_aggregate");
                     }};

    // Liquid-crystal cell.
    f["eta_o"] = scaled([](auto& c) -> auto& { return c.channel.cell.eta_o; }, 1.0);
    f["eta_e"] = scaled([](auto& c) -> auto& { return c.channel.cell.eta_e; }, 1.0);
    f["eta_a"] = scaled([](auto& c) -> auto& { return c.channel.cell.eta_a; }, 1.0);
    f["v_th"] = scaled([](auto& c) -> auto& { return c.channel.cell.v_th; }, 1.0);
    f["v_0"] = scaled([](auto& c) -> auto& { return c.channel.cell.v_0; }, 1.0);
    f["depth_mm"] = scaled([](auto& c) -> auto& { return c.channel.cell.depth; }, 1e-3);
    f["r_eff_pm_per_v"] = scaled([](auto& c) -> auto& { return c.channel.cell.r_eff; }, 1e-12);

    // Link budget and access schemes.
    f["p_w"] = scaled([](auto& c) -> auto& { return c.budget.optical_power; }, 1.0);
    f["q"] = scaled([](auto& c) -> auto& { return c.budget.conversion_q; }, 1.0);
    f["bandwidth_mhz"] = scaled([](auto& c) -> auto& { return c.budget.bandwidth; }, 1e6);
    f["noise_psd"] = scaled([](auto& c) -> auto& { return c.budget.noise_psd; }, 1.0);
    f["i_dc"] = scaled([](auto& c) -> auto& { return c.budget.dc_bias; }, 1.0);
    f["mu_noma"] = scaled([](auto& c) -> auto& { return c.noma.mu; }, 1.0);
    f["mu_rsma"] = scaled([](auto& c) -> auto& { return c.rsma.mu; }, 1.0);
    f["noma_alike_mu"] = scaled([](auto& c) -> auto& { return c.rsma.noma_alike_mu; }, 1.0);
    f["p_tol_dbm"] = {[](C& c, const json& j) { c.rsma.p_tol = dbm_to_watts(j.get<double>()); },
                      [](const C& c) { return json(watts_to_dbm(c.rsma.p_tol)); }};
    f["rsma_strategy"] = {[](C& c, const json& j) { c.rsma.strategy = parse_strategy(j.get<std::string>()); },
                          [](const C& c) { return json(std::string(to_string(c.rsma.strategy))); }};
    f["rsma_accounting"] = {[](C& c, const json& j) {
                              const auto s = j.get<std::string>();
                              if (s == "allocated_share") {
                                c.rsma.accounting = CommonRateAccounting::AllocatedShare;
                              } else if (s == "per_user_decode") {
                                c.rsma.accounting = CommonRateAccounting::PerUserDecode;
                              } else {
                                throw std::invalid_argument(
                                    "expected \"allocated_share\" or \"per_user_decode\"");
                              }
                            },
                            [](const C& c) {
                              return json(c.rsma.accounting == CommonRateAccounting::AllocatedShare
                                              ? "allocated_share"
                                              : "per_user_decode");
                            }};

    // Optimizer.
    f["agents_g"] = plain<int>([](auto& c) -> auto& { return c.sca.agents; });
    f["iterations_t"] = plain<int>([](auto& c) -> auto& { return c.sca.iterations; });
    f["a_tilde"] = scaled([](auto& c) -> auto& { return c.sca.a_tilde; }, 1.0);
    f["oracle_points"] = plain<int>([](auto& c) -> auto& { return c.oracle_points; });

    // Power model.
    f["p_t_circuit_mw"] = scaled([](auto& c) -> auto& { return c.power.t_circuit_mw; }, 1.0);
    f["p_driver_mw"] = scaled([](auto& c) -> auto& { return c.power.driver_mw; }, 1.0);
    f["p_pa_mw"] = scaled([](auto& c) -> auto& { return c.power.pa_mw; }, 1.0);
    f["p_filter_mw"] = scaled([](auto& c) -> auto& { return c.power.filter_mw; }, 1.0);
    f["p_dac_mw"] = scaled([](auto& c) -> auto& { return c.power.dac_mw; }, 1.0);
    f["p_m_mw"] = scaled([](auto& c) -> auto& { return c.power.mirror_mw; }, 1.0);
    f["p_lc_mw"] = scaled([](auto& c) -> auto& { return c.power.lc_mw; }, 1.0);
    f["p_r_circuit_mw"] = scaled([](auto& c) -> auto& { return c.power.r_circuit_mw; }, 1.0);
    f["p_tia_mw"] = scaled([](auto& c) -> auto& { return c.power.tia_mw; }, 1.0);
    f["p_adc_mw"] = scaled([](auto& c) -> auto& { return c.power.adc_mw; }, 1.0);
    f["rx_count"] = plain<int>([](auto& c) -> auto& { return c.power.rx_count; });

    // Scene.
    f["users"] = plain<int>([](auto& c) -> auto& { return c.scene.users; });
    f["room_length"] = scaled([](auto& c) -> auto& { return c.scene.rooms.length; }, 1.0);
    f["room_width"] = scaled([](auto& c) -> auto& { return c.scene.rooms.width; }, 1.0);
    f["room_height"] = scaled([](auto& c) -> auto& { return c.scene.rooms.height; }, 1.0);
    f["ap_position"] = {[](C& c, const json& j) {
                          const auto v = j.get<std::vector<double>>();
                          if (v.size() != 3) throw std::invalid_argument("expected [x, y, z]");
                          c.scene.ap = {v[0], v[1], v[2]};
                        },
                        [](const C& c) {
                          return json::array({c.scene.ap.x, c.scene.ap.y, c.scene.ap.z});
                        }};
    f["panel_rows"] = plain<int>([](auto& c) -> auto& { return c.scene.panel_rows; });
    f["panel_cols"] = plain<int>([](auto& c) -> auto& { return c.scene.panel_cols; });
    f["element_side_m"] = scaled([](auto& c) -> auto& { return c.scene.element_side; }, 1.0);
    f["panel_center_z"] = scaled([](auto& c) -> auto& { return c.scene.panel_center_z; }, 1.0);
    f["los_indicator"] = plain<int>([](auto& c) -> auto& { return c.scene.los_indicator; });
    f["los_blockage_test"] = plain<bool>([](auto& c) -> auto& { return c.scene.los_blockage_test; });
    f["blockers_per_room"] = plain<int>([](auto& c) -> auto& { return c.scene.blockers_per_room; });
    f["body_height"] = scaled([](auto& c) -> auto& { return c.scene.body.height; }, 1.0);
    f["body_diameter"] = scaled([](auto& c) -> auto& { return c.scene.body.diameter; }, 1.0);
    f["receiver_offset"] = scaled([](auto& c) -> auto& { return c.scene.body.receiver_offset; }, 1.0);
    f["receiver_height"] = scaled([](auto& c) -> auto& { return c.scene.body.receiver_height; }, 1.0);
    f["blocker_height"] = scaled([](auto& c) -> auto& { return c.scene.blocker_shape.height; }, 1.0);
    f["blocker_diameter"] = scaled([](auto& c) -> auto& { return c.scene.blocker_shape.diameter; }, 1.0);
    f["polar_law"] = {[](C& c, const json& j) { c.scene.orientation.polar = parse_law(j); },
                      [](const C& c) { return law_to_json(c.scene.orientation.polar); }};
    f["azimuth_law"] = {[](C& c, const json& j) { c.scene.orientation.azimuth = parse_law(j); },
                        [](const C& c) { return law_to_json(c.scene.orientation.azimuth); }};

    // Sweeps.
    f["power_sweep_w"] = plain<std::vector<double>>([](auto& c) -> auto& { return c.power_sweep_w; });
    f["wavelengths_nm"] = plain<std::vector<double>>([](auto& c) -> auto& { return c.wavelengths_nm; });
    f["user_counts"] = plain<std::vector<int>>([](auto& c) -> auto& { return c.user_counts; });
    f["element_counts"] = plain<std::vector<int>>([](auto& c) -> auto& { return c.element_counts; });
    f["element_sweep_rows"] = plain<int>([](auto& c) -> auto& { return c.element_sweep_rows; });
    f["strategies"] = {[](C& c, const json& j) {
                         c.strategies.clear();
                         for (const auto& s : j.get<std::vector<std::string>>()) {
                           c.strategies.push_back(parse_strategy(s));
                         }
                       },
                       [](const C& c) {
                         json a = json::array();
                         for (auto s : c.strategies) a.push_back(std::string(to_string(s)));
                         return a;
                       }};
    return f;
  }();
  return table;
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config key '" + key + "': " + why);
}

void require(bool ok, const char* key, const char* why) {
  if (!ok) fail(key, why);
}

}  // namespace

std::string_view to_string(ScenarioId id) {
  for (const auto& s : kScenarios) {
    if (s.id == id) return s.name;
  }
  return "unknown";
}

ScenarioId parse_scenario(std::string_view name) {
  for (const auto& s : kScenarios) {
    if (s.name == name) return s.id;
  }
  std::string msg = "unknown scenario '" + std::string(name) + "'; expected one of:";
  for (const auto& s : kScenarios) msg += " " + std::string(s.name);
  throw std::invalid_argument(msg);
}

std::string_view to_string(RsmaStrategy s) {
  switch (s) {
    case RsmaStrategy::Equal: return "equal";
    case RsmaStrategy::NomaAlike: return "noma_alike";
    case RsmaStrategy::Random: return "random";
  }
  return "unknown";
}

RsmaStrategy parse_strategy(std::string_view name) {
  if (name == "equal") return RsmaStrategy::Equal;
  if (name == "noma_alike") return RsmaStrategy::NomaAlike;
  if (name == "random") return RsmaStrategy::Random;
  throw std::invalid_argument("unknown RSMA strategy '" + std::string(name) +
                              "'; expected equal, noma_alike or random");
}

void ExperimentConfig::validate() const {
  require(trials >= 1, "trials", "must be >= 1");
  require(threads >= 0, "threads", "must be >= 0");
  require(noma.mu > 0.5 && noma.mu <= 1.0, "mu_noma", "must lie in (0.5, 1]");
  require(rsma.mu > 0.0 && rsma.mu < 1.0, "mu_rsma", "must lie in (0, 1)");
  require(rsma.noma_alike_mu > 0.5 && rsma.noma_alike_mu <= 1.0, "noma_alike_mu", "must lie in (0.5, 1]");
  require(rsma.p_tol >= 0.0, "p_tol_dbm", "must be finite");
  require(channel.led.phi_half > 0.0 && channel.led.phi_half < std::numbers::pi / 2, "phi_half_deg",
          "must lie in (0, 90)");
  require(channel.pd.fov > 0.0 && channel.pd.fov <= std::numbers::pi / 2, "fov_deg", "must lie in (0, 90]");
  require(channel.pd.area > 0.0, "a_pd_cm2", "must be positive");
  require(channel.pd.responsivity > 0.0, "r_pd", "must be positive");
  require(channel.pd.concentrator_f > 0.0, "concentrator_f", "must be positive");
  require(channel.pd.filter_gain >= 0.0, "t_filter", "must be nonnegative");
  require(channel.rho_ris >= 0.0 && channel.rho_ris <= 1.0, "rho_ris", "must lie in [0, 1]");
  require(rho_wall >= 0.0 && rho_wall <= 1.0, "rho_wall", "must lie in [0, 1]");
  require(channel.wavelength > 0.0, "wavelength_nm", "must be positive");
  require(budget.bandwidth > 0.0, "bandwidth_mhz", "must be positive");
  require(budget.noise_psd > 0.0, "noise_psd", "must be positive");
  require(budget.optical_power > 0.0, "p_w", "must be positive");
  require(budget.conversion_q > 0.0, "q", "must be positive");
  require(sca.agents >= 1, "agents_g", "must be >= 1");
  require(sca.iterations >= 0, "iterations_t", "must be >= 0");
  require(sca.a_tilde > 0.0, "a_tilde", "must be positive");
  require(oracle_points >= 2, "oracle_points", "must be >= 2");
  require(power.rx_count >= 0, "rx_count", "must be >= 0");
  require(scene.users >= 1, "users", "must be >= 1");
  require(scene.los_indicator == 0 || scene.los_indicator == 1, "los_indicator", "must be 0 or 1");
  require(scene.blockers_per_room >= 0, "blockers_per_room", "must be >= 0");
  require(scene.panel_rows >= 1, "panel_rows", "must be >= 1");
  require(scene.panel_cols >= 1, "panel_cols", "must be >= 1");
  require(scene.element_side > 0.0, "element_side_m", "must be positive");
  require(!power_sweep_w.empty(), "power_sweep_w", "must be nonempty");
  for (double p : power_sweep_w) require(p > 0.0, "power_sweep_w", "entries must be positive");
  require(!wavelengths_nm.empty(), "wavelengths_nm", "must be nonempty");
  for (double w : wavelengths_nm) require(w > 0.0, "wavelengths_nm", "entries must be positive");
  require(!user_counts.empty(), "user_counts", "must be nonempty");
  for (int u : user_counts) require(u >= 1, "user_counts", "entries must be >= 1");
  require(element_sweep_rows >= 1, "element_sweep_rows", "must be >= 1");
  require(!element_counts.empty(), "element_counts", "must be nonempty");
  for (int n : element_counts) {
    require(n >= 1 && n % element_sweep_rows == 0, "element_counts",
            "entries must be positive multiples of element_sweep_rows");
  }
  require(!strategies.empty(), "strategies", "must be nonempty");

  const auto check = [](const char* key, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  };
  check("eta_o", [&] { channel.cell.validate(); });
  check("p_t_circuit_mw", [&] { power.validate(); });
  check("polar_law", [&] { scene.orientation.polar.validate(); });
  check("azimuth_law", [&] { scene.orientation.azimuth.validate(); });
  check("panel_cols", [&] { build_panel(scene.panel_rows, scene.panel_cols, scene.element_side, scene.wall()); });
  require(scene.rooms.contains(scene.ap, RoomId::One), "ap_position", "must lie inside Room 1");
}

ExperimentConfig config_from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("malformed config: top level must be an object");

  ExperimentConfig cfg;
  const auto& table = fields();
  for (const auto& [key, value] : j.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    try {
      it->second.set(cfg, value);
    } catch (const json::exception& e) {
      fail(key, e.what());
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg, int indent) {
  json j = json::object();
  for (const auto& [key, field] : fields()) j[key] = field.get(cfg);
  return j.dump(indent);
}

}  // namespace ostar
