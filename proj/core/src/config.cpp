#include "multifluid/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "multifluid/adiabat.hpp"
#include "multifluid/error.hpp"

namespace multifluid {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"mixture",
       {"molar_masses", "gammas", "degrees_of_freedom", "pure_viscosities", "gas_constant",
        "reference_densities", "reference_temperature", "reference_volume"}},
      {"pressure", {"law", "K", "K1", "gamma_mode", "gamma"}},
      {"alpha", {"mode", "constants"}},
      {"viscosity", {"rule", "shear", "lambda", "empiric_alpha", "empiric_beta"}},
      {"grid", {"cells", "length"}},
      {"time", {"t_end", "cfl", "snapshot_interval", "dt", "max_steps"}},
      {"initial",
       {"profile", "rho", "rho_amplitude", "u", "u_amplitude", "wavenumber", "center", "width"}},
      {"forces", {"waveform", "amplitude", "wavenumber"}},
      {"output", {"directory"}},
      {"adiabat", {"v_min", "v_max", "samples"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

// Raw key/value table keyed by full path ("section.key").
class Table {
 public:
  void add(std::string key, std::string value, std::size_t line) {
    if (entries_.contains(key)) throw ConfigError(key, "duplicate key", line);
    entries_.emplace(std::move(key), Entry{std::move(value), line});
  }

  bool has(const std::string& key) const { return entries_.contains(key); }

  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::string string(const std::string& key) const { return require(key).value; }

  std::optional<std::string> maybe_string(const std::string& key) const {
    if (const Entry* e = find(key)) return e->value;
    return std::nullopt;
  }

  double number(const std::string& key) const { return parse_number(key, require(key)); }

  std::optional<double> maybe_number(const std::string& key) const {
    if (const Entry* e = find(key)) return parse_number(key, *e);
    return std::nullopt;
  }

  std::uint64_t integer(const std::string& key) const { return parse_integer(key, require(key)); }

  std::optional<std::uint64_t> maybe_integer(const std::string& key) const {
    if (const Entry* e = find(key)) return parse_integer(key, *e);
    return std::nullopt;
  }

  std::vector<double> vector(const std::string& key) const {
    const Entry& e = require(key);
    std::vector<double> out;
    std::string_view rest = e.value;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(parse_number(key, {std::string(trim(rest.substr(0, comma))), e.line}));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  std::vector<double> maybe_vector(const std::string& key) const {
    return has(key) ? vector(key) : std::vector<double>{};
  }

  Matrix matrix(const std::string& key) const {
    const Entry& e = require(key);
    std::vector<std::vector<double>> rows;
    std::string_view rest = e.value;
    while (true) {
      const auto semi = rest.find(';');
      Table row_table;
      row_table.add(key, std::string(rest.substr(0, semi)), e.line);
      rows.push_back(row_table.vector(key));
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    const auto n = rows.size();
    for (const auto& r : rows) {
      if (r.size() != n) throw ConfigError(key, "matrix must be square (rows separated by ';')", e.line);
    }
    const auto en = static_cast<Eigen::Index>(n);
    Matrix m(en, en);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    return m;
  }

  Matrix maybe_matrix(const std::string& key) const { return has(key) ? matrix(key) : Matrix{}; }

  std::size_t line(const std::string& key) const {
    const Entry* e = find(key);
    return e ? e->line : 0;
  }

 private:
  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigError(key, "required key is missing");
    return *e;
  }

  static double parse_number(const std::string& key, const Entry& e) {
    const std::string_view text = trim(e.value);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw ConfigError(key, "expected a number, got '" + std::string(text) + "'", e.line);
    }
    return value;
  }

  static std::uint64_t parse_integer(const std::string& key, const Entry& e) {
    const std::string_view text = trim(e.value);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'",
                        e.line);
    }
    return value;
  }

  std::map<std::string, Entry> entries_;
};

Table tokenize(std::string_view text, std::set<std::string>& sections) {
  Table table;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", "unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(section)) {
        throw ConfigError(section, "unknown section", line_no);
      }
      sections.insert(section);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", "expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "empty key", line_no);
    if (value.empty()) throw ConfigError(key, "empty value", line_no);

    std::string full;
    if (!section.empty()) {
      if (key.find('.') != std::string::npos) {
        throw ConfigError(key, "qualified keys are not allowed inside a section", line_no);
      }
      full = section + "." + key;
    } else if (key == "seed") {
      full = key;
    } else {
      const auto dot = key.find('.');
      if (dot == std::string::npos) throw ConfigError(key, "unknown top-level key", line_no);
      const std::string sec = key.substr(0, dot);
      if (!known_keys().contains(sec)) throw ConfigError(key, "unknown section", line_no);
      sections.insert(sec);
      full = key;
    }

    if (full != "seed") {
      const auto dot = full.find('.');
      const auto& allowed = known_keys().at(full.substr(0, dot));
      if (!allowed.contains(full.substr(dot + 1))) throw ConfigError(full, "unknown key", line_no);
    }
    table.add(full, value, line_no);
  }
  return table;
}

// Runs `fn`, rethrowing InvalidInput as ConfigError for `key`.
template <typename Fn>
auto with_key(const Table& table, const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(key, e.what(), table.line(key));
  }
}

template <typename Enum>
Enum choice(const Table& table, const std::string& key, Enum fallback,
            const std::map<std::string, Enum>& options) {
  const auto value = table.maybe_string(key);
  if (!value) return fallback;
  const auto it = options.find(*value);
  if (it == options.end()) {
    std::string allowed;
    for (const auto& [name, _] : options) allowed += (allowed.empty() ? "" : "|") + name;
    throw ConfigError(key, "expected one of " + allowed + ", got '" + *value + "'", table.line(key));
  }
  return it->second;
}

MixtureSpec parse_mixture(const Table& t) {
  auto molar = t.vector("mixture.molar_masses");
  const bool has_gammas = t.has("mixture.gammas");
  const bool has_dof = t.has("mixture.degrees_of_freedom");
  if (has_gammas == has_dof) {
    throw ConfigError("mixture.gammas", "give exactly one of gammas or degrees_of_freedom");
  }
  const auto viscosities = t.maybe_vector("mixture.pure_viscosities");
  const double r_gas = t.maybe_number("mixture.gas_constant").value_or(8.314462618);

  std::optional<ReferenceState> reference;
  const int ref_keys = static_cast<int>(t.has("mixture.reference_densities")) +
                       static_cast<int>(t.has("mixture.reference_temperature")) +
                       static_cast<int>(t.has("mixture.reference_volume"));
  if (ref_keys == 3) {
    reference = ReferenceState{t.vector("mixture.reference_densities"),
                               t.number("mixture.reference_temperature"),
                               t.number("mixture.reference_volume")};
  } else if (ref_keys != 0) {
    throw ConfigError("mixture.reference_densities",
                      "reference state needs reference_densities, reference_temperature and "
                      "reference_volume together");
  }

  const std::string key = has_gammas ? "mixture.gammas" : "mixture.degrees_of_freedom";
  return with_key(t, key, [&] {
    return has_gammas ? MixtureSpec::from_gammas(molar, t.vector(key), viscosities, r_gas, reference)
                      : MixtureSpec::from_degrees_of_freedom(molar, t.vector(key), viscosities,
                                                             r_gas, reference);
  });
}

PressureClosure parse_pressure(const Table& t, const MixtureSpec& mixture) {
  PressureClosure p;
  p.law = choice<PressureLaw>(t, "pressure.law", PressureLaw::simple,
                              {{"simple", PressureLaw::simple}, {"composite", PressureLaw::composite}});
  p.gamma_mode = choice<GammaMode>(t, "pressure.gamma_mode", GammaMode::frozen,
                                   {{"frozen", GammaMode::frozen}, {"pointwise", GammaMode::pointwise}});
  p.gamma = t.maybe_number("pressure.gamma");
  if (p.gamma && p.gamma_mode == GammaMode::pointwise) {
    throw ConfigError("pressure.gamma", "a fixed gamma conflicts with gamma_mode = pointwise",
                      t.line("pressure.gamma"));
  }

  const std::string coeff_key = p.law == PressureLaw::simple ? "pressure.K" : "pressure.K1";
  const std::string other_key = p.law == PressureLaw::simple ? "pressure.K1" : "pressure.K";
  if (t.has(other_key)) {
    throw ConfigError(other_key, "does not apply to the selected pressure law", t.line(other_key));
  }
  if (const auto k = t.maybe_number(coeff_key)) {
    p.coefficient = *k;
  } else if (mixture.reference()) {
    // Constants of the reference adiabat.
    const double v0 = mixture.reference()->volume;
    const AdiabatResult a = adiabat_process(mixture, std::span<const double>(&v0, 1));
    p.coefficient = p.law == PressureLaw::simple ? a.k_simple : a.k1_composite;
  } else {
    throw ConfigError(coeff_key, "required unless the mixture has a reference state");
  }
  if (!(p.coefficient >= 0.0)) {
    throw ConfigError(coeff_key, "must be non-negative", t.line(coeff_key));
  }
  if (p.gamma && !(*p.gamma > 1.0)) {
    throw ConfigError("pressure.gamma", "must exceed 1", t.line("pressure.gamma"));
  }
  return p;
}

AlphaSetting parse_alpha(const Table& t, std::size_t n) {
  AlphaSetting a;
  a.mode = choice<AlphaMode>(t, "alpha.mode",
                             t.has("alpha.constants") ? AlphaMode::constant : AlphaMode::concentration,
                             {{"concentration", AlphaMode::concentration}, {"constant", AlphaMode::constant}});
  if (a.mode == AlphaMode::constant) {
    a.constants = t.vector("alpha.constants");
    with_key(t, "alpha.constants", [&] {
      validate_alpha(a, n);
      return 0;
    });
  } else if (t.has("alpha.constants")) {
    throw ConfigError("alpha.constants", "only valid with mode = constant", t.line("alpha.constants"));
  }
  return a;
}

enum class ViscosityRule { none, constant, simple, exponential };

ViscositySetup parse_viscosity(const Table& t, const MixtureSpec& mixture, ViscosityRule& rule) {
  rule = choice<ViscosityRule>(t, "viscosity.rule",
                               t.has("viscosity.shear") ? ViscosityRule::constant : ViscosityRule::none,
                               {{"none", ViscosityRule::none},
                                {"constant", ViscosityRule::constant},
                                {"simple", ViscosityRule::simple},
                                {"eq14", ViscosityRule::simple},
                                {"exponential", ViscosityRule::exponential}});
  const std::size_t n = mixture.size();
  ViscositySetup setup;
  auto reject = [&](const char* key) {
    if (t.has(key)) throw ConfigError(key, "does not apply to the selected viscosity rule", t.line(key));
  };
  switch (rule) {
    case ViscosityRule::none:
      reject("viscosity.shear");
      reject("viscosity.lambda");
      reject("viscosity.empiric_alpha");
      reject("viscosity.empiric_beta");
      break;
    case ViscosityRule::constant: {
      reject("viscosity.empiric_alpha");
      reject("viscosity.empiric_beta");
      setup.kind = ViscosityKind::constant;
      setup.constant = with_key(t, "viscosity.shear", [&] {
        return make_constant_matrices(t.matrix("viscosity.shear"), t.maybe_matrix("viscosity.lambda"));
      });
      if (setup.constant->size() != n) {
        throw ConfigError("viscosity.shear", "matrix must be " + std::to_string(n) + "x" + std::to_string(n),
                          t.line("viscosity.shear"));
      }
      const PositivityVerdict verdict = bulk_constraint_check(*setup.constant);
      if (!verdict.pass()) {
        throw ConfigError(t.has("viscosity.lambda") && verdict.shear_positive_definite
                              ? "viscosity.lambda"
                              : "viscosity.shear",
                          verdict.describe(), t.line("viscosity.shear"));
      }
      break;
    }
    case ViscosityRule::simple:
    case ViscosityRule::exponential: {
      reject("viscosity.shear");
      if (rule == ViscosityRule::simple) {
        reject("viscosity.empiric_alpha");
        reject("viscosity.empiric_beta");
      }
      if (!t.has("mixture.pure_viscosities")) {
        throw ConfigError("mixture.pure_viscosities", "required by concentration-dependent viscosity");
      }
      ViscosityModel model;
      const auto mu = mixture.pure_viscosities();
      model.pure_viscosities.assign(mu.begin(), mu.end());
      model.rule = rule == ViscosityRule::simple ? OffDiagonalRule::simple : OffDiagonalRule::exponential;
      model.empiric_alpha = t.maybe_matrix("viscosity.empiric_alpha");
      model.empiric_beta = t.maybe_matrix("viscosity.empiric_beta");
      model.second = t.maybe_matrix("viscosity.lambda");
      with_key(t, "viscosity.rule", [&] {
        model.validate();
        return 0;
      });
      setup.kind = ViscosityKind::concentration;
      setup.model = std::move(model);
      break;
    }
  }
  return setup;
}

ForceSpec parse_forces(const Table& t, std::size_t n) {
  ForceSpec f;
  f.waveform = choice<ForceWaveform>(t, "forces.waveform", ForceWaveform::zero,
                                     {{"zero", ForceWaveform::zero},
                                      {"constant", ForceWaveform::constant},
                                      {"sinusoid", ForceWaveform::sinusoid}});
  if (f.waveform == ForceWaveform::zero) return f;
  f.amplitude = t.vector("forces.amplitude");
  if (f.amplitude.size() != n) {
    throw ConfigError("forces.amplitude", "expected " + std::to_string(n) + " values",
                      t.line("forces.amplitude"));
  }
  f.wavenumber = static_cast<int>(t.maybe_integer("forces.wavenumber").value_or(1));
  if (f.waveform == ForceWaveform::sinusoid && f.wavenumber < 1) {
    throw ConfigError("forces.wavenumber", "must be at least 1", t.line("forces.wavenumber"));
  }
  return f;
}

InitialProfile parse_initial(const Table& t, std::size_t n, std::uint64_t seed) {
  InitialProfile p;
  p.kind = choice<ProfileKind>(t, "initial.profile", ProfileKind::uniform,
                               {{"uniform", ProfileKind::uniform},
                                {"sine", ProfileKind::sine},
                                {"gaussian", ProfileKind::gaussian},
                                {"random", ProfileKind::random}});
  p.rho = t.vector("initial.rho");
  p.rho_amplitude = t.maybe_vector("initial.rho_amplitude");
  p.u = t.maybe_vector("initial.u");
  p.u_amplitude = t.maybe_vector("initial.u_amplitude");
  for (const char* key : {"initial.rho", "initial.rho_amplitude", "initial.u", "initial.u_amplitude"}) {
    if (t.has(key) && t.vector(key).size() != n) {
      throw ConfigError(key, "expected " + std::to_string(n) + " values", t.line(key));
    }
  }
  p.wavenumber = static_cast<int>(t.maybe_integer("initial.wavenumber").value_or(1));
  if (p.wavenumber < 1) throw ConfigError("initial.wavenumber", "must be at least 1", t.line("initial.wavenumber"));
  p.center = t.maybe_number("initial.center").value_or(p.center);
  p.width = t.maybe_number("initial.width").value_or(p.width);
  if (!(p.width > 0.0)) throw ConfigError("initial.width", "must be positive", t.line("initial.width"));
  p.seed = seed;
  return p;
}

RunOptions parse_time(const Table& t) {
  RunOptions o;
  o.t_end = t.number("time.t_end");
  if (!(o.t_end >= 0.0)) throw ConfigError("time.t_end", "must be non-negative", t.line("time.t_end"));
  o.cfl = t.maybe_number("time.cfl").value_or(o.cfl);
  if (!(o.cfl > 0.0 && o.cfl <= 1.0)) throw ConfigError("time.cfl", "must lie in (0, 1]", t.line("time.cfl"));
  o.snapshot_interval = t.maybe_number("time.snapshot_interval").value_or(0.0);
  if (o.snapshot_interval < 0.0) {
    throw ConfigError("time.snapshot_interval", "must be non-negative", t.line("time.snapshot_interval"));
  }
  o.fixed_dt = t.maybe_number("time.dt");
  if (o.fixed_dt && !(*o.fixed_dt > 0.0)) throw ConfigError("time.dt", "must be positive", t.line("time.dt"));
  if (const auto m = t.maybe_integer("time.max_steps")) {
    if (*m == 0) throw ConfigError("time.max_steps", "must be positive", t.line("time.max_steps"));
    o.max_steps = *m;
  }
  return o;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::set<std::string> sections;
  const Table t = tokenize(text, sections);
  if (!sections.contains("mixture")) throw ConfigError("mixture", "section is required");

  MixtureSpec mixture = parse_mixture(t);
  const std::size_t n = mixture.size();
  PressureClosure pressure = parse_pressure(t, mixture);
  AlphaSetting alpha = parse_alpha(t, n);
  ViscosityRule rule = ViscosityRule::none;
  ViscositySetup viscosity = parse_viscosity(t, mixture, rule);
  ForceSpec forces = parse_forces(t, n);

  RunConfig cfg{SolverConfig{std::move(mixture), pressure, std::move(alpha), std::move(viscosity),
                             std::move(forces)},
                std::nullopt,
                RunOptions{},
                std::nullopt,
                {},
                0,
                std::nullopt,
                sections};
  cfg.seed = t.maybe_integer("seed").value_or(0);

  if (sections.contains("grid")) {
    cfg.grid = with_key(t, "grid.cells", [&] {
      return Grid1D(static_cast<std::size_t>(t.integer("grid.cells")), t.number("grid.length"));
    });
  }
  if (sections.contains("time")) cfg.time = parse_time(t);
  if (sections.contains("initial")) cfg.initial = parse_initial(t, n, cfg.seed);
  cfg.output_directory = t.maybe_string("output.directory").value_or("");
  if (sections.contains("adiabat")) {
    AdiabatSetup a{t.number("adiabat.v_min"), t.number("adiabat.v_max"),
                   static_cast<std::size_t>(t.integer("adiabat.samples"))};
    with_key(t, "adiabat.v_min", [&] { return uniform_volume_grid(a.v_min, a.v_max, a.samples); });
    cfg.adiabat = a;
  }

  // Solver-level validation, including the initial state when it is known.
  Solver1D solver = with_key(t, "viscosity.rule", [&] {
    return Solver1D(cfg.solver, cfg.grid.value_or(Grid1D(Grid1D::kMinCells, 1.0)));
  });
  if (cfg.grid && cfg.initial) {
    const FieldState fields = with_key(t, "initial.rho", [&] { return solver.build_initial_fields(*cfg.initial); });
    if (cfg.solver.viscosity.kind == ViscosityKind::concentration) {
      for (std::size_t c = 0; c < fields.n_cells(); ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += fields.rho(i, c);
        for (std::size_t i = 0; i < n; ++i) {
          if (!(fields.rho(i, c) >= ViscositySetup::kMinConcentration * total)) {
            throw ConfigError("viscosity.rule",
                              "concentration-dependent viscosity needs every initial concentration >= 1e-8 "
                              "(constituent " + std::to_string(i + 1) + " in cell " + std::to_string(c) +
                                  "); use constant viscosity matrices",
                              t.line("viscosity.rule"));
          }
        }
      }
    }
    with_key(t, "initial.rho", [&] {
      solver.adopt_state(fields);
      return 0;
    });
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void require_simulation(const RunConfig& config) {
  if (!config.grid) throw ConfigError("grid", "section is required for simulate");
  if (!config.sections.contains("time")) throw ConfigError("time", "section is required for simulate");
  if (!config.initial) throw ConfigError("initial", "section is required for simulate");
}

void require_adiabat(const RunConfig& config) {
  if (!config.adiabat) throw ConfigError("adiabat", "section is required for the adiabat command");
  if (!config.solver.mixture.reference()) {
    throw ConfigError("mixture.reference_densities", "reference state is required for the adiabat command");
  }
}

}  // namespace multifluid
