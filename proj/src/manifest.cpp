#include "tmflow/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tmflow {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& msg) {
  std::ostringstream os;
  os << "manifest error at line " << line;
  if (!key.empty()) os << " (key '" << key << "')";
  os << ": " << msg;
  throw ManifestError(os.str());
}

double parse_double(int line, const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, key, "not a number: " + v);
    return d;
  } catch (const ManifestError&) {
    throw;
  } catch (...) {
    fail(line, key, "not a number: " + v);
  }
}

int parse_int(int line, const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) fail(line, key, "not an integer: " + v);
    return i;
  } catch (const ManifestError&) {
    throw;
  } catch (...) {
    fail(line, key, "not an integer: " + v);
  }
}

bool parse_onoff(int line, const std::string& key, const std::string& v) {
  if (v == "on") return true;
  if (v == "off") return false;
  fail(line, key, "expected on|off, got " + v);
}

}  // namespace

RunManifest parse_manifest(const std::string& text) {
  RunManifest m;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool tend_set = false, scheme_set = false, elements_set = false;
  bool every_set = false, vtk_set = false, profiles_set = false;
  bool rel_tol_set = false, max_iter_set = false, reproducible_set = false;
  bool dir_set = false, dim_set = false;

  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    const size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "", "malformed section header: " + s);
      section = s.substr(1, s.size() - 2);
      if (section != "run" && section != "physics" && section != "problem" &&
          section != "output" && section != "solver")
        fail(line, "", "unknown section [" + section + "]");
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "", "expected key = value: " + s);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (section.empty()) fail(line, key, "key outside any [section]");
    if (val.empty()) fail(line, key, "empty value");

    if (section == "run") {
      if (key == "scheme") {
        if (val != "spc1" && val != "rpc1" && val != "rpc2")
          fail(line, key, "expected spc1|rpc1|rpc2");
        m.scheme = val;
        scheme_set = true;
      } else if (key == "dim") {
        m.dim = parse_int(line, key, val);
        if (m.dim != 2 && m.dim != 3) fail(line, key, "dim must be 2 or 3");
        dim_set = true;
      } else if (key == "elements") {
        if (val != "p1b-p1" && val != "p2-p1") fail(line, key, "expected p1b-p1|p2-p1");
        m.elements = val;
        elements_set = true;
      } else if (key == "tend") {
        m.tend = parse_double(line, key, val);
        if (m.tend <= 0.0) fail(line, key, "tend must be positive");
        tend_set = true;
      } else if (key == "tau") {
        m.tau = parse_double(line, key, val);
        if (m.tau <= 0.0) fail(line, key, "tau must be positive");
      } else if (key == "tau_law") {
        if (val != "h" && val != "h2") fail(line, key, "expected h|h2");
        m.tau_law = val;
      } else if (key == "n") {
        std::stringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const int n = parse_int(line, key, trim(item));
          if (n < 1) fail(line, key, "n must be >= 1");
          m.n.push_back(n);
        }
      } else if (key == "h") {
        m.h = parse_double(line, key, val);
        if (m.h <= 0.0) fail(line, key, "h must be positive");
      } else {
        fail(line, key, "unknown key in [run]");
      }
    } else if (section == "physics") {
      double* target = nullptr;
      if (key == "nu") target = &m.physics.nu;
      else if (key == "nu_r") target = &m.physics.nu_r;
      else if (key == "e_hat") target = &m.physics.e_hat;
      else if (key == "alpha") target = &m.physics.alpha;
      else if (key == "beta") target = &m.physics.beta;
      else if (key == "kappa") target = &m.physics.kappa;
      else if (key == "D") target = &m.physics.D;
      else fail(line, key, "unknown key in [physics]");
      *target = parse_double(line, key, val);
      if (*target <= 0.0) fail(line, key, "physical constants must be positive");
      m.physics_set = true;
      if (key == "e_hat") m.rayleigh_override = *target;
    } else if (section == "problem") {
      if (key == "preset") {
        m.preset = val;
      } else if (key == "manufactured") {
        if (val != "ms2d" && val != "ms3d") fail(line, key, "expected ms2d|ms3d");
        m.manufactured = val;
      } else {
        fail(line, key, "unknown key in [problem]");
      }
    } else if (section == "output") {
      if (key == "dir") {
        m.out_dir = val;
        dir_set = true;
      } else if (key == "every") {
        m.every = parse_int(line, key, val);
        if (m.every < 0) fail(line, key, "every must be >= 0");
        every_set = true;
      } else if (key == "vtk") {
        m.vtk = parse_onoff(line, key, val);
        vtk_set = true;
      } else if (key == "profiles") {
        m.profiles = parse_onoff(line, key, val);
        profiles_set = true;
      } else {
        fail(line, key, "unknown key in [output]");
      }
    } else if (section == "solver") {
      if (key == "rel_tol") {
        m.rel_tol = parse_double(line, key, val);
        if (m.rel_tol <= 0.0) fail(line, key, "rel_tol must be positive");
        rel_tol_set = true;
      } else if (key == "max_iter") {
        m.max_iter = parse_int(line, key, val);
        if (m.max_iter < 0) fail(line, key, "max_iter must be >= 0");
        max_iter_set = true;
      } else if (key == "reproducible") {
        m.reproducible = parse_onoff(line, key, val);
        reproducible_set = true;
      } else {
        fail(line, key, "unknown key in [solver]");
      }
    }
  }

  if (m.preset.empty() && m.manufactured.empty())
    throw ManifestError("manifest needs [problem] preset or manufactured");
  if (!m.preset.empty() && !m.manufactured.empty())
    throw ManifestError("preset and manufactured are mutually exclusive");
  if (!m.manufactured.empty()) {
    if (m.n.empty() && m.h <= 0.0)
      throw ManifestError("manufactured runs need n or h in [run]");
    if (m.tau <= 0.0 && m.tau_law.empty())
      throw ManifestError("manufactured runs need tau or tau_law in [run]");
    if (m.manufactured == "ms3d" && dim_set && m.dim != 3)
      throw ManifestError("manufactured ms3d needs dim = 3");
    if (m.manufactured == "ms3d") m.dim = 3;
    if (m.manufactured == "ms2d" && dim_set && m.dim != 2)
      throw ManifestError("manufactured ms2d needs dim = 2");
  }
  if (m.tau > 0.0 && !m.tau_law.empty())
    throw ManifestError("tau and tau_law are mutually exclusive");
  if (!m.n.empty() && m.h > 0.0)
    throw ManifestError("n and h are mutually exclusive");
  if (m.h > 0.0) m.n.push_back(static_cast<int>(std::lround(1.0 / m.h)));

  auto note = [&](const std::string& s) { m.applied_defaults.push_back(s); };
  if (!scheme_set) note("scheme = rpc1");
  if (!elements_set) {
    m.elements = m.preset.empty() ? "p1b-p1" : "p2-p1";
    note("elements = " + m.elements);
  }
  if (!tend_set) note("tend from problem default");
  if (!every_set) note("every = 0 (final state only)");
  if (!vtk_set) note("vtk = on");
  if (!profiles_set) note("profiles = on");
  if (!dir_set) note("dir = out");
  if (!rel_tol_set) note("rel_tol = 1e-10");
  if (!max_iter_set) note("max_iter = 10 * n_dofs");
  if (!reproducible_set) note("reproducible = on");
  return m;
}

RunManifest load_manifest_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ManifestError("cannot open manifest file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_manifest(ss.str());
}

std::string RunManifest::serialize() const {
  std::ostringstream os;
  char buf[128];
  os << "[run]\n";
  os << "scheme = " << scheme << "\n";
  os << "dim = " << dim << "\n";
  if (!elements.empty()) os << "elements = " << elements << "\n";
  if (tend > 0.0) {
    std::snprintf(buf, sizeof(buf), "tend = %.17g\n", tend);
    os << buf;
  }
  if (tau > 0.0) {
    std::snprintf(buf, sizeof(buf), "tau = %.17g\n", tau);
    os << buf;
  }
  if (!tau_law.empty()) os << "tau_law = " << tau_law << "\n";
  if (!n.empty()) {
    os << "n = ";
    for (size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
    os << "\n";
  }
  os << "[physics]\n";
  std::snprintf(buf, sizeof(buf), "nu = %.17g\nnu_r = %.17g\ne_hat = %.17g\n",
                physics.nu, physics.nu_r, physics.e_hat);
  os << buf;
  std::snprintf(buf, sizeof(buf), "alpha = %.17g\nbeta = %.17g\nkappa = %.17g\nD = %.17g\n",
                physics.alpha, physics.beta, physics.kappa, physics.D);
  os << buf;
  os << "[problem]\n";
  if (!preset.empty()) os << "preset = " << preset << "\n";
  if (!manufactured.empty()) os << "manufactured = " << manufactured << "\n";
  os << "[output]\n";
  os << "dir = " << out_dir << "\n";
  os << "every = " << every << "\n";
  os << "vtk = " << (vtk ? "on" : "off") << "\n";
  os << "profiles = " << (profiles ? "on" : "off") << "\n";
  os << "[solver]\n";
  std::snprintf(buf, sizeof(buf), "rel_tol = %.17g\n", rel_tol);
  os << buf;
  os << "max_iter = " << max_iter << "\n";
  os << "reproducible = " << (reproducible ? "on" : "off") << "\n";
  return os.str();
}

}  // namespace tmflow
