#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tmflow/manifest.hpp"
#include "tmflow/run.hpp"
#include "tmflow/vtk.hpp"

using namespace tmflow;

TEST_CASE("minimal manifest fills defaults") {
  RunManifest m = parse_manifest("[problem]\npreset = cavity2d\n");
  CHECK(m.scheme == "rpc1");
  CHECK(m.elements == "p2-p1");
  CHECK(!m.applied_defaults.empty());
  RunSetup s = setup_from_manifest(m);
  CHECK(s.config.tau == doctest::Approx(1.0 / 900));
  CHECK(s.config.t_end == doctest::Approx(1.0));
}

TEST_CASE("manifest rejects bad input") {
  CHECK_THROWS_WITH_AS(parse_manifest("[run]\ntau = -0.1\n[problem]\npreset = cavity2d\n"),
                       doctest::Contains("tau must be positive"), ManifestError);
  CHECK_THROWS_WITH_AS(parse_manifest("[run]\nbogus = 3\n[problem]\npreset = cavity2d\n"),
                       doctest::Contains("bogus"), ManifestError);
  CHECK_THROWS_WITH_AS(parse_manifest("[run]\nscheme = euler\n[problem]\npreset = cavity2d\n"),
                       doctest::Contains("spc1|rpc1|rpc2"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("scheme = rpc1\n"), ManifestError);  // no section
  CHECK_THROWS_AS(parse_manifest("[problem]\npreset = cavity2d\nmanufactured = ms2d\n"),
                  ManifestError);
  CHECK_THROWS_AS(parse_manifest("[problem]\nmanufactured = ms2d\n"), ManifestError);
  // line numbers surface in the message
  try {
    parse_manifest("[run]\n\nnope = 1\n[problem]\npreset = cavity2d\n");
    CHECK(false);
  } catch (const ManifestError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("manifest round trip is stable") {
  const std::string text =
      "[run]\nscheme = rpc2\ndim = 2\nelements = p1b-p1\ntend = 0.1\n"
      "tau_law = h\nn = 10,20\n[physics]\nnu = 0.5\n"
      "[problem]\nmanufactured = ms2d\n[output]\ndir = sandbox\nevery = 5\n"
      "vtk = off\nprofiles = off\n[solver]\nrel_tol = 1e-9\nmax_iter = 500\n"
      "reproducible = on\n";
  RunManifest a = parse_manifest(text);
  RunManifest b = parse_manifest(a.serialize());
  CHECK(b.serialize() == a.serialize());
  CHECK(b.scheme == "rpc2");
  CHECK(b.n == std::vector<int>{10, 20});
  CHECK(b.rel_tol == 1e-9);
  CHECK(b.physics.nu == 0.5);
  CHECK(!b.vtk);
}

namespace {

// minimal reader for the legacy format written by write_vtk
struct VtkData {
  int n_points = 0, n_cells = 0;
  std::vector<std::array<double, 3>> points;
};

VtkData read_vtk(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  VtkData d;
  std::string tok;
  while (is >> tok) {
    if (tok == "POINTS") {
      is >> d.n_points >> tok;
      d.points.resize(d.n_points);
      for (auto& p : d.points) is >> p[0] >> p[1] >> p[2];
    } else if (tok == "CELLS") {
      int total;
      is >> d.n_cells >> total;
      break;
    }
  }
  return d;
}

}  // namespace

TEST_CASE("vtk writer round trip") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {1, 1, 1}, 2);
  FunctionSpace vel(m, Family::P1Bubble, 2);
  FunctionSpace prs(m, Family::P1, 1);
  FunctionSpace ang(m, Family::P1, 1);
  FunctionSpace tmp(m, Family::P1, 1);
  Field u(vel), p(prs), w(ang), T(tmp);
  const auto path =
      (std::filesystem::temp_directory_path() / "tmflow_test_fields.vtk").string();
  write_vtk(path, u, p, w, T);

  VtkData d = read_vtk(path);
  CHECK(d.n_points == m.n_vertices());
  CHECK(d.n_cells == m.n_cells());
  for (int v = 0; v < m.n_vertices(); ++v)
    for (int a = 0; a < 3; ++a) CHECK(d.points[v][a] == m.vertices[v][a]);

  // all data arrays are zero for the zero state
  std::ifstream is(path);
  std::string line;
  bool in_data = false;
  int zero_values = 0;
  while (std::getline(is, line)) {
    if (line.rfind("POINT_DATA", 0) == 0) {
      in_data = true;
      continue;
    }
    if (!in_data || line.empty()) continue;
    if (!std::isdigit(line[0]) && line[0] != '-' && line[0] != '+') continue;
    std::istringstream ls(line);
    double v;
    while (ls >> v) {
      CHECK(v == 0.0);
      ++zero_values;
    }
  }
  CHECK(zero_values == m.n_vertices() * (3 + 1 + 1 + 1));
  std::filesystem::remove(path);
}
