// Command line front end. Every subcommand is a thin wrapper over the library
// with line-oriented output: `key = value` pairs in text mode, one JSON object
// per line with --json-lines. Output is byte-identical for identical
// arguments and seed.
#pragma once

#include "dwtv/builders.hpp"
#include "dwtv/cochain.hpp"
#include "dwtv/coloring.hpp"
#include "dwtv/homcount.hpp"
#include "dwtv/moves.hpp"
#include "dwtv/prism.hpp"
#include "dwtv/rng.hpp"
#include "dwtv/statesum.hpp"
#include "dwtv/surface.hpp"
#include "dwtv/tqft.hpp"
#include "dwtv/triangulation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dwtv {

// Bad spec strings and malformed requests: reported with the accepted
// grammar and exit code 2, as opposed to well-formed requests whose checks
// fail (exit code 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kComplexSpecs =
    "sphere3 | torus3 | sigma_cross_s1:<g> | cylinder:<surface> | <path to a dwtv-tri or "
    "dwtv-simp file>";
inline constexpr const char* kSurfaceSpecs = "torus | sphere | sigma:<g> | refined-torus";
inline constexpr const char* kGroupSpecs =
    "cyclic:<n> | symmetric:<n> | product:<spec>x<spec> | table:<path>";
inline constexpr const char* kCocycleSpecs = "trivial | zn | sn | file:<path>";

namespace cli_detail {

struct Emitter {
  std::ostream& out;
  const bool* json;

  void kv(const std::string& key, const std::string& value) {
    if (*json) {
      nlohmann::json j;
      j[key] = value;
      out << j.dump() << "\n";
    } else {
      out << key << " = " << value << "\n";
    }
  }
  void kv_num(const std::string& key, long long value) {
    if (*json) {
      nlohmann::json j;
      j[key] = value;
      out << j.dump() << "\n";
    } else {
      out << key << " = " << value << "\n";
    }
  }
  void line(const std::string& s) {
    if (*json) {
      nlohmann::json j;
      j["line"] = s;
      out << j.dump() << "\n";
    } else {
      out << s << "\n";
    }
  }
  void note(const std::string& s) {
    if (*json) {
      nlohmann::json j;
      j["note"] = s;
      out << j.dump() << "\n";
    } else {
      out << "# " << s << "\n";
    }
  }
};

inline std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s = buf;
  if (s.find_first_of(".ein") == std::string::npos) s += ".0";
  return s;
}

inline std::string fmt_complex(const std::complex<double>& z) {
  if (std::abs(z.imag()) < 5e-7) return fmt_double(z.real());
  std::string s = fmt_double(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += fmt_double(std::abs(z.imag()));
  s += "i";
  return s;
}

inline GroupPtr parse_group(const std::string& spec) {
  try {
    return parse_group_spec_shared(spec);
  } catch (const std::exception& e) {
    throw UsageError(std::string(e.what()) + " (expected " + kGroupSpecs + ")");
  }
}

inline Cochain3 parse_cocycle(const std::string& spec, const GroupPtr& g) {
  if (spec == "trivial") return trivial_cocycle(g);
  if (spec == "zn") {
    Cochain3 a = zn_cocycle(g->order());
    if (!a.group->same_table(*g))
      throw UsageError("cocycle zn needs --group cyclic:" + std::to_string(g->order()));
    return a;
  }
  if (spec == "sn") {
    int n = -1;
    for (int k = 2, fact = 2; k <= 5; ++k, fact *= k)
      if (fact == g->order()) n = k;
    Cochain3 a = n > 0 ? sn_cocycle(n) : Cochain3(g, 1);
    if (n < 0 || !a.group->same_table(*g))
      throw UsageError("cocycle sn needs --group symmetric:<n> with 2 <= n <= 5");
    return a;
  }
  std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  std::ifstream probe(path);
  if (!probe)
    throw UsageError("unknown cocycle spec: " + spec + " (expected " + kCocycleSpecs + ")");
  Cochain3 a = load_cocycle_file(path);
  if (!a.group->same_table(*g))
    throw UsageError("cocycle file " + path + " carries a different group than --group");
  return a;
}

inline SurfaceTriangulation parse_surface(const std::string& spec) {
  if (spec == "torus") return torus_surface();
  if (spec == "sphere") return sphere_surface();
  if (spec == "refined-torus") return refine_triangle(torus_surface(), 0);
  if (spec.rfind("sigma:", 0) == 0) {
    int g = 0;
    try {
      g = std::stoi(spec.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad genus in surface spec: " + spec);
    }
    if (g < 1 || g > 6) throw UsageError("surface genus must be between 1 and 6");
    return sigma_surface(g);
  }
  throw UsageError("unknown surface spec: " + spec + " (expected " + kSurfaceSpecs + ")");
}

struct ComplexSource {
  Triangulation tri;
  std::optional<Cobordism> cob;  // present when the spec builds marked ends
};

inline Triangulation load_complex_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw UsageError("unknown complex spec or unreadable file: " + path + " (expected " +
                     kComplexSpecs + ")");
  std::string all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  std::string kw, name;
  {
    std::istringstream probe(all);
    std::string pline;
    while (std::getline(probe, pline)) {
      auto hash = pline.find('#');
      if (hash != std::string::npos) pline = pline.substr(0, hash);
      std::istringstream ls(pline);
      if (ls >> kw >> name) break;
      kw.clear();
    }
  }
  std::istringstream body(all);
  if (kw == "format" && name == "dwtv-simp") return from_simplicial(body);
  if (kw == "format" && name == "dwtv-tri") return Triangulation::from_text(body);
  throw UsageError("complex file " + path +
                   " must start with 'format dwtv-tri 1' or 'format dwtv-simp 1'");
}

inline ComplexSource parse_complex(const std::string& spec) {
  if (spec == "sphere3") return {sphere3(), std::nullopt};
  if (spec == "torus3") return {torus3(), std::nullopt};
  if (spec.rfind("sigma_cross_s1:", 0) == 0) {
    int g = 0;
    try {
      g = std::stoi(spec.substr(15));
    } catch (const std::exception&) {
      throw UsageError("bad genus in complex spec: " + spec);
    }
    if (g < 1 || g > 6) throw UsageError("complex genus must be between 1 and 6");
    return {sigma_cross_s1(g), std::nullopt};
  }
  if (spec.rfind("cylinder:", 0) == 0) {
    Cobordism c = cylinder_over(parse_surface(spec.substr(9)));
    Triangulation t = c.tri;
    return {std::move(t), std::move(c)};
  }
  return {load_complex_file(spec), std::nullopt};
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out) {
  using cli_detail::Emitter;
  using cli_detail::fmt_complex;

  CLI::App app{"exact state sum invariants and TQFT matrices of triangulated 3-manifolds"};
  app.require_subcommand(1);
  bool json = false, trace = false;
  app.add_flag("--json-lines", json, "emit one JSON record per output line");
  app.add_flag("--trace", trace, "print intermediate detail");
  Emitter em{out, &json};
  int rc = 0;

  std::string complex_spec, surface_spec, group_spec, cocycle_spec, norm_spec = "i";
  bool alt_convention = false, fast = false, projector = false;
  int moves = 6;
  long long term_cap = 10000000;
  std::uint64_t seed = 0;

  auto add_complex = [&](CLI::App* sc) {
    sc->add_option("--complex", complex_spec, std::string("complex: ") + kComplexSpecs)
        ->required();
  };
  auto add_group = [&](CLI::App* sc) {
    sc->add_option("--group", group_spec, std::string("group: ") + kGroupSpecs)->required();
  };
  auto add_cocycle = [&](CLI::App* sc) {
    sc->add_option("--cocycle", cocycle_spec, std::string("weight cochain: ") + kCocycleSpecs)
        ->required();
  };

  CLI::App* sc_build = app.add_subcommand("build", "construct a complex and print its text form");
  add_complex(sc_build);
  sc_build->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    std::istringstream lines(src.tri.to_text());
    std::string l;
    while (std::getline(lines, l)) em.line(l);
  });

  CLI::App* sc_validate = app.add_subcommand("validate", "check a complex and report violations");
  add_complex(sc_validate);
  sc_validate->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    const Triangulation& tri = src.tri;
    if (!tri.valid()) {
      for (const auto& v : tri.violations()) em.kv("violation", v);
      rc = 1;
      return;
    }
    int boundary = 0;
    for (int t = 0; t < tri.tet_count(); ++t)
      for (int f = 0; f < 4; ++f)
        if (!tri.gluing(t, f).has_value()) ++boundary;
    em.kv("valid", "yes");
    em.kv_num("tets", tri.tet_count());
    em.kv_num("vertex_classes", tri.vertex_class_count());
    em.kv_num("edge_classes", tri.edge_class_count());
    em.kv_num("face_classes", tri.face_class_count());
    em.kv_num("boundary_faces", boundary);
    em.kv_num("euler_characteristic", tri.euler_characteristic());
  });

  CLI::App* sc_colorings = app.add_subcommand("colorings", "count flat colorings of a complex");
  add_complex(sc_colorings);
  add_group(sc_colorings);
  sc_colorings->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    src.tri.require_valid();
    GroupPtr g = cli_detail::parse_group(group_spec);
    ConstraintSystem sys = constraint_system(src.tri);
    if (trace) {
      auto cols = all_colorings(sys, *g);
      for (const auto& c : cols) {
        std::string s;
        for (size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
        em.note("coloring " + s);
      }
      em.kv("colorings", std::to_string(cols.size()));
    } else {
      em.kv("colorings", ColoringProgram(sys).count(*g).str());
    }
  });

  CLI::App* sc_invariant = app.add_subcommand("invariant", "exact state sum of a closed complex");
  add_complex(sc_invariant);
  add_group(sc_invariant);
  add_cocycle(sc_invariant);
  sc_invariant->add_flag("--alt-weight-convention", alt_convention,
                         "read the third tetrahedral slot as the returning edge");
  sc_invariant->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    GroupPtr g = cli_detail::parse_group(group_spec);
    Cochain3 a = cli_detail::parse_cocycle(cocycle_spec, g);
    CycNumber v = dw_invariant(src.tri, *g, a, alt_convention);
    em.kv("invariant", v.to_string());
    em.kv("approx", fmt_complex(v.to_complex()));
  });

  CLI::App* sc_tv = app.add_subcommand("tv", "state sum over all edge labelings");
  add_complex(sc_tv);
  add_group(sc_tv);
  add_cocycle(sc_tv);
  sc_tv->add_flag("--fast", fast, "use the compiled search instead of full enumeration");
  sc_tv->add_option("--term-cap", term_cap, "assignment budget for the full enumeration");
  sc_tv->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    GroupPtr g = cli_detail::parse_group(group_spec);
    GroupCategory cat(cli_detail::parse_cocycle(cocycle_spec, g));
    StateSumStats stats;
    CycNumber v = tv_invariant(src.tri, cat, fast, fast ? nullptr : &stats, term_cap);
    if (!fast) {
      em.kv("terms", stats.terms.str());
      em.kv("admissible", stats.admissible.str());
    }
    em.kv("tv", v.to_string());
    em.kv("approx", fmt_complex(v.to_complex()));
  });

  CLI::App* sc_dim = app.add_subcommand("tqft-dim", "rank of the cylinder projector of a surface");
  sc_dim->add_option("--surface", surface_spec, std::string("surface: ") + kSurfaceSpecs)
      ->required();
  add_group(sc_dim);
  add_cocycle(sc_dim);
  sc_dim->add_flag("--projector", projector, "also print the cylinder matrix");
  sc_dim->callback([&] {
    SurfaceTriangulation surf = cli_detail::parse_surface(surface_spec);
    GroupPtr g = cli_detail::parse_group(group_spec);
    Cochain3 a = cli_detail::parse_cocycle(cocycle_spec, g);
    CobordismMatrix proj =
        cobordism_matrix(cylinder_over(surf), *g, a, Normalization::in_side);
    int rank = detail::matrix_rank(proj.entries);
    if (json)
      em.kv_num("tqft_dim", rank);
    else
      out << "dim V(Σ) = " << rank << "\n";
    if (projector) {
      for (int r = 0; r < proj.rows(); ++r) {
        std::string row;
        for (int c = 0; c < proj.cols(); ++c) {
          if (c) row += "\t";
          row += proj.at(r, c).to_string();
        }
        em.line(row);
      }
    }
  });

  CLI::App* sc_cob = app.add_subcommand("cobordism", "matrix of a marked complex");
  add_complex(sc_cob);
  add_group(sc_cob);
  add_cocycle(sc_cob);
  sc_cob->add_option("--normalization", norm_spec, "u | i | o | m (default i)");
  sc_cob->callback([&] {
    auto src = cli_detail::parse_complex(complex_spec);
    GroupPtr g = cli_detail::parse_group(group_spec);
    Cochain3 a = cli_detail::parse_cocycle(cocycle_spec, g);
    Normalization norm;
    try {
      norm = parse_normalization(norm_spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    auto make_cob = [&]() -> Cobordism {
      if (src.cob) return std::move(*src.cob);
      bool closed = true;
      for (int t = 0; t < src.tri.tet_count() && closed; ++t)
        for (int f = 0; f < 4; ++f)
          if (!src.tri.gluing(t, f).has_value()) closed = false;
      if (!closed)
        throw UsageError(
            "cobordism needs cylinder:<surface> or a closed complex (marked ends of a general "
            "file are not reconstructible)");
      return Cobordism{src.tri, SurfaceTriangulation(SurfData{}),
                       SurfaceTriangulation(SurfData{}), {}, {}, {}, {}};
    };
    CobordismMatrix mat = cobordism_matrix(make_cob(), *g, a, norm);
    em.kv_num("domain_dim", mat.cols());
    em.kv_num("codomain_dim", mat.rows());
    if (mat.sqrt_scale != 1) em.kv("scale", "sqrt(" + rat_to_string(mat.sqrt_scale) + ")");
    for (int r = 0; r < mat.rows(); ++r) {
      std::string row;
      for (int c = 0; c < mat.cols(); ++c) {
        if (c) row += "\t";
        row += mat.at(r, c).to_string();
      }
      em.line(row);
    }
  });

  CLI::App* sc_pachner =
      app.add_subcommand("pachner-test", "random moves and relabelings preserving the invariant");
  add_complex(sc_pachner);
  add_group(sc_pachner);
  add_cocycle(sc_pachner);
  sc_pachner->add_option("--moves", moves, "number of accepted moves (default 6)");
  sc_pachner->add_option("--seed", seed, "seed for the move sequence (default 0)");
  sc_pachner->callback([&] {
    if (moves < 1 || moves > 64) throw UsageError("--moves must be between 1 and 64");
    auto src = cli_detail::parse_complex(complex_spec);
    GroupPtr g = cli_detail::parse_group(group_spec);
    Cochain3 a = cli_detail::parse_cocycle(cocycle_spec, g);
    CycNumber ref = dw_invariant(src.tri, *g, a);
    if (trace) em.note("start: " + std::to_string(src.tri.tet_count()) + " tets");
    SplitMix64 rng(seed);
    Triangulation tri = src.tri;
    for (int step = 1; step <= moves; ++step) {
      tri = apply_random_moves(std::move(tri), 1, rng);
      CycNumber now = dw_invariant(tri, *g, a);
      if (trace)
        em.note("move " + std::to_string(step) + ": " + std::to_string(tri.tet_count()) +
                " tets, invariant " + now.to_string());
      if (now != ref) {
        em.kv_num("failed_at_move", step);
        em.kv("expected", ref.to_string());
        em.kv("got", now.to_string());
        rc = 1;
        return;
      }
    }
    em.line("invariant stable across " + std::to_string(moves) + " moves");
  });

  CLI::App* sc_cocheck = app.add_subcommand("cocycle-check", "verify the pentagon identity");
  add_group(sc_cocheck);
  add_cocycle(sc_cocheck);
  sc_cocheck->callback([&] {
    GroupPtr g = cli_detail::parse_group(group_spec);
    Cochain3 a = cli_detail::parse_cocycle(cocycle_spec, g);
    if (auto w = check_cocycle(a)) {
      std::string at = "(" + std::to_string((*w)[0]) + ", " + std::to_string((*w)[1]) + ", " +
                       std::to_string((*w)[2]) + ", " + std::to_string((*w)[3]) + ")";
      em.kv("fail_at", at);
      rc = 1;
      return;
    }
    long long n = g->order();
    em.line("pass (" + std::to_string(n * n * n * n) + " quadruples)");
  });

  CLI::App* sc_hom = app.add_subcommand("hom-count", "representation counts of the fundamental group");
  sc_hom->add_option("--complex", complex_spec, std::string("complex: ") + kComplexSpecs);
  sc_hom->add_option("--surface", surface_spec, std::string("surface: ") + kSurfaceSpecs);
  add_group(sc_hom);
  sc_hom->callback([&] {
    if (complex_spec.empty() == surface_spec.empty())
      throw UsageError("hom-count needs exactly one of --complex or --surface");
    GroupPtr g = cli_detail::parse_group(group_spec);
    BigInt homs, classes;
    if (!complex_spec.empty()) {
      auto src = cli_detail::parse_complex(complex_spec);
      src.tri.require_valid();
      homs = hom_count(src.tri, *g);
      classes = hom_count_mod_conj(src.tri, *g);
    } else {
      SurfaceTriangulation surf = cli_detail::parse_surface(surface_spec);
      homs = hom_count(surf, *g);
      classes = hom_count_mod_conj(surf, *g);
    }
    em.kv("homomorphisms", homs.str());
    em.kv("conjugacy_classes", classes.str());
  });

  for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    em.kv("error", e.what());
    return 1;
  }
  return rc;
}

}  // namespace dwtv
