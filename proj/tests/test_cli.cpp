#include "doctest.h"

#include "dwtv/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace dwtv;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream os;
  int code = run_cli(std::move(args), os);
  return {code, os.str()};
}

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& contents)
      : path("/tmp/dwtv_cli_" + name) {
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("documented invariant lines") {
  auto r = run({"invariant", "--complex", "torus3", "--group", "cyclic:3", "--cocycle", "zn"});
  CHECK(r.code == 0);
  CHECK(r.out == "invariant = 9/1\napprox = 9.0\n");

  auto s = run({"invariant", "--complex", "sphere3", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(s.code == 0);
  CHECK(s.out == "invariant = 1/2\napprox = 0.5\n");
}

TEST_CASE("pentagon check lines") {
  auto r = run({"cocycle-check", "--group", "symmetric:3", "--cocycle", "sn"});
  CHECK(r.code == 0);
  CHECK(r.out == "pass (1296 quadruples)\n");

  auto ok = run({"cocycle-check", "--group", "cyclic:4", "--cocycle", "zn"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "pass (256 quadruples)\n");

  // a cochain that is not closed: reported with the witness quadruple
  TempFile bad("bad_cocycle.txt",
               "group cyclic:2\n"
               "root-order 3\n"
               "1 1 1 1\n");
  auto f = run({"cocycle-check", "--group", "cyclic:2", "--cocycle", "file:" + bad.path});
  CHECK(f.code == 1);
  CHECK(f.out == "fail_at = (1, 1, 1, 1)\n");
}

TEST_CASE("move stability line matches the documented example") {
  auto r = run({"pachner-test", "--complex", "sphere3", "--group", "cyclic:2", "--cocycle", "zn",
                "--moves", "6", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out == "invariant stable across 6 moves\n");

  auto again = run({"pachner-test", "--complex", "sphere3", "--group", "cyclic:2", "--cocycle",
                    "zn", "--moves", "6", "--seed", "7"});
  CHECK(again.out == r.out);

  auto traced = run({"pachner-test", "--complex", "torus3", "--group", "cyclic:2", "--cocycle",
                     "zn", "--moves", "2", "--seed", "1", "--trace"});
  CHECK(traced.code == 0);
  CHECK(traced.out.rfind("# start: 6 tets\n", 0) == 0);
  CHECK(traced.out.find("invariant stable across 2 moves\n") != std::string::npos);
}

TEST_CASE("usage problems exit with code two") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);

  auto r = run({"invariant", "--complex", "nope", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(r.code == 2);
  CHECK(r.out.rfind("error: ", 0) == 0);
  CHECK(r.out.find("sphere3 | torus3") != std::string::npos);

  auto g = run({"invariant", "--complex", "torus3", "--group", "wat", "--cocycle", "zn"});
  CHECK(g.code == 2);
  CHECK(g.out.find("cyclic:<n>") != std::string::npos);

  auto c = run({"invariant", "--complex", "torus3", "--group", "cyclic:2", "--cocycle", "wat"});
  CHECK(c.code == 2);
  CHECK(c.out.find("trivial | zn | sn") != std::string::npos);

  auto zn_wrong = run({"invariant", "--complex", "torus3", "--group", "symmetric:3", "--cocycle",
                       "zn"});
  CHECK(zn_wrong.code == 2);

  auto norm = run({"cobordism", "--complex", "cylinder:torus", "--group", "cyclic:2", "--cocycle",
                   "zn", "--normalization", "q"});
  CHECK(norm.code == 2);

  auto surf = run({"tqft-dim", "--surface", "moebius", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(surf.code == 2);
  CHECK(surf.out.find("torus | sphere | sigma:<g>") != std::string::npos);

  CHECK(run({"--help"}).code == 0);
  CHECK(!run({"--help"}).out.empty());
}

TEST_CASE("failed checks exit with code one and name a witness") {
  auto r = run({"invariant", "--complex", "cylinder:torus", "--group", "cyclic:2", "--cocycle",
                "zn"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("error = ", 0) == 0);
  CHECK(r.out.find("boundary faces") != std::string::npos);

  // an orientation-breaking file: validator violations, one per line
  std::string text = torus3().to_text();
  auto eps_pos = text.find("eps 1");
  REQUIRE(eps_pos != std::string::npos);
  text.replace(eps_pos, 5, "eps -1");
  TempFile broken("broken_complex.tri", text);
  auto v = run({"validate", "--complex", broken.path});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("violation = ", 0) == 0);
}

TEST_CASE("json lines mode") {
  auto r = run({"invariant", "--complex", "torus3", "--group", "cyclic:2", "--cocycle", "zn",
                "--json-lines"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"invariant\":\"4/1\"}\n{\"approx\":\"4.0\"}\n");

  auto d = run({"tqft-dim", "--surface", "torus", "--group", "cyclic:2", "--cocycle", "zn",
                "--json-lines"});
  CHECK(d.out == "{\"tqft_dim\":4}\n");
}

TEST_CASE("dimension lines") {
  auto r = run({"tqft-dim", "--surface", "torus", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(r.code == 0);
  CHECK(r.out == "dim V(Σ) = 4\n");

  auto s = run({"tqft-dim", "--surface", "refined-torus", "--group", "cyclic:2", "--cocycle",
                "zn"});
  CHECK(s.out == "dim V(Σ) = 4\n");

  auto t = run({"tqft-dim", "--surface", "torus", "--group", "symmetric:3", "--cocycle",
                "trivial"});
  CHECK(t.out == "dim V(Σ) = 8\n");

  auto p = run({"tqft-dim", "--surface", "torus", "--group", "cyclic:2", "--cocycle", "zn",
                "--projector"});
  CHECK(p.out == "dim V(Σ) = 4\n"
                 "1/1\t0/1\t0/1\t0/1\n"
                 "0/1\t1/1\t0/1\t0/1\n"
                 "0/1\t0/1\t1/1\t0/1\n"
                 "0/1\t0/1\t0/1\t1/1\n");
}

TEST_CASE("cobordism matrices") {
  auto r = run({"cobordism", "--complex", "cylinder:torus", "--group", "cyclic:2", "--cocycle",
                "zn"});
  CHECK(r.code == 0);
  CHECK(r.out == "domain_dim = 4\ncodomain_dim = 4\n"
                 "1/1\t0/1\t0/1\t0/1\n"
                 "0/1\t1/1\t0/1\t0/1\n"
                 "0/1\t0/1\t1/1\t0/1\n"
                 "0/1\t0/1\t0/1\t1/1\n");

  // a closed complex reads as a map between the empty surface's 1-dim space
  auto c = run({"cobordism", "--complex", "torus3", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(c.code == 0);
  CHECK(c.out == "domain_dim = 1\ncodomain_dim = 1\n4/1\n");

  // unnormalized raw pairing differs by the in-boundary class count
  auto u = run({"cobordism", "--complex", "cylinder:torus", "--group", "cyclic:2", "--cocycle",
                "zn", "--normalization", "u"});
  CHECK(u.out.find("2/1\t0/1") != std::string::npos);
}

TEST_CASE("building writes a reloadable file") {
  auto b = run({"build", "--complex", "sphere3"});
  CHECK(b.code == 0);
  CHECK(b.out.rfind("format dwtv-tri 1\n", 0) == 0);

  TempFile f("roundtrip.tri", b.out);
  auto inv = run({"invariant", "--complex", f.path, "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(inv.out == "invariant = 1/2\napprox = 0.5\n");

  auto v = run({"validate", "--complex", f.path});
  CHECK(v.code == 0);
  CHECK(v.out.find("valid = yes\n") != std::string::npos);
  CHECK(v.out.find("tets = 5\n") != std::string::npos);
  CHECK(v.out.find("euler_characteristic = 0\n") != std::string::npos);
}

TEST_CASE("counting subcommands") {
  auto c = run({"colorings", "--complex", "torus3", "--group", "cyclic:2"});
  CHECK(c.code == 0);
  CHECK(c.out == "colorings = 8\n");

  auto h = run({"hom-count", "--surface", "torus", "--group", "symmetric:3"});
  CHECK(h.code == 0);
  CHECK(h.out == "homomorphisms = 18\nconjugacy_classes = 8\n");

  auto hc = run({"hom-count", "--complex", "torus3", "--group", "symmetric:3"});
  CHECK(hc.out == "homomorphisms = 48\nconjugacy_classes = 21\n");

  auto both = run({"hom-count", "--complex", "torus3", "--surface", "torus", "--group",
                   "cyclic:2"});
  CHECK(both.code == 2);

  auto tv = run({"tv", "--complex", "torus3", "--group", "cyclic:2", "--cocycle", "zn"});
  CHECK(tv.out == "terms = 128\nadmissible = 8\ntv = 4/1\napprox = 4.0\n");

  auto tvf = run({"tv", "--complex", "torus3", "--group", "cyclic:2", "--cocycle", "zn",
                  "--fast"});
  CHECK(tvf.out == "tv = 4/1\napprox = 4.0\n");
}

TEST_CASE("alternate weight convention flag is accepted") {
  auto r = run({"invariant", "--complex", "sphere3", "--group", "cyclic:2", "--cocycle", "zn",
                "--alt-weight-convention"});
  CHECK(r.code == 0);
  CHECK(r.out == "invariant = 1/2\napprox = 0.5\n");
}
