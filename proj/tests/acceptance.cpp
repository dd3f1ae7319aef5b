// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "chordal/hopf.hpp"
#include "chordal/modular.hpp"
#include "chordal/relations.hpp"
#include "chordal/weights.hpp"

using namespace chordal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string first_failure(const SuiteReport& r) {
  for (const auto& c : r.checks)
    if (!c.pass) return c.name + ": " + c.witness;
  return "";
}

Outcome from_suite(const SuiteReport& r, const std::string& ok_detail) {
  if (r.pass) return {true, ok_detail};
  return {false, first_failure(r)};
}

// Hand-entered sl2 constants in the basis (h, e, f).
const Scalar kBinv[3][3] = {{make_scalar(1, 2), 0, 0}, {0, 0, 1}, {0, 1, 0}};
const Scalar kB[3][3] = {{2, 0, 0}, {0, 0, 1}, {0, 1, 0}};

Scalar sl2_bracket(int i, int j, int k) {
  auto f = [](int a, int b, int c) -> Scalar {
    if (a == 0 && b == 1 && c == 1) return 2;
    if (a == 0 && b == 2 && c == 2) return -2;
    if (a == 1 && b == 2 && c == 0) return 1;
    return 0;
  };
  return f(i, j, k) - f(j, i, k);
}

Scalar sl2_lowered(int i, int j, int k) {
  Scalar s = 0;
  for (int l = 0; l < 3; ++l) s += sl2_bracket(i, j, l) * kB[l][k];
  return s;
}

Scalar entry(const Tensor& t, std::vector<int> idx) {
  auto it = t.entries.find(idx);
  return it == t.entries.end() ? Scalar(0) : it->second;
}

Outcome presentations() {
  std::ostringstream dims;
  for (int p = 0; p <= 4; ++p) {
    auto r = verify_presentation_iso(p);
    if (!r.pass) return {false, "degree " + std::to_string(p) + ": " + r.failure + " " + r.witness};
    if (p <= 1 && r.dim_chords != 1) return {false, "dim A_" + std::to_string(p) + " != 1"};
    dims << (p ? " " : "") << r.dim_chords;
  }
  return {true, "dim A_p = dim G_p = " + dims.str() + ", chord classes of full rank"};
}

Outcome stu_implies_ihx() {
  long count = 0;
  for (int p = 0; p <= 3; ++p) {
    auto g = space_G(p);
    for (const auto& rel : ihx_generators(DiagramKind::closed, p).generators) {
      ++count;
      for (const auto& x : g->reduce(rel))
        if (x != 0) return {false, "IHX generator in degree " + std::to_string(p) + " outside the STU span"};
    }
  }
  return {true, std::to_string(count) + " closed IHX generators reduce to zero"};
}

Outcome weights() {
  const auto g = builtin_sl2();
  std::vector<std::string> bad;

  // (a) direct 2x2 oracle: sum b^{ij} rho_i rho_j on the defining representation
  const Scalar h[2][2] = {{1, 0}, {0, -1}}, e[2][2] = {{0, 1}, {0, 0}}, f[2][2] = {{0, 0}, {1, 0}};
  const Scalar (*rho[3])[2] = {h, e, f};
  Scalar trace = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) trace += kBinv[a][b] * rho[a][r][s] * rho[b][s][r];
  const Scalar got = weight_trace(ChordDiagram::parse("11"), g, sl2_irrep(1));
  if (got != 3 || trace != 3) bad.push_back("(a) trace " + got.get_str());

  // (b) closed-form tensors for C and B
  const Tensor tc = tensor_T(strut(), g);
  JacobiDiagram bubble;
  bubble.kind = DiagramKind::open;
  bubble.legs = 2;
  bubble.internal = 2;
  bubble.mate = {2, 7, 0, 5, 6, 3, 4, 1};
  const Tensor tb = tensor_T(bubble, g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar want = 0;
      for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
          for (int k = 0; k < 3; ++k)
            for (int p = 0; p < 3; ++p)
              for (int l = 0; l < 3; ++l)
                for (int q = 0; q < 3; ++q)
                  want += kBinv[i][s] * kBinv[t][j] * kBinv[k][p] * kBinv[l][q] * sl2_lowered(s, k, l) *
                          sl2_lowered(p, q, t);
      if (entry(tc, {i, j}) != kBinv[i][j] || entry(tb, {i, j}) != want) {
        bad.push_back("(b) component " + std::to_string(i) + "," + std::to_string(j));
        i = j = 3;
      }
    }

  RepFamily four;
  for (int k = 1; k <= 4; ++k) four.push_back(sl2_irrep(k));
  RepFamily three(four.begin(), four.begin() + 3);
  // (c)
  auto vanish = verify_relations_vanish(g, four, 3, 3);
  if (!vanish.pass) bad.push_back("(c) " + first_failure(vanish));
  // (d), (e)
  auto central = verify_centrality(g, three, 3);
  for (const auto& c : central.checks)
    if (!c.pass) bad.push_back((c.name == "central characters are multiplicative" ? "(e) " : "(d) ") + c.name + ": " + c.witness);

  if (!bad.empty()) return {false, bad.front()};
  long relations = 0, images = 0;
  for (const auto& c : vanish.checks) relations += c.checked;
  for (const auto& c : central.checks) images += c.checked;
  return {true, "(a) trace 3, (b) T(C) and T(B) match, (c) " + std::to_string(relations) +
                    " relation evaluations vanish, (d)(e) " + std::to_string(images) + " centrality checks"};
}

Outcome kernel_lemma() {
  std::ostringstream detail;
  bool minus_everywhere = true;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 1; ++k) {
      auto r = verify_lemker(n, k);
      const std::string where = "|X|=" + std::to_string(n) + " k=" + std::to_string(k);
      const long ambient = std::stol(r.facts.at("domain ambient"));
      if (ambient > 200) {
        detail << where << " skipped (ambient " << ambient << "); ";
        continue;
      }
      if (!r.pass) return {false, where + ": " + first_failure(r)};
      const std::string sign = r.facts.at("type (i) sign");
      minus_everywhere = minus_everywhere && (sign == "-" || sign == "both");
      detail << where << " sign " << sign << "; ";
    }
  if (!minus_everywhere) return {false, "type (i) sign differs between instances: " + detail.str()};
  return {true, "contractions surjective, kernels generated, type (i) sign '-' on every instance (" +
                    detail.str().substr(0, detail.str().size() - 2) + ")"};
}

Outcome tree_dims() {
  long fact = 1;
  std::ostringstream dims;
  for (int n = 3; n <= 5; ++n) {
    if (n > 3) fact *= n - 2;
    const int d = space_M(n, 0)->dimension();
    if (d != fact) return {false, "dim M(" + std::to_string(n) + ",0) = " + std::to_string(d)};
    dims << (n > 3 ? " " : "") << d;
  }
  return {true, "dim M(X,0) = " + dims.str() + " for |X| = 3 4 5"};
}

// Runs the chordal executable in a fresh process; returns stdout, or
// nothing if the command failed.
std::optional<std::string> run_binary(const std::vector<std::string>& args) {
  std::string cmd = CHORDAL_BIN;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  if (pclose(pipe) != 0) return std::nullopt;
  return out;
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"dims", "--space", "B", "--degree", "3"},
      {"dims", "--space", "M", "--legs", "4", "--degree", "0"},
      {"enumerate", "--kind", "closed", "--order", "3"},
      {"reduce", "--space", "G", "--degree", "3", "--diagram", "123123", "--diagram", "-2*112233"},
      {"ws", "--rep", "3", "--diagram", "123123"},
      {"verify", "--suite", "presentations", "--degree", "3"},
      {"verify", "--suite", "hopf", "--degree", "3"},
      {"verify", "--suite", "sigma", "--degree", "3"},
      {"verify", "--suite", "primitives", "--degree", "3"},
      {"verify", "--suite", "ws-vanish", "--degree", "3"},
      {"verify", "--suite", "centrality", "--degree", "3"},
      {"verify", "--suite", "lemker", "--legs", "3", "--grade", "1"},
      {"decomposition", "--legs", "2", "--max-grade", "4"},
  };
  for (const auto& format : {"json", "csv", "text"}) {
    for (const auto& cmd : commands) {
      std::string base;
      for (const char* jobs : {"1", "4", "8"}) {
        std::vector<std::string> args = {"--jobs", jobs, "--format", format};
        args.insert(args.end(), cmd.begin(), cmd.end());
        const auto out = run_binary(args);
        if (!out) return {false, cmd[0] + " " + cmd[2] + " failed with --jobs " + jobs};
        if (std::string(jobs) == "1")
          base = *out;
        else if (*out != base)
          return {false, cmd[0] + " " + cmd[2] + " differs with --jobs " + jobs + " (" + format + ")"};
      }
    }
  }
  return {true, std::to_string(commands.size() * 3) + " reports identical across 1, 4 and 8 jobs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"presentation isomorphism, p <= 4", presentations},
      {"STU implies IHX, p <= 3", stu_implies_ihx},
      {"Hopf algebra axioms, degree <= 3", [] { return from_suite(verify_bialgebra(3), "all bialgebra checks exact"); }},
      {"primitives = connected span, p <= 3",
       [] {
         auto r = verify_primitives(3);
         return from_suite(r, "dim P_1..3 = " + r.facts["dim P_1"] + " " + r.facts["dim P_2"] + " " + r.facts["dim P_3"]);
       }},
      {"symmetrization isomorphism, p <= 3",
       [] { return from_suite(verify_symmetrization_iso(3), "dim B_p = dim A_p and full rank"); }},
      {"sl2 weight systems", weights},
      {"kernel lemma and surjectivity, |X| <= 3, k <= 1", kernel_lemma},
      {"tree dimensions (|X|-2)!", tree_dims},
      {"determinism across 1, 4, 8 jobs", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << "  ["
              << o.detail << "] (" << t.str() << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
