// ehrhart-tool: command-line front end for the lattice polytope toolkit.
//
//   ehrhart-tool ehrhart FILE
//   ehrhart-tool equiv S T [--mode full|equal-volume]
//   ehrhart-tool equidecomp P Q [--dilate K]
//   ehrhart-tool pyramid S --target-dim N [-o OUT]
//   ehrhart-tool search FILE... [--budget N] [--seed S]
//
// Exit status: 0 when a verdict was computed, 1 on usage or input errors,
// 2 when an internal consistency check fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ehrhart/all.hpp"

namespace {

using namespace ehrhart;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  PolytopeDocument doc;
  LatticePolytope poly;
};

Loaded load(const std::string& path) {
  auto doc = read_document(path);
  auto poly = to_polytope(doc);
  return {std::move(doc), std::move(poly)};
}

LatticeSimplex require_simplex(const Loaded& in) {
  if (!in.poly.is_simplex())
    throw UsageError(in.doc.name + " has " + std::to_string(in.poly.vertex_count()) + " vertices and is not a " +
                     std::to_string(in.poly.dim()) + "-simplex; use `equidecomp` for general polytopes");
  return LatticeSimplex(in.poly);
}

json input_json(const Loaded& in) {
  json v = json::array();
  for (const auto& p : in.poly.vertices()) v.push_back(to_json(p));
  return {{"name", in.doc.name}, {"dim", in.poly.dim()}, {"vertices", v}};
}

std::string row_text(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

std::string matrix_text(const IntegerMatrix& m, const std::string& indent = "  ") {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << to_string(m(r, c));
    os << '\n';
  }
  return os.str();
}

// Columns of D_T reordered by the witness bijection, i.e. D_T * P.
IntegerMatrix permuted_target(const LatticeSimplex& t, const EquivalenceWitness& w) {
  const IntegerMatrix dt = t.definition_matrix();
  IntegerMatrix out(dt.rows(), dt.cols());
  for (std::size_t c = 0; c < dt.cols(); ++c)
    for (std::size_t r = 0; r < dt.rows(); ++r) out(r, c) = dt(r, w.vertex_bijection[c]);
  return out;
}

std::string witness_text(const LatticeSimplex& t, const EquivalenceWitness& w) {
  std::ostringstream os;
  os << "linear part B:\n" << matrix_text(w.map.linear());
  os << "translation c: " << row_text(w.map.translation()) << '\n';
  os << "vertex bijection:";
  for (std::size_t i = 0; i < w.vertex_bijection.size(); ++i)
    os << ' ' << (i + 1) << "->" << (w.vertex_bijection[i] + 1);
  os << '\n';
  os << "certificate A = [[B, c], [0, 1]]:\n" << matrix_text(w.certificate);
  os << "permuted target D_T*P:\n" << matrix_text(permuted_target(t, w));
  return os.str();
}

struct Output {
  bool as_json = false;
  bool timing_to_stderr = false;
  json report;
  std::ostringstream text;

  void finish(const std::vector<std::string>& argv, double seconds) {
    if (as_json) {
      report["command"] = argv;
      report["elapsed_seconds"] = seconds;
      std::cout << report.dump(2) << '\n';
    } else {
      std::cout << text.str();
      (timing_to_stderr ? std::cerr : std::cout) << "elapsed: " << seconds << " s\n";
    }
  }
};

void cmd_ehrhart(const std::string& path, Output& out) {
  const auto in = load(path);
  const auto l = ehrhart_polynomial(in.poly);
  const bool recip = reciprocity_check(in.poly, l, 2);
  const BigInt nvol = normalized_volume(in.poly);
  out.report = {{"input", input_json(in)},
                {"ehrhart_polynomial", to_json(l)},
                {"normalized_volume", to_string(nvol)},
                {"volume", to_string(l.leading())},
                {"reciprocity_k2", recip}};
  out.text << "input: " << in.doc.name << " (dim " << in.poly.dim() << ", " << in.poly.vertex_count()
           << " vertices)\n";
  out.text << "L(t) = " << to_string(l) << '\n';
  out.text << "coefficients (c_n .. c_0):";
  for (const auto& c : l.coefficients()) out.text << ' ' << to_string(c);
  out.text << '\n';
  out.text << "normalized volume: " << to_string(nvol) << '\n';
  out.text << "volume: " << to_string(l.leading()) << '\n';
  out.text << "reciprocity (k <= 2): " << (recip ? "ok" : "FAILED") << '\n';
}

void cmd_equiv(const std::string& a, const std::string& b, const std::string& mode_name, Output& out) {
  const auto ls = load(a), lt = load(b);
  const auto s = require_simplex(ls), t = require_simplex(lt);
  if (s.dim() != t.dim()) throw UsageError("inputs live in different dimensions");
  const auto mode = mode_name == "equal-volume" ? EquivalenceMode::equal_volume : EquivalenceMode::full;
  const auto verdict = check_equivalence(s, t, mode);
  out.report = {{"inputs", {input_json(ls), input_json(lt)}},
                {"mode", mode_name},
                {"verdict", verdict.equivalent() ? "Equivalent" : "NotEquivalent"},
                {"permutations_tried", verdict.permutations_tried}};
  out.text << "S: " << ls.doc.name << "\nT: " << lt.doc.name << "\nmode: " << mode_name << '\n';
  out.text << "verdict: " << (verdict.equivalent() ? "Equivalent" : "NotEquivalent") << '\n';
  out.text << "permutations tried: " << verdict.permutations_tried << '\n';
  if (verdict.equivalent()) {
    const auto& w = *verdict.witness;
    out.report["witness"] = to_json(w);
    out.report["permuted_target"] = to_json(permuted_target(t, w));
    out.report["witness_verified"] = verify_witness(s, t, w);
    out.text << witness_text(t, w);
    out.text << "witness verified: " << (verify_witness(s, t, w) ? "yes" : "NO") << '\n';
  }
}

constexpr const char* kEvidenceBanner =
    "NOTE: NotMatched is evidence only. It means these pulling triangulations admit no cell "
    "matching; a finer decomposition may still exist.";

void cmd_equidecomp(const std::string& a, const std::string& b, std::size_t k_max, Output& out) {
  const auto lp = load(a), lq = load(b);
  if (lp.poly.dim() != lq.poly.dim()) throw UsageError("inputs live in different dimensions");
  out.report = {{"inputs", {input_json(lp), input_json(lq)}}, {"dilate", k_max}};
  out.text << "P: " << lp.doc.name << "\nQ: " << lq.doc.name << '\n';

  const BigInt vp = normalized_volume(lp.poly), vq = normalized_volume(lq.poly);
  if (vp != vq) {
    out.report["verdict"] = "NotEquidecomposable";
    out.report["reason"] = "volume obstruction";
    out.text << "verdict: NotEquidecomposable (volume obstruction: normalized volumes " << to_string(vp) << " vs "
             << to_string(vq) << ")\n";
    return;
  }
  const auto lpoly = ehrhart_polynomial(lp.poly), lqpoly = ehrhart_polynomial(lq.poly);
  if (lpoly != lqpoly) {
    out.report["verdict"] = "NotEquidecomposable";
    out.report["reason"] = "Ehrhart polynomials differ";
    out.text << "verdict: NotEquidecomposable (Ehrhart polynomials differ: " << to_string(lpoly) << " vs "
             << to_string(lqpoly) << ")\n";
    return;
  }
  out.text << "L(t) = " << to_string(lpoly) << " for both\n";

  const auto report = dilation_search(lp.poly, lq.poly, k_max);
  json levels = json::array();
  bool any_negative = false;
  for (const auto& e : report.tested) {
    json level = {{"k", e.k}, {"outcome", to_string(e.outcome)}, {"cells", {e.left_cells, e.right_cells}}};
    out.text << "k=" << e.k << ": " << to_string(e.outcome);
    if (e.outcome == DilationOutcome::capacity_exceeded) {
      level["note"] = e.note;
      out.text << " (" << e.note << ")\n";
      continue;
    }
    out.text << " (cells " << e.left_cells << " / " << e.right_cells;
    if (e.matching) {
      const bool ok = verify_matching(*e.matching);
      const bool uni = e.matching->left.all_unimodular() && e.matching->right.all_unimodular();
      level["pairs"] = to_json(*e.matching);
      level["verified"] = ok;
      level["all_cells_unimodular"] = uni;
      out.text << ", " << e.matching->pairing.size() << " pairs, verified " << (ok ? "yes" : "NO")
               << ", all cells unimodular " << (uni ? "yes" : "no") << ")\n";
      if (e.k == 1) {
        for (std::size_t i = 0; i < e.matching->pairing.size(); ++i) {
          out.text << "  pair " << (i + 1) << ": ";
          for (const auto& v : e.matching->left.cells[i].vertices()) out.text << row_text(v);
          out.text << " -> ";
          for (const auto& v : e.matching->right.cells[e.matching->pairing[i]].vertices()) out.text << row_text(v);
          out.text << '\n';
        }
      }
    } else {
      any_negative = true;
      out.text << ")\n";
    }
    levels.push_back(std::move(level));
  }
  out.report["levels"] = levels;
  if (report.first_success) {
    out.report["first_success"] = *report.first_success;
    out.text << "first success: k=" << *report.first_success << '\n';
  } else {
    out.report["first_success"] = nullptr;
    out.text << "first success: none for k <= " << k_max << '\n';
  }
  if (any_negative) {
    out.report["banner"] = kEvidenceBanner;
    out.text << kEvidenceBanner << '\n';
  }
}

void cmd_pyramid(const std::string& path, std::size_t target, const std::string& out_path, Output& out) {
  const auto in = load(path);
  const auto s = require_simplex(in);
  if (target <= s.dim())
    throw UsageError("--target-dim must exceed the input dimension " + std::to_string(s.dim()));
  const auto lifted = pyramid_lift(s, target);
  auto doc = to_document(lifted.polytope(), "pyramid of " + in.doc.name);
  const std::string text = emit_document(doc);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
  }
  out.report = {{"input", input_json(in)}, {"target_dim", target}, {"document", text}};
  out.timing_to_stderr = true;
  out.text << text;
}

void cmd_search(const std::vector<std::string>& paths, const MutationPolicy& policy, Output& out) {
  std::vector<LatticePolytope> seeds;
  for (const auto& p : paths) seeds.push_back(load(p).poly);
  const auto report = search(seeds, policy);
  json classes = json::array();
  out.text << "seed: " << report.seed << ", budget: " << policy.budget << '\n';
  out.text << "evaluated: " << report.evaluated << ", degenerate: " << report.degenerate
           << ", duplicates: " << report.duplicates << ", capacity skipped: " << report.capacity_skipped << '\n';
  out.text << "classes: " << report.classes.size() << '\n';
  std::size_t idx = 0;
  for (const auto& cls : report.classes) {
    ++idx;
    json members = json::array();
    out.text << "class " << idx << ": " << to_string(cls.key) << " (" << cls.members.size() << " members)\n";
    for (const auto& m : cls.members) {
      json v = json::array();
      out.text << "  ";
      for (const auto& p : m.vertices()) {
        v.push_back(to_json(p));
        out.text << row_text(p);
      }
      out.text << '\n';
      members.push_back(v);
    }
    classes.push_back({{"key", to_json(cls.key)}, {"members", members}});
  }
  out.report = {{"seed", report.seed},
                {"budget", policy.budget},
                {"evaluated", report.evaluated},
                {"degenerate", report.degenerate},
                {"duplicates", report.duplicates},
                {"capacity_skipped", report.capacity_skipped},
                {"classes", classes}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Ehrhart polynomials and unimodular equivalence for lattice polytopes"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "Emit the report as JSON");

  std::string file_a, file_b;
  auto* ehr = app.add_subcommand("ehrhart", "Ehrhart polynomial, volume and reciprocity check");
  ehr->add_option("file", file_a, "Polytope document")->required();

  std::string mode = "full";
  auto* equiv = app.add_subcommand("equiv", "Unimodular equivalence of two simplices");
  equiv->add_option("S", file_a, "First simplex")->required();
  equiv->add_option("T", file_b, "Second simplex")->required();
  equiv->add_option("--mode", mode, "full | equal-volume")
      ->check(CLI::IsMember({"full", "equal-volume"}));

  std::size_t k_max = 1;
  auto* equi = app.add_subcommand("equidecomp", "Match pulling triangulations of kP and kQ");
  equi->add_option("P", file_a, "First polytope")->required();
  equi->add_option("Q", file_b, "Second polytope")->required();
  equi->add_option("--dilate", k_max, "Largest dilation factor to try")->check(CLI::Range(1, 64));

  std::size_t target = 0;
  std::string out_path;
  auto* pyr = app.add_subcommand("pyramid", "Pyramid over a simplex in a higher dimension");
  pyr->add_option("S", file_a, "Simplex")->required();
  pyr->add_option("--target-dim", target, "Target dimension")->required();
  pyr->add_option("-o,--output", out_path, "Also write the document to this file");

  std::vector<std::string> seeds;
  MutationPolicy policy;
  auto* srch = app.add_subcommand("search", "Collision search for Ehrhart-equivalent polytopes");
  srch->add_option("seeds", seeds, "Seed polytope documents");
  srch->add_option("--budget", policy.budget, "Number of mutation steps");
  srch->add_option("--seed", policy.seed, "Random seed");
  srch->add_option("--delta-min", policy.delta_min, "Smallest coordinate change");
  srch->add_option("--delta-max", policy.delta_max, "Largest coordinate change");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::string> args(argv, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*ehr) cmd_ehrhart(file_a, out);
    else if (*equiv) cmd_equiv(file_a, file_b, mode, out);
    else if (*equi) cmd_equidecomp(file_a, file_b, k_max, out);
    else if (*pyr) cmd_pyramid(file_a, target, out_path, out);
    else if (*srch) cmd_search(seeds, policy, out);
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  out.finish(args, elapsed.count());
  return kExitOk;
}
