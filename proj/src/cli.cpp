#include "qmt/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmt/classify.hpp"
#include "qmt/compose.hpp"
#include "qmt/document.hpp"
#include "qmt/error.hpp"
#include "qmt/galois.hpp"
#include "qmt/gen.hpp"
#include "qmt/witness.hpp"

namespace qmt::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ArityMismatch: return kExitParse;
    case ErrorCode::Axiom: return kExitAxiom;
    case ErrorCode::ArityOverflow: return kExitArityOverflow;
    case ErrorCode::Precondition: return kExitPrecondition;
    case ErrorCode::QCapExceeded: return kExitQCap;
    default: return kExitFailure;
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string event_labels(const QuantumSystem& s, const Event& e) {
  std::string out = "{";
  bool first = true;
  for (auto i : e.members()) {
    out += (first ? "" : ",") + s.label(i);
    first = false;
  }
  return out + "}";
}

json event_json(const QuantumSystem& s, const Event& e) {
  json labels = json::array();
  for (auto i : e.members()) labels.push_back(s.label(i));
  return labels;
}

QuantumSystem load(const std::string& path, Tolerance tol) {
  return to_system(read_document_file(path), tol);
}

struct Common {
  double eps = 1e-9;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps", c.eps, "absolute and relative tolerance")->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable report");
}

const char* yes(bool b) { return b ? "yes" : "no"; }

int cmd_classify(const std::string& path, const Common& c, std::ostream& out) {
  const auto tol = Tolerance::uniform(c.eps);
  const auto s = load(path, tol);
  const bool brute = s.size() <= kBruteForceLimit;
  Classification cls;
  if (brute) {
    cls = classify(s, tol);
  } else {
    cls.tolerance = tol.bound(s.matrix());
    cls.strong = is_strongly_positive(s, tol);
    cls.positive_entry = is_positive_entry(s, tol);
    cls.classical = is_classical(s, tol);
    cls.dual_of_posentry = is_in_dual_of_posentry(s, tol);
    cls.real_symmetric = is_real_symmetric(s, tol);
  }

  if (c.json) {
    json j;
    j["name"] = s.name();
    j["atoms"] = s.size();
    j["tolerance"] = cls.tolerance;
    json weak;
    if (brute) {
      weak["member"] = cls.weak.member;
      if (cls.weak.violation) {
        weak["event"] = event_json(s, *cls.weak.violation);
        weak["value"] = cls.weak.violation_value;
      }
    } else {
      weak["member"] = nullptr;
      weak["reason"] = "atom count exceeds the brute-force limit";
    }
    j["weakly_positive"] = weak;
    json vec = json::array();
    for (Eigen::Index i = 0; i < cls.strong.min_eigenvector.size(); ++i) {
      vec.push_back(complex_json(cls.strong.min_eigenvector(i)));
    }
    j["strongly_positive"] = {{"member", cls.strong.member},
                              {"min_eigenvalue", cls.strong.min_eigenvalue},
                              {"min_eigenvector", vec}};
    json entry{{"member", cls.positive_entry.member}};
    if (cls.positive_entry.violation) {
      const auto [a, b] = *cls.positive_entry.violation;
      entry["entry"] = {s.label(a), s.label(b)};
      entry["value"] = complex_json(s.entry(a, b));
    }
    j["positive_entry"] = entry;
    j["classical"] = cls.classical;
    j["in_dual_of_posentry"] = cls.dual_of_posentry.member;
    j["real_symmetric"] = cls.real_symmetric;
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  out << "system: " << (s.name().empty() ? path : s.name()) << " (" << s.size() << " atoms)\n";
  out << "tolerance: " << num(cls.tolerance) << "\n";
  out << "weakly positive:   ";
  if (!brute) {
    out << "unknown (more than " << kBruteForceLimit << " atoms)\n";
  } else if (cls.weak.member) {
    out << "yes\n";
  } else {
    out << "no   event " << event_labels(s, *cls.weak.violation) << " has measure "
        << num(cls.weak.violation_value) << "\n";
  }
  out << "strongly positive: " << yes(cls.strong.member) << (cls.strong.member ? "  " : "   ")
      << "min eigenvalue " << num(cls.strong.min_eigenvalue) << "\n";
  out << "positive entry:    " << yes(cls.positive_entry.member);
  if (cls.positive_entry.violation) {
    const auto [a, b] = *cls.positive_entry.violation;
    out << "   entry (" << s.label(a) << "," << s.label(b) << ") = " << num(s.entry(a, b));
  }
  out << "\nclassical:         " << yes(cls.classical) << "\n";
  out << "dual of posentry:  " << yes(cls.dual_of_posentry.member) << "\n";
  out << "real symmetric:    " << yes(cls.real_symmetric) << "\n";
  return kExitOk;
}

int cmd_compose(const std::string& a, const std::string& b, const std::string& output,
                const Common& c, std::ostream& out) {
  const auto tol = Tolerance::uniform(c.eps);
  const auto composed = compose(load(a, tol), load(b, tol));
  if (output.empty()) {
    out << write_document(composed);
  } else {
    write_document_file(output, composed);
    out << "wrote " << output << " (" << composed.size() << " atoms)\n";
  }
  return kExitOk;
}

int cmd_witness(const std::string& path, unsigned qmax, const Common& c, std::ostream& out) {
  const auto tol = Tolerance::uniform(c.eps);
  const auto s = load(path, tol);
  WitnessOptions opts;
  opts.qmax = qmax;
  const auto w = build_witness(s, tol, opts);
  const auto comps = component_labels(s, w);

  std::string subset;
  for (std::size_t i = 0; i < w.neg_det.atoms.size(); ++i) {
    subset += (i ? "," : "") + s.label(w.neg_det.atoms[i]);
  }

  if (c.json) {
    json j;
    j["case"] = to_string(w.kase);
    j["phase_pair"] = {{"a", event_json(s, w.phase.a)},
                       {"b", event_json(s, w.phase.b)},
                       {"r", w.phase.r},
                       {"theta", w.phase.theta}};
    json atoms = json::array();
    for (auto a : w.neg_det.atoms) atoms.push_back(s.label(a));
    j["neg_det_subset"] = {{"atoms", atoms}, {"det", w.neg_det.det}};
    j["ee"] = w.sums.ee;
    j["eo"] = w.sums.eo;
    j["p"] = w.p;
    j["q"] = w.q;
    j["k"] = w.k;
    j["x_p"] = w.x_p;
    j["y_p"] = w.y_p;
    j["components"] = comps;
    j["predicted"] = w.predicted;
    j["verified"] = w.verified;
    j["materialized"] = w.materialized ? json(*w.materialized) : json(nullptr);
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  out << "case: " << to_string(w.kase) << "\n";
  out << "phase pair: " << event_labels(s, w.phase.a) << " " << event_labels(s, w.phase.b)
      << "  r=" << num(w.phase.r) << " theta=" << num(w.phase.theta) << "\n";
  out << "negative-determinant subset: {" << subset << "}  det=" << num(w.neg_det.det) << "\n";
  out << "ee=" << num(w.sums.ee) << " eo=" << num(w.sums.eo) << "\n";
  out << "k=" << w.k << " p=" << w.p << " q=" << w.q;
  if (w.kase != WitnessCase::A) out << "  x_p=" << num(w.x_p) << " y_p=" << num(w.y_p);
  out << "\ncomponents (" << comps.size() << "):\n";
  for (const auto& line : comps) out << "  " << line << "\n";
  out << "predicted: " << num(w.predicted) << "\n";
  out << "verified:  " << num(w.verified) << "\n";
  if (w.materialized) {
    out << "materialized: " << num(*w.materialized) << "\n";
  } else {
    out << "materialized: skipped (" << s.size() << "^" << w.k << " atoms)\n";
  }
  return kExitOk;
}

int cmd_probe(const std::string& path, const std::vector<std::string>& tokens, const Common& c,
              std::ostream& out, std::ostream& err) {
  const auto tol = Tolerance::uniform(c.eps);
  const auto s = load(path, tol);
  Vector v;
  if (tokens.empty()) {
    v = is_strongly_positive(s, tol).min_eigenvector;
  } else {
    if (tokens.size() != s.size()) {
      err << "probe: --vector has " << tokens.size() << " entries for " << s.size()
          << " atoms\n";
      return kExitParse;
    }
    v.resize(static_cast<Eigen::Index>(tokens.size()));
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto z = parse_complex(tokens[i]);
      if (!z) {
        err << "probe: cannot parse vector entry '" << tokens[i] << "'\n";
        return kExitParse;
      }
      v(static_cast<Eigen::Index>(i)) = *z;
    }
  }
  const auto r = probe_quadratic_form(s, v);
  const double direct = (v.adjoint() * s.matrix() * v)(0, 0).real() / r.rho;

  if (c.json) {
    json vec = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) vec.push_back(complex_json(v(i)));
    out << json{{"vector", vec}, {"value", r.value}, {"rho", r.rho}, {"direct", direct}}.dump(2)
        << "\n";
    return kExitOk;
  }
  out << "vector:";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << " " << num(v(i));
  out << "\nrho: " << num(r.rho) << "\nvalue: " << num(r.value)
      << "\nv^dagger M v / rho: " << num(direct) << "\n";
  return kExitOk;
}

int cmd_gen(std::string kind, std::size_t atoms, std::uint64_t seed, const std::string& output,
            const Common& c, std::ostream& out, std::ostream& err) {
  const auto k = parse_kind(kind);
  if (!k) {
    err << "gen: unknown kind '" << kind << "'\n";
    return kExitParse;
  }
  const auto s = generate({*k, atoms, seed}, Tolerance::uniform(c.eps));
  if (output.empty()) {
    out << write_document(s);
  } else {
    write_document_file(output, s);
    out << "wrote " << output << " (" << to_string(*k) << ", " << atoms << " atoms, seed "
        << seed << ")\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, const Common& c, std::ostream& out) {
  const auto tol = Tolerance::uniform(c.eps);
  const auto doc = read_document_file(path);
  const auto report = check_axioms(doc.matrix, tol);
  std::optional<bool> sum_rule;
  if (report.ok()) sum_rule = check_quantal_sum_rule(to_system(doc, tol), tol);
  const bool ok = report.ok() && sum_rule.value_or(false);

  if (c.json) {
    json j;
    j["hermitian"] = report.hermitian;
    j["normalized"] = report.normalized;
    j["entry_sum"] = complex_json(report.entry_sum);
    j["additive"] = "by construction";
    j["quantal_sum_rule"] = sum_rule ? json(*sum_rule) : json(nullptr);
    j["weakly_positive"] =
        report.weakly_positive ? json(*report.weakly_positive) : json(nullptr);
    j["ok"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "hermitian:        " << yes(report.hermitian);
    if (report.hermitian_violation) {
      out << "   at (" << report.hermitian_violation->first << ","
          << report.hermitian_violation->second << ")";
    }
    out << "\nnormalized:       " << yes(report.normalized) << "   sum " << num(report.entry_sum)
        << "\nadditive:         by construction\n";
    out << "quantal sum rule: " << (sum_rule ? yes(*sum_rule) : "not checked") << "\n";
    out << "weakly positive:  "
        << (report.weakly_positive ? yes(*report.weakly_positive) : "not checked") << "\n";
    out << (ok ? "ok" : "FAILED") << "\n";
  }
  return ok ? kExitOk : kExitAxiom;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view token) {
  auto real = [](std::string_view s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return std::nullopt;
    return v;
  };
  if (token.empty()) return std::nullopt;
  if (token.back() != 'i') {
    const auto v = real(token);
    return v ? std::optional<Complex>(Complex(*v, 0.0)) : std::nullopt;
  }
  token.remove_suffix(1);
  // Split at the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = token.size(); i-- > 1;) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view re = split == std::string_view::npos ? "" : token.substr(0, split);
  std::string_view im = split == std::string_view::npos ? token : token.substr(split);
  std::optional<double> imv;
  if (im.empty() || im == "+") {
    imv = 1.0;
  } else if (im == "-") {
    imv = -1.0;
  } else {
    if (im.front() == '+') im.remove_prefix(1);
    imv = real(im);
  }
  const auto rev = re.empty() ? std::optional<double>(0.0) : real(re);
  if (!imv || !rev) return std::nullopt;
  return Complex(*rev, *imv);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quantum measure systems: classify, compose, witness, probe, gen, verify",
               "qmt"};
  app.require_subcommand(1);

  Common common;
  std::string path, path_b, output, kind_opt = "strong", kind_pos;
  std::vector<std::string> vector_tokens;
  unsigned qmax = 64;
  std::size_t atoms_opt = 2, atoms_pos = 0;
  std::uint64_t seed_opt = 0, seed_pos = 0;

  auto* classify_cmd = app.add_subcommand("classify", "positivity classes with witnesses");
  classify_cmd->add_option("path", path, "system document")->required();
  add_common(classify_cmd, common);

  auto* compose_cmd = app.add_subcommand("compose", "tensor composition of two systems");
  compose_cmd->add_option("first", path, "first factor")->required();
  compose_cmd->add_option("second", path_b, "second factor")->required();
  compose_cmd->add_option("-o,--output", output, "output document (default stdout)");
  add_common(compose_cmd, common);

  auto* witness_cmd = app.add_subcommand("witness", "negative event in a self-composition");
  witness_cmd->add_option("path", path, "system document")->required();
  witness_cmd->add_option("--qmax", qmax, "cap on q in subcase (iii)")->capture_default_str();
  add_common(witness_cmd, common);

  auto* probe_cmd = app.add_subcommand("probe", "probe-system quadratic form over the atoms");
  probe_cmd->add_option("path", path, "system document")->required();
  probe_cmd->add_option("--vector", vector_tokens,
                        "probe vector entries (default: lowest eigenvector)");
  add_common(probe_cmd, common);

  auto* gen_cmd = app.add_subcommand("gen", "seeded random system of a given class");
  gen_cmd->add_option("KIND", kind_pos, "kind (positional form)");
  gen_cmd->add_option("ATOMS", atoms_pos, "atom count (positional form)");
  gen_cmd->add_option("SEED", seed_pos, "seed (positional form)");
  gen_cmd->add_option("--kind", kind_opt, "strong|posentry|classical|"
                                          "weak_not_strong_not_posentry|hermitian_only")
      ->capture_default_str();
  gen_cmd->add_option("--atoms", atoms_opt, "atom count")->capture_default_str();
  gen_cmd->add_option("--seed", seed_opt, "seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", output, "output document (default stdout)");
  add_common(gen_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "axioms and quantal sum rule");
  verify_cmd->add_option("path", path, "system document")->required();
  add_common(verify_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (!(common.eps >= 0.0)) {
      err << "--eps must be non-negative\n";
      return kExitParse;
    }
    if (classify_cmd->parsed()) return cmd_classify(path, common, out);
    if (compose_cmd->parsed()) return cmd_compose(path, path_b, output, common, out);
    if (witness_cmd->parsed()) return cmd_witness(path, qmax, common, out);
    if (probe_cmd->parsed()) return cmd_probe(path, vector_tokens, common, out, err);
    if (gen_cmd->parsed()) {
      const bool pos = gen_cmd->count("KIND") > 0;
      return cmd_gen(pos ? kind_pos : kind_opt,
                     gen_cmd->count("ATOMS") ? atoms_pos : atoms_opt,
                     gen_cmd->count("SEED") ? seed_pos : seed_opt, output, common, out, err);
    }
    if (verify_cmd->parsed()) return cmd_verify(path, common, out);
  } catch (const Error& e) {
    err << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace qmt::cli
