#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liecurv/util.hpp"
#include "liecurv/verify.hpp"

using json = nlohmann::ordered_json;
using namespace liecurv;

namespace {

struct CommonOpts {
  std::string format = "table";
  std::string output;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  sub->add_option("-o,--output", o.output, "write the report to this file");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InputError("cannot open output file: '" + o.output + "'");
  f << text;
}

std::string fmt(double v) { return format_significant(v, 12); }

std::string metric_text(const Metric4<Rational>& u) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i)
    s += std::string(i ? ", " : "") + to_fraction_string(u[i]);
  return s + ")";
}

std::string metric_text(const Metric4<double>& u) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) s += std::string(i ? ", " : "") + fmt(u[i]);
  return s + ")";
}

struct Pipeline {
  RootSystemData rs;
  CompactBasis cb;
};

Pipeline build_pipeline(const std::string& type) {
  Pipeline p;
  p.rs = build_root_system(parse_cartan_type(type));
  p.cb = compact_form(build_chevalley(p.rs));
  return p;
}

std::vector<int> parse_marks(const std::string& text, int rank) {
  if (static_cast<int>(text.size()) != rank)
    throw InputError("marks must be " + std::to_string(rank) +
                     " digits, got '" + text + "'");
  std::vector<int> marks;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw InputError("marks must be 0 or 1 digits, got '" + text + "'");
    marks.push_back(c - '0');
  }
  return marks;
}

Metric4<Rational> parse_metric(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    throw InputError("--u expects four comma-separated values");
  Metric4<Rational> u;
  for (int i = 0; i < 4; ++i) u[i] = parse_rational(parts[i]);
  require_positive(u);
  return u;
}

int run_algebra(const std::string& type, const CommonOpts& opts) {
  CartanType ct = parse_cartan_type(type);
  Pipeline p = build_pipeline(type);
  JacobiReport jac = jacobi_check(p.cb.table);
  if (!jac.pass)
    throw ConstructionError("Jacobi identity failed: " + jac.detail);
  int roots = static_cast<int>(2 * p.rs.positive.size());

  if (opts.format == "json") {
    json out;
    out["type"] = ct.name();
    out["rank"] = p.rs.rank;
    out["dimension"] = p.cb.dim;
    out["roots"] = roots;
    out["positive_roots"] = roots / 2;
    out["jacobi"] = "pass";
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "type: " << ct.name() << "\n"
       << "rank: " << p.rs.rank << "\n"
       << "dimension: " << p.cb.dim << "\n"
       << "roots: " << roots << " (" << roots / 2 << " positive)\n"
       << "jacobi: pass\n";
    emit(opts, os.str());
  }
  return 0;
}

int run_decompose(const std::string& theta_text, const std::string& tau_text,
                  const CommonOpts& opts) {
  Pipeline p = build_pipeline("F4");
  auto theta = involution_from_marks(p.rs, {parse_marks(theta_text, p.rs.rank)});
  auto tau = involution_from_marks(p.rs, {parse_marks(tau_text, p.rs.rank)});
  GradedDecomposition dec = joint_decomposition(theta, tau, p.cb);

  std::string fix_theta = identify_type(fixed_subalgebra(theta, p.cb)).name();
  std::string fix_tau = identify_type(fixed_subalgebra(tau, p.cb)).name();
  std::string fix_both =
      identify_type(fixed_subalgebra(compose(theta, tau), p.cb)).name();
  std::string joint_type =
      identify_type(restrict_table(p.cb, dec.blocks[0])).name();

  if (opts.format == "json") {
    json out;
    out["theta"] = theta_text;
    out["tau"] = tau_text;
    out["dims"] = dec.dims;
    out["fixed"] = {{"theta", fix_theta},
                    {"tau", fix_tau},
                    {"theta-tau", fix_both}};
    json blocks = json::array();
    for (int b = 0; b < 4; ++b) {
      json blk;
      blk["name"] = "h" + std::to_string(b + 1);
      blk["dim"] = dec.dims[b];
      if (b == 0) blk["type"] = joint_type;
      blocks.push_back(blk);
    }
    out["blocks"] = blocks;
    json grading = json::array();
    for (int i = 0; i < 4; ++i) {
      json row = json::array();
      for (int j = 0; j < 4; ++j) row.push_back(klein_target(i, j) + 1);
      grading.push_back(row);
    }
    out["grading"] = grading;
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "theta marks: " << theta_text << "\n"
       << "tau marks: " << tau_text << "\n"
       << "block dims:";
    for (int b = 0; b < 4; ++b) os << " " << dec.dims[b];
    os << "\n"
       << "fixed(theta): " << fix_theta << "\n"
       << "fixed(tau): " << fix_tau << "\n"
       << "fixed(theta*tau): " << fix_both << "\n"
       << "joint block h1: " << joint_type << " (dim " << dec.dims[0] << ")\n"
       << "grading targets:\n";
    for (int i = 0; i < 4; ++i) {
      os << " ";
      for (int j = 0; j < 4; ++j) os << " " << klein_target(i, j) + 1;
      os << "\n";
    }
    emit(opts, os.str());
  }
  return 0;
}

json bracket_list(const TripleBracketTable& tb) {
  json arr = json::array();
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (tb.t[k][i][j] != 0) {
          json entry;
          entry["k"] = k + 1;
          entry["i"] = i + 1;
          entry["j"] = j + 1;
          entry["value"] = to_fraction_string(tb.t[k][i][j]);
          arr.push_back(entry);
        }
  return arr;
}

int run_ricci(const std::string& u_text, std::vector<std::string> paths,
              const std::string& normalization, const CommonOpts& opts) {
  Metric4<Rational> u = parse_metric(u_text);
  if (paths.empty()) paths = {"closed", "brackets", "connection"};

  Pipeline p = build_pipeline("F4");
  auto theta = involution_from_marks(p.rs, {{0, 0, 0, 1}});
  auto tau = involution_from_marks(p.rs, {{0, 0, 1, 0}});
  GradedDecomposition dec = joint_decomposition(theta, tau, p.cb);
  CasimirMatrix cm = casimir_matrix(dec, p.cb);
  TripleBracketTable nk = triple_brackets(dec, p.cb, "negative-killing");

  std::vector<std::pair<std::string, Metric4<Rational>>> results;
  for (const char* name : {"closed", "brackets", "connection"}) {
    bool wanted = false;
    for (const auto& s : paths)
      if (s == name) wanted = true;
    if (!wanted) continue;
    Metric4<Rational> r;
    if (std::string(name) == "closed") {
      r = ricci_closed_form(u, cm);
    } else if (std::string(name) == "brackets") {
      std::vector<Rational> y(4);
      for (int k = 0; k < 4; ++k) y[k] = u[k] / 18;
      std::vector<Rational> v = ricci_triple_bracket(y, nk);
      for (int k = 0; k < 4; ++k) r[k] = v[k];
    } else {
      r = ricci_connection_path(u, p.cb, dec);
    }
    results.emplace_back(name, r);
  }

  Rational disagreement(0);
  for (std::size_t a = 0; a < results.size(); ++a)
    for (std::size_t b = a + 1; b < results.size(); ++b)
      for (int k = 0; k < 4; ++k) {
        Rational d = abs(results[a].second[k] - results[b].second[k]);
        if (d > disagreement) disagreement = d;
      }

  const Metric4<Rational>& r0 = results.front().second;
  Rational lo = r0[0], hi = r0[0];
  for (int k = 1; k < 4; ++k) {
    if (r0[k] < lo) lo = r0[k];
    if (r0[k] > hi) hi = r0[k];
  }
  bool einstein = lo == hi;
  Rational spread = hi - lo;
  ClassificationResult cls = naturally_reductive_test(u);

  if (opts.format == "json") {
    json out;
    json uj = json::array();
    for (int i = 0; i < 4; ++i) uj.push_back(to_fraction_string(u[i]));
    out["u"] = uj;
    json cmj = json::array();
    for (int i = 0; i < 4; ++i) {
      json row = json::array();
      for (int j = 0; j < 4; ++j)
        row.push_back(to_fraction_string(cm.c[i][j]));
      cmj.push_back(row);
    }
    out["casimir_matrix"] = cmj;
    json tbj;
    if (normalization == "long-root-2" || normalization == "both")
      tbj["long-root-2"] = bracket_list(triple_brackets(dec, p.cb, "long-root-2"));
    if (normalization == "negative-killing" || normalization == "both")
      tbj["negative-killing"] = bracket_list(nk);
    out["triple_brackets"] = tbj;
    json rj;
    for (const auto& [name, r] : results) {
      json row = json::array();
      for (int k = 0; k < 4; ++k) row.push_back(to_fraction_string(r[k]));
      rj[name] = row;
    }
    out["ricci"] = rj;
    out["max_disagreement"] = to_fraction_string(disagreement);
    out["einstein"] = einstein;
    if (einstein) out["einstein_constant"] = to_fraction_string(r0[0]);
    out["classification"] = cls.label();
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "u: " << metric_text(u) << "\n";
    for (const auto& [name, r] : results) {
      os << std::left << std::setw(12) << (name + std::string(":"));
      for (int k = 0; k < 4; ++k) os << " " << to_fraction_string(r[k]);
      os << "\n";
    }
    os << "max disagreement: " << to_fraction_string(disagreement) << "\n";
    if (einstein) {
      os << "verdict: Einstein, constant " << to_fraction_string(r0[0])
         << " = " << fmt(to_double(r0[0])) << "\n";
    } else {
      os << "verdict: not Einstein (component spread "
         << to_fraction_string(spread) << " = " << fmt(to_double(spread))
         << ")\n";
    }
    os << "classification: " << cls.label() << "\n";
    emit(opts, os.str());
  }
  return 0;
}

int run_solve(double tol, const CommonOpts& opts) {
  Pipeline p = build_pipeline("F4");
  auto theta = involution_from_marks(p.rs, {{0, 0, 0, 1}});
  auto tau = involution_from_marks(p.rs, {{0, 0, 1, 0}});
  GradedDecomposition dec = joint_decomposition(theta, tau, p.cb);
  std::vector<EinsteinSolution> all = enumerate_solutions(p.cb, dec);

  std::vector<EinsteinSolution> sols;
  for (const auto& s : all)
    if (s.residual <= tol) sols.push_back(s);

  if (opts.format == "json") {
    json out;
    json arr = json::array();
    for (const auto& s : sols) {
      json row;
      json uj = json::array();
      if (s.exact) {
        for (int i = 0; i < 4; ++i) uj.push_back(to_fraction_string(s.u_exact[i]));
        row["u"] = uj;
        row["constant"] = to_fraction_string(s.constant_exact);
      } else {
        for (int i = 0; i < 4; ++i) uj.push_back(s.u[i]);
        row["u"] = uj;
        row["constant"] = s.constant;
      }
      row["residual"] = s.residual;
      row["exact"] = s.exact;
      row["classification"] = s.classification.label();
      row["provenance"] = s.provenance;
      arr.push_back(row);
    }
    out["solutions"] = arr;
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << sols.size() << " solutions (residual <= " << fmt(tol) << ")\n";
    int n = 0;
    for (const auto& s : sols) {
      os << ++n << "  u = "
         << (s.exact ? metric_text(s.u_exact) : metric_text(s.u))
         << "  constant = "
         << (s.exact ? to_fraction_string(s.constant_exact) : fmt(s.constant))
         << "  residual = " << fmt(s.residual) << "  " << s.classification.label()
         << " [" << s.provenance << "]\n";
    }
    emit(opts, os.str());
  }
  return 0;
}

int run_verify(const CommonOpts& opts) {
  Pipeline p = build_pipeline("F4");
  auto theta = involution_from_marks(p.rs, {{0, 0, 0, 1}});
  auto tau = involution_from_marks(p.rs, {{0, 0, 1, 0}});
  GradedDecomposition dec = joint_decomposition(theta, tau, p.cb);
  VerifyReport rep = verify_paper_claims(p.rs, p.cb, dec);

  if (opts.format == "json") {
    json out;
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json row;
      row["name"] = c.name;
      row["pass"] = c.pass;
      row["expected"] = c.expected;
      row["computed"] = c.computed;
      checks.push_back(row);
    }
    out["checks"] = checks;
    out["all_pass"] = rep.all_pass();
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    int passed = 0;
    for (const auto& c : rep.checks) {
      os << "[" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "\n"
         << "       expected: " << c.expected << "\n"
         << "       computed: " << c.computed << "\n";
      if (c.pass) ++passed;
    }
    os << passed << "/" << rep.checks.size() << " checks passed\n";
    if (!rep.all_pass()) {
      os << "failed:";
      for (const auto& c : rep.checks)
        if (!c.pass) os << " " << c.name;
      os << "\n";
    }
    emit(opts, os.str());
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact curvature toolkit for left-invariant metrics on compact simple "
      "Lie groups"};
  app.require_subcommand(1);

  std::string type;
  CommonOpts alg_opts;
  CLI::App* alg = app.add_subcommand(
      "algebra", "build a compact simple algebra and report its integrity");
  alg->add_option("--type", type, "Cartan type, e.g. f4")->required();
  add_common(alg, alg_opts);

  std::string theta_text = "0001", tau_text = "0010";
  CommonOpts dec_opts;
  CLI::App* dec = app.add_subcommand(
      "decompose", "split F4 under a commuting pair of involutions");
  dec->add_option("--theta", theta_text, "marks of the first involution")
      ->capture_default_str();
  dec->add_option("--tau", tau_text, "marks of the second involution")
      ->capture_default_str();
  add_common(dec, dec_opts);

  std::string u_text;
  std::vector<std::string> paths;
  std::string normalization = "both";
  CommonOpts ric_opts;
  CLI::App* ric = app.add_subcommand(
      "ricci", "Ricci eigenvalues of a diagonal metric on the F4 blocks");
  ric->add_option("--u", u_text, "metric coefficients u1,u2,u3,u4")->required();
  ric->add_option("--path", paths, "computation paths to run")
      ->check(CLI::IsMember({"closed", "brackets", "connection"}));
  ric->add_option("--normalization", normalization,
                  "triple-bracket listings to include in JSON output")
      ->check(CLI::IsMember({"long-root-2", "negative-killing", "both"}))
      ->capture_default_str();
  add_common(ric, ric_opts);

  double tol = 1e-10;
  CommonOpts sol_opts;
  CLI::App* sol = app.add_subcommand(
      "solve", "enumerate the Einstein metrics of the diagonal family");
  sol->add_option("--tol", tol, "largest residual accepted as a solution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(sol, sol_opts);

  CommonOpts ver_opts;
  CLI::App* ver = app.add_subcommand(
      "verify-paper", "run the complete cross-check battery");
  add_common(ver, ver_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (*alg) return run_algebra(type, alg_opts);
    if (*dec) return run_decompose(theta_text, tau_text, dec_opts);
    if (*ric) return run_ricci(u_text, paths, normalization, ric_opts);
    if (*sol) return run_solve(tol, sol_opts);
    if (*ver) return run_verify(ver_opts);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const InvolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
