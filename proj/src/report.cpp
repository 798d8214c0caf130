#include "qoper/report.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qoper/random_matrices.hpp"
#include "qoper/wronskian.hpp"

namespace qoper {

using nlohmann::json;

void Report::add(CheckRecord c) {
  if (!std::isfinite(c.sup_residual)) {
    c.witnesses.push_back("non-finite residual");
    c.sup_residual = 1e300;
    c.pass = false;
  }
  checks.push_back(std::move(c));
}

void Report::finish() {
  exit_code = 0;
  for (const auto& c : checks)
    if (c.counts && !c.pass) exit_code = 1;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Report& r;
  std::string name;
  Clock::time_point t0 = Clock::now();
  ~Timer() { r.timings.emplace_back(name, std::chrono::duration<double>(Clock::now() - t0).count()); }
};

std::string word_label(const WeylWord& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int a : w) s += "s" + std::to_string(a + 1);
  return s;
}

CheckRecord check(std::string name, std::string kw, int i, double sup, double tol) {
  CheckRecord c;
  c.name = std::move(name);
  c.k_or_word = std::move(kw);
  c.i = i;
  c.sup_residual = sup;
  c.pass = sup <= tol;
  return c;
}

double check_tol(const RunOptions& o) { return o.tol.value_or(1e-8); }

json roots_json(const std::vector<std::vector<Scalar>>& roots) {
  json a = json::array();
  for (const auto& node : roots) {
    json b = json::array();
    for (auto w : node) b.push_back(complex_json(w));
    a.push_back(b);
  }
  return a;
}

json solution_json(const QQSolution& s) {
  json qp = json::array(), qm = json::array();
  for (const auto& p : s.qplus) qp.push_back(poly_json(p));
  for (const auto& p : s.qminus) qm.push_back(poly_json(p));
  return {{"qplus", qp}, {"qminus", qm}};
}

double max_abs(const std::vector<Scalar>& v) {
  double m = 0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

void solution_checks(Report& rep, const QQInstance& inst, const QQSolution& sol, const std::string& label,
                     double tol, bool nondeg_counts = true) {
  double br = 0;
  CheckRecord b;
  try {
    br = max_abs(bethe_residual(inst, sol.qplus));
    b = check("bethe_residual", label, 0, br, tol);
  } catch (const std::exception& e) {
    b = check("bethe_residual", label, 0, 1.0, tol);
    b.pass = false;
    b.witnesses.push_back(e.what());
  }
  rep.add(b);
  rep.add(check("qq_residual", label, 0, qq_residual_norm(inst, sol), tol));
  auto nd = nondegenerate(inst, sol, inst.window());
  CheckRecord n = check("nondegenerate", label, 0, nd.pass ? 0.0 : 1.0, 0.5);
  n.witnesses = nd.witnesses;
  n.counts = nondeg_counts;
  rep.add(n);
}

QQSolution acquire_solution(Report& rep, const InstanceFile& f, const RunOptions& opt) {
  if (f.solution) return *f.solution;
  BetheOptions bo;
  bo.seeds = opt.seeds;
  bo.tol = f.inst.tol.bethe_tol;
  bo.parallel = opt.parallel;
  auto res = solve_bethe(f.inst, bo);
  if (res.solutions.empty()) throw std::runtime_error("no solution available: " +
                                                       (res.diagnostics.empty() ? std::string("solver found none")
                                                                                : res.diagnostics.back()));
  rep.diagnostics.push_back("solution taken from solve_bethe (first of " + std::to_string(res.solutions.size()) + ")");
  return res.solutions.front();
}

InstanceFile with_seed(InstanceFile f, const RunOptions& opt) {
  if (opt.seed) f.inst.seed = *opt.seed;
  return f;
}

void full_qq_checks(Report& rep, const QQInstance& inst, const FullQQSystem& full, double tol) {
  CheckRecord p = check("qq_path_independence", "W", 0, full.path_discrepancy, tol);
  p.pass = p.pass && full.path_independent;
  rep.add(p);
  CheckRecord g = check("qq_full_residual", "W", 0, full.max_residual, tol);
  g.witnesses = full.refusals;
  if (!full.generic) {
    g.pass = false;
    g.witnesses.push_back("table incomplete: W-genericity fails along the exploration");
  }
  rep.add(g);
  json table = json::array();
  for (size_t e = 0; e < full.group.elements.size(); ++e) {
    json row = {{"word", word_label(full.group.elements[e].word)}};
    json zs = json::array();
    for (auto z : full.twists[e]) zs.push_back(complex_json(z));
    row["twist"] = zs;
    if (full.table[e]) {
      json qs = json::array();
      for (const auto& q : *full.table[e]) qs.push_back(poly_json(q));
      row["qplus"] = qs;
    } else {
      row["qplus"] = nullptr;
    }
    table.push_back(row);
  }
  rep.body["full_qq"] = {{"generic", full.generic},
                         {"path_independent", full.path_independent},
                         {"refusals", full.refusals},
                         {"digest", sha256_hex(table.dump())},
                         {"table", table}};
  (void)inst;
}

void wronskian_battery(Report& rep, const QQInstance& inst, const QQSolution& sol, double tol) {
  const auto& c = inst.cartan;
  if (c.lie_type != 'A') {
    rep.body["wronskian"] = "skipped: type A only";
    return;
  }
  if (!wronskian_ordering(c)) {
    rep.body["wronskian"] = "skipped: the Wronskian realisation needs ordering (r, ..., 1)";
    return;
  }
  Timer t{rep, "wronskian"};
  const int r = c.rank, n = r + 1;
  FullQQSystem full = full_qq_system(inst, sol);
  WronskianBuild wb;
  try {
    wb = build_wronskian(inst, full);
  } catch (const InputError& e) {
    rep.body["wronskian"] = std::string("skipped: ") + e.what();
    CheckRecord k = check("wronskian_build", "-", 0, 1.0, tol);
    k.pass = false;
    k.witnesses.push_back(e.what());
    rep.add(k);
    return;
  }
  const CRatMatrix& W = wb.W;
  rep.add(check("wronskian_closed_form", "-", 0, wb.closed_form_mismatch, tol));
  auto pts = sample_panel(20, 0.8, 41);
  rep.add(check("wronskian_det", "-", 0,
                panel_sup(pts, [&](Scalar z) { return std::abs(W.eval(z).determinant() - 1.0); }).sup, tol));

  for (const auto& row : check_wronskian_equations(W, inst)) {
    // beyond k + i <= r the recurrence would force f(q^{k+1} z) to be proportional to lower shifts
    bool attainable = row.k + row.i + 1 <= r;
    CheckRecord k = check(attainable ? "wronskian_eq" : "wronskian_eq_unattainable", "k=" + std::to_string(row.k),
                          row.i + 1, row.sup, tol);
    k.counts = attainable;
    rep.add(k);
  }
  for (int i = 0; i < r; ++i) {
    double sup = 0;
    std::string worst;
    for (const auto& el : full.group.elements) {
      double s = check_shifted_minor_relation(W, inst, el.word, i);
      if (s >= sup) {
        sup = s;
        worst = word_label(el.word);
      }
    }
    CheckRecord k = check("shifted_minor", "W", i + 1, sup, tol);
    k.witnesses.push_back("worst w = " + worst);
    rep.add(k);
  }
  {
    // Q+^{w,i} is proportional to the minor with rows w^{-1}({1..i})
    double sup = 0;
    const Scalar z0(0.41, 0.29);
    for (size_t e = 0; e < full.group.elements.size(); ++e) {
      if (!full.table[e]) continue;
      WeylWord inv(full.group.elements[e].word.rbegin(), full.group.elements[e].word.rend());
      for (int i = 0; i < r; ++i) {
        CRat minor = generalized_minor(W, inv, {}, i, c);
        const CPoly& Q = (*full.table[e])[i];
        Scalar scale = minor.eval(z0) / Q(z0);
        sup = std::max(sup, panel_sup(pts, [&](Scalar z) {
                              Scalar a = minor.eval(z), b = scale * Q(z);
                              return std::abs(a - b) / (1.0 + std::abs(b));
                            }).sup);
      }
    }
    rep.add(check("minor_dictionary", "W", 0, sup, tol));
  }
  for (int i = 0; i < r; ++i) {
    double sup = 0;
    for (const auto& u : full.group.elements)
      for (const auto& v : full.group.elements)
        if (length_increases(u.word, i, c) && length_increases(v.word, i, c))
          sup = std::max(sup, check_fundamental_relation(W, u.word, v.word, i, c, 8));
    rep.add(check("fundamental_relation", "admissible-u-v", i + 1, sup, tol));
  }
  for (int i = 2; i <= n && n >= 3; ++i) rep.add(check("lewis_carroll", "-", i, check_lewis_carroll(W, i), tol));

  auto gauss_ok = [&](const CRatMatrix& M, const std::string& label) {
    CheckRecord k = check("gauss", label, 0, 0.0, tol);
    try {
      auto g = gauss_decompose(M);
      k.sup_residual = panel_sup(pts, [&](Scalar z) {
                         CMat rec = g.n_minus.eval(z) * g.h.eval(z) * g.n_plus.eval(z), m = M.eval(z);
                         return (rec - m).cwiseAbs().maxCoeff() / (1.0 + m.cwiseAbs().maxCoeff());
                       }).sup;
      k.pass = k.sup_residual <= tol;
    } catch (const GaussError& e) {
      k.pass = false;
      k.sup_residual = 1.0;
      k.witnesses.push_back(e.what());
    }
    rep.add(k);
  };
  gauss_ok(W, "e");
  const auto& w0 = full.group.elements[full.group.longest].word;
  gauss_ok(CRatMatrix::constant(word_lift(w0, n)) * W, word_label(w0));

  try {
    auto m = miura_from_wronskian(W, inst, sol);
    rep.add(check("miura_reconstruction", "-", 0, m.product_residual, tol));
    rep.add(check("miura_cartan", "-", 0, m.cartan_residual, tol));
    rep.add(check("miura_oper_shape", "-", 0, m.upper_residual, tol));
    const CRatMatrix A = build_miura_A(inst, sol);
    for (int i = 0; i < r; ++i) {
      auto pb = miura_plucker_blocks(A, m.v, inst, i);
      rep.add(check("plucker_block", "-", i + 1, std::max(pb.residual, pb.shape_residual), tol));
    }
  } catch (const GaussError& e) {
    CheckRecord k = check("miura_reconstruction", "-", 0, 1.0, tol);
    k.pass = false;
    k.witnesses.push_back(e.what());
    rep.add(k);
  }
  for (int s = 0; s < r; ++s) {
    auto tw = weyl_twist(W, {s}, inst);
    double sup = 0;
    for (const auto& row : check_wronskian_equations(tw.W, tw.inst, 0))
      sup = std::max(sup, row.sup);
    rep.add(check("weyl_twist", word_label({s}), 0, sup, tol));
  }
  rep.body["wronskian"] = "built";
  json col = json::array();
  for (int k = 0; k < n; ++k) col.push_back(poly_json(W(k, 0).num()));
  rep.body["wronskian_first_column"] = col;
}

}  // namespace

Report run_solve(const InstanceFile& f0, const RunOptions& opt) {
  InstanceFile f = with_seed(f0, opt);
  Report rep;
  rep.command = "solve";
  rep.instance = serialize_instance(f);
  if (q_on_unit_circle(f.inst)) rep.diagnostics.push_back("warning: |q| = 1");
  BetheOptions bo;
  bo.seeds = opt.seeds;
  bo.tol = f.inst.tol.bethe_tol;
  bo.parallel = opt.parallel;
  BetheResult res;
  {
    Timer t{rep, "solve_bethe"};
    res = solve_bethe(f.inst, bo);
  }
  const double tol = opt.tol.value_or(std::max(10 * f.inst.tol.bethe_tol, 1e-8));
  json sols = json::array();
  for (size_t s = 0; s < res.solutions.size(); ++s) {
    json j = solution_json(res.solutions[s]);
    j["bethe_roots"] = roots_json(res.roots[s]);
    sols.push_back(j);
    // the nondegeneracy verdict is reported, not enforced: solve finds solutions, verify judges them
    solution_checks(rep, f.inst, res.solutions[s], "sol=" + std::to_string(s), tol, false);
  }
  rep.body["solutions"] = sols;
  rep.body["seeds"] = opt.seeds;
  rep.body["converged_seeds"] = res.converged;
  rep.body["discarded"] = res.discarded;
  for (const auto& d : res.diagnostics) rep.diagnostics.push_back(d);
  CheckRecord found = check("solutions_found", "-", 0, res.solutions.empty() ? 1.0 : 0.0, 0.5);
  rep.add(found);
  rep.finish();
  return rep;
}

Report run_verify(const InstanceFile& f0, const RunOptions& opt) {
  InstanceFile f = with_seed(f0, opt);
  if (!f.solution) throw InputError("verify: the instance file has no solution block");
  Report rep;
  rep.command = "verify";
  rep.instance = serialize_instance(f);
  const double tol = check_tol(opt);
  const auto& inst = f.inst;
  const auto& sol = *f.solution;
  for (int i = 0; i < inst.rank(); ++i)
    if ((int)sol.qplus[i].degree() != inst.degrees[i])
      throw InputError("verify: deg Q+^" + std::to_string(i + 1) + " differs from degrees[" + std::to_string(i) + "]");
  {
    Timer t{rep, "qq"};
    solution_checks(rep, inst, sol, "given", tol);
  }
  bool small = weyl_group_order(inst.cartan) <= kWeylGuard;
  if (small) {
    Timer t{rep, "full_qq"};
    full_qq_checks(rep, inst, full_qq_system(inst, sol), tol);
  } else {
    rep.body["full_qq"] = "skipped: Weyl group above the enumeration guard";
  }
  wronskian_battery(rep, inst, sol, tol);
  rep.finish();
  return rep;
}

Report run_backlund(const InstanceFile& f0, const RunOptions& opt) {
  InstanceFile f = with_seed(f0, opt);
  Report rep;
  rep.command = "backlund";
  rep.instance = serialize_instance(f);
  const double tol = check_tol(opt);
  WeylWord word;
  {
    std::stringstream ss(opt.word);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int a = 0;
      try {
        size_t used = 0;
        a = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("--word: bad letter '" + tok + "'");
      }
      if (a < 1 || a > f.inst.rank())
        throw InputError("--word: letter " + std::to_string(a) + " out of range 1.." + std::to_string(f.inst.rank()));
      word.push_back(a - 1);
    }
  }
  QQSolution sol = acquire_solution(rep, f, opt);
  QQInstance inst = f.inst;
  QQSolution cur = sol;
  json steps = json::array();
  bool refused = false;
  for (size_t s = 0; s < word.size(); ++s) {
    try {
      auto st = backlund_step(inst, cur, word[s]);
      json zb = json::array(), za = json::array();
      for (auto z : st.record.Z_before) zb.push_back(complex_json(z));
      for (auto z : st.record.Z_after) za.push_back(complex_json(z));
      steps.push_back({{"node", word[s] + 1},
                       {"Z_before", zb},
                       {"Z_after", za},
                       {"q_swapped_in", poly_json(st.record.q_swapped_in)},
                       {"q_minus_new", poly_json(st.record.q_minus_new)},
                       {"nondegenerate", st.record.nondeg_report.pass},
                       {"witnesses", st.record.nondeg_report.witnesses}});
      rep.add(check("backlund_residual", "step=" + std::to_string(s + 1), word[s] + 1, st.record.residual, tol));
      inst = st.inst;
      cur = st.sol;
    } catch (const BacklundRefusal& e) {
      CheckRecord k = check("backlund_refusal", "step=" + std::to_string(s + 1), word[s] + 1, 1.0, tol);
      k.pass = false;
      k.witnesses.push_back(e.what());
      rep.add(k);
      steps.push_back({{"node", word[s] + 1}, {"refused", e.what()}});
      refused = true;
      break;
    }
  }
  rep.body["steps"] = steps;
  rep.body["final"] = solution_json(cur);
  if (!refused && !word.empty() && weyl_key(word, f.inst.cartan) == std::vector<int>(f.inst.rank(), 1)) {
    // the word is trivial in W: the data must come back
    double dev = 0;
    for (int i = 0; i < inst.rank(); ++i) {
      dev = std::max(dev, std::abs(inst.zeta[i] - f.inst.zeta[i]) / (1.0 + std::abs(f.inst.zeta[i])));
      dev = std::max(dev, poly_distance(cur.qplus[i], sol.qplus[i]));
      dev = std::max(dev, poly_distance(cur.qminus[i], sol.qminus[i]));
    }
    rep.add(check("involution", word_label(word), 0, dev, tol));
  }
  if (weyl_group_order(f.inst.cartan) <= kWeylGuard) {
    Timer t{rep, "full_qq"};
    full_qq_checks(rep, f.inst, full_qq_system(f.inst, sol), tol);
  }
  rep.finish();
  return rep;
}

Report run_wronskian(const InstanceFile& f0, const RunOptions& opt) {
  InstanceFile f = with_seed(f0, opt);
  Report rep;
  rep.command = "wronskian";
  rep.instance = serialize_instance(f);
  QQSolution sol = acquire_solution(rep, f, opt);
  rep.body["solution"] = solution_json(sol);
  wronskian_battery(rep, f.inst, sol, check_tol(opt));
  rep.finish();
  return rep;
}

Report run_identities(const std::optional<InstanceFile>& f, const RunOptions& opt) {
  Report rep;
  rep.command = "identities";
  if (f) rep.instance = serialize_instance(*f);
  const double tol = check_tol(opt);
  std::mt19937_64 rng(opt.seed.value_or(f ? f->inst.seed : 0));
  {
    Timer t{rep, "lewis_carroll"};
    double sup = 0;
    int nonzero_exact = 0;
    for (int s = 0; s < 100; ++s) {
      QRatMatrix m = random_int_poly_matrix(rng, 4, 2);
      if (opt.exact) {
        std::vector<std::vector<QPoly>> e(4, std::vector<QPoly>(4));
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) e[a][b] = m(a, b).num();
        for (int i = 2; i <= 4; ++i) nonzero_exact += !lewis_carroll_residual(e, i).is_zero();
      } else {
        CRatMatrix c = to_complex(m);
        for (int i = 2; i <= 4; ++i) sup = std::max(sup, check_lewis_carroll(c, i, 4));
      }
    }
    if (opt.exact) {
      CheckRecord k = check("lewis_carroll_exact", "100x4x4", 0, nonzero_exact, 0.0);
      rep.add(k);
    } else {
      rep.add(check("lewis_carroll", "100x4x4", 0, sup, std::min(tol, 1e-10)));
    }
  }
  {
    Timer t{rep, "fundamental_relation"};
    for (int n : {3, 4}) {
      auto d = cartan_matrix('A', n - 1);
      auto g = enumerate_weyl(d);
      double sup = 0;
      int exact_bad = 0;
      for (int s = 0; s < 20; ++s) {
        QRatMatrix m = random_unimodular(rng, n);
        CRatMatrix c = to_complex(m);
        auto pts = sample_panel(6, 0.8, 100 + s);
        std::vector<CMat> vals;
        for (auto z : pts) vals.push_back(c.eval(z));
        for (int i = 0; i < n - 1; ++i)
          for (const auto& u : g.elements)
            for (const auto& v : g.elements) {
              if (!length_increases(u.word, i, d) || !length_increases(v.word, i, d)) continue;
              for (const auto& M : vals) sup = std::max(sup, check_fundamental_relation(M, u.word, v.word, i, d));
              if (opt.exact && n == 3 && s < 3) exact_bad += !fundamental_residual(m, u.word, v.word, i, d).is_zero();
            }
      }
      rep.add(check("fundamental_relation", "20x" + std::to_string(n) + "x" + std::to_string(n), 0, sup, tol));
      if (opt.exact && n == 3) rep.add(check("fundamental_relation_exact", "3x3x3", 0, exact_bad, 0.0));
    }
  }
  {
    Timer t{rep, "gauss"};
    // positive: generic integer-polynomial matrix; negative: vanishing first and second minors
    QRatMatrix pos = random_int_poly_matrix(rng, 3, 1);
    pos(0, 0) = pos(0, 0) + QRat(QPoly{Rational(7)});
    CheckRecord k = check("gauss_positive", "-", 0, 0.0, 0.0);
    try {
      auto g = gauss_decompose(pos);
      auto rec = g.n_minus * g.h * g.n_plus - pos;
      int bad = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) bad += !rec(a, b).is_zero();
      k.sup_residual = bad;
      k.pass = bad == 0;
    } catch (const GaussError& e) {
      k.pass = false;
      k.sup_residual = 1;
      k.witnesses.push_back(e.what());
    }
    rep.add(k);
    QRatMatrix neg = QRatMatrix::identity(3);
    neg(0, 0) = QRat();
    neg(0, 1) = QRat::constant(Rational(1));
    neg(1, 0) = QRat::constant(Rational(1));
    neg(1, 1) = QRat();
    CheckRecord kn = check("gauss_negative", "-", 1, 0.0, 0.0);
    try {
      gauss_decompose(neg);
      kn.pass = false;
      kn.sup_residual = 1;
      kn.witnesses.push_back("decomposition succeeded on a matrix with vanishing first minor");
    } catch (const GaussError& e) {
      kn.pass = e.index == 1;
      kn.witnesses.push_back(e.what());
    }
    rep.add(kn);
  }
  rep.finish();
  return rep;
}

json report_json(const Report& r, bool with_timings) {
  json j;
  j["versions"] = {{"report", kReportVersion}, {"instance", kInstanceVersion}};
  j["command"] = r.command;
  j["instance"] = r.instance;
  json cs = json::array();
  for (const auto& c : r.checks)
    cs.push_back({{"name", c.name},
                  {"k_or_word", c.k_or_word},
                  {"i", c.i},
                  {"sup_residual", c.sup_residual},
                  {"pass", c.pass},
                  {"counts", c.counts},
                  {"witnesses", c.witnesses}});
  j["checks"] = cs;
  j["body"] = r.body;
  j["diagnostics"] = r.diagnostics;
  j["exit_code"] = r.exit_code;
  if (with_timings) {
    json t = json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    j["timings"] = t;
    j["digest"] = report_digest(r);
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "check,k_or_word,i,sup_residual,pass\n";
  for (const auto& c : r.checks) {
    std::ostringstream v;
    v << std::scientific << std::setprecision(6) << c.sup_residual;
    os << csv_field(c.name) << "," << csv_field(c.k_or_word) << "," << c.i << "," << v.str() << "," << (c.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string sha256_hex(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << (int)md[i];
  return os.str();
}

std::string report_digest(const Report& r) { return sha256_hex(report_json(r, false).dump()); }

int cli_main(int argc, char** argv) {
  CLI::App app{"QQ-systems, Bethe equations, Baecklund transformations and q-Wronskians"};
  app.require_subcommand(1);
  std::string instance_path, out_path, word, format = "json";
  RunOptions opt;
  double tol = -1;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* s, bool need_instance) {
    auto* o = s->add_option("--instance", instance_path, "instance JSON file");
    if (need_instance) o->required();
    s->add_option("--tol", tol, "pass/fail threshold for residuals");
    s->add_option("--seeds", opt.seeds, "number of Newton starting points")->check(CLI::PositiveNumber);
    s->add_option("--seed", seed, "RNG seed (overrides the instance)");
    s->add_flag("--exact", opt.exact, "exact rational arithmetic where supported");
    s->add_option("--out", out_path, "write the report here instead of stdout");
    s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* solve = app.add_subcommand("solve", "solve the Bethe equations and complete QQ solutions");
  auto* verify = app.add_subcommand("verify", "run the full check battery on a provided solution");
  auto* backl = app.add_subcommand("backlund", "apply Baecklund steps along a word");
  auto* wron = app.add_subcommand("wronskian", "build the q-Wronskian and check its identities");
  auto* ident = app.add_subcommand("identities", "universal minor identities on random matrices");
  for (auto* s : {solve, verify, backl, wron}) add_common(s, true);
  add_common(ident, false);
  backl->add_option("--word", word, "comma separated node labels, e.g. 1,2,1")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (tol > 0) opt.tol = tol;
  opt.word = word;
  for (auto* s : {solve, verify, backl, wron, ident})
    if (s->parsed() && s->count("--seed")) opt.seed = seed;

  Report rep;
  try {
    std::optional<InstanceFile> f;
    if (!instance_path.empty()) f = load_instance(instance_path);
    if (solve->parsed()) rep = run_solve(*f, opt);
    else if (verify->parsed()) rep = run_verify(*f, opt);
    else if (backl->parsed()) rep = run_backlund(*f, opt);
    else if (wron->parsed()) rep = run_wronskian(*f, opt);
    else rep = run_identities(f, opt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string text = format == "csv" ? report_csv(rep) : report_json(rep).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 2;
    }
    os << text;
  }
  return rep.exit_code;
}

}  // namespace qoper
