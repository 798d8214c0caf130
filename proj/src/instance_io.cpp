#include "qoper/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qoper {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("instance " + where + ": " + what);
}

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where, "missing key '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

}  // namespace

json complex_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar complex_from_json(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) fail(where, "complex numbers are [re, im]");
    return make_scalar(number(j[0], where + "[0]"), number(j[1], where + "[1]"));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::istringstream is(s);
    double v;
    if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v)) fail(where, "bad decimal string '" + s + "'");
    return {v, 0.0};
  }
  fail(where, "expected [re, im] or a decimal string");
}

json poly_json(const CPoly& p) {
  json a = json::array();
  for (auto c : p.coeffs()) a.push_back(complex_json(c));
  return a;
}

CPoly poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a coefficient list");
  std::vector<Scalar> c;
  for (size_t k = 0; k < j.size(); ++k) c.push_back(complex_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return CPoly(c);
}

InstanceFile parse_instance(const json& j) {
  only_keys(j, "root", {"versions", "lie_type", "rank", "ordering", "q", "zetas", "lambdas", "degrees",
                        "tolerances", "seed", "solution"});
  const json& ver = need(j, "versions", "root");
  only_keys(ver, "versions", {"instance"});
  if (integer(need(ver, "instance", "versions"), "versions.instance") != kInstanceVersion)
    fail("versions.instance", "unsupported version");

  InstanceFile f;
  auto& in = f.inst;
  const json& lt = need(j, "lie_type", "root");
  if (!lt.is_string() || lt.get<std::string>().size() != 1) fail("lie_type", "expected one of A..G");
  const int rank = integer(need(j, "rank", "root"), "rank");
  try {
    in.cartan = cartan_matrix(lt.get<std::string>()[0], rank);
  } catch (const InputError& e) {
    fail("lie_type/rank", e.what());
  }
  if (j.contains("ordering")) {
    const json& o = j.at("ordering");
    if (!o.is_array() || (int)o.size() != rank) fail("ordering", "expected a permutation of 1..rank");
    std::vector<int> ord;
    for (size_t t = 0; t < o.size(); ++t) ord.push_back(integer(o[t], "ordering") - 1);
    try {
      in.cartan = with_ordering(in.cartan, ord);
    } catch (const InputError& e) {
      fail("ordering", e.what());
    }
  }
  in.q = complex_from_json(need(j, "q", "root"), "q");

  auto list = [&](const char* key) -> const json& {
    const json& a = need(j, key, "root");
    if (!a.is_array() || (int)a.size() != rank) fail(key, "expected one entry per node");
    return a;
  };
  const json& zs = list("zetas");
  for (size_t i = 0; i < zs.size(); ++i) in.zeta.push_back(complex_from_json(zs[i], "zetas[" + std::to_string(i) + "]"));
  const json& ls = list("lambdas");
  for (size_t i = 0; i < ls.size(); ++i) {
    const std::string w = "lambdas[" + std::to_string(i) + "]";
    const json& l = ls[i];
    if (l.is_object() && l.contains("coeffs")) {
      only_keys(l, w, {"coeffs"});
      in.lambda.push_back(poly_from_json(l.at("coeffs"), w + ".coeffs"));
    } else if (l.is_object() && l.contains("roots")) {
      only_keys(l, w, {"roots", "leading"});
      const json& rs = l.at("roots");
      if (!rs.is_array()) fail(w + ".roots", "expected a list");
      std::vector<Scalar> roots;
      for (size_t k = 0; k < rs.size(); ++k) roots.push_back(complex_from_json(rs[k], w + ".roots"));
      Scalar lead = l.contains("leading") ? complex_from_json(l.at("leading"), w + ".leading") : Scalar(1);
      in.lambda.push_back(CPoly::from_roots(roots, lead));
    } else {
      fail(w, "expected {\"roots\": [...], \"leading\": c} or {\"coeffs\": [...]}");
    }
  }
  const json& ds = list("degrees");
  for (size_t i = 0; i < ds.size(); ++i) in.degrees.push_back(integer(ds[i], "degrees"));
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, "tolerances", {"tau", "bethe_tol", "K"});
    if (t.contains("tau")) in.tol.tau = number(t.at("tau"), "tolerances.tau");
    if (t.contains("bethe_tol")) in.tol.bethe_tol = number(t.at("bethe_tol"), "tolerances.bethe_tol");
    if (t.contains("K")) in.tol.K = integer(t.at("K"), "tolerances.K");
    if (in.tol.tau <= 0 || in.tol.bethe_tol <= 0) fail("tolerances", "tolerances must be positive");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    in.seed = j.at("seed").get<std::uint64_t>();
  }
  try {
    validate(in);
  } catch (const InputError& e) {
    fail("root", e.what());
  }
  if (j.contains("solution")) {
    const json& s = j.at("solution");
    only_keys(s, "solution", {"qplus", "qminus"});
    QQSolution sol;
    for (const char* key : {"qplus", "qminus"}) {
      const json& a = need(s, key, "solution");
      if (!a.is_array() || (int)a.size() != rank) fail(std::string("solution.") + key, "expected one entry per node");
      for (size_t i = 0; i < a.size(); ++i) {
        auto p = poly_from_json(a[i], std::string("solution.") + key + "[" + std::to_string(i) + "]");
        (key[1] == 'p' ? sol.qplus : sol.qminus).push_back(p);
      }
    }
    f.solution = sol;
  }
  return f;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open instance file '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_instance(j);
}

json serialize_instance(const InstanceFile& f) {
  const auto& in = f.inst;
  json j;
  j["versions"] = {{"instance", kInstanceVersion}};
  j["lie_type"] = std::string(1, in.cartan.lie_type);
  j["rank"] = in.cartan.rank;
  json ord = json::array();
  for (int o : in.cartan.ordering) ord.push_back(o + 1);
  j["ordering"] = ord;
  j["q"] = complex_json(in.q);
  json zs = json::array(), ls = json::array();
  for (auto z : in.zeta) zs.push_back(complex_json(z));
  for (const auto& l : in.lambda) ls.push_back({{"coeffs", poly_json(l)}});
  j["zetas"] = zs;
  j["lambdas"] = ls;
  j["degrees"] = in.degrees;
  json tol = {{"tau", in.tol.tau}, {"bethe_tol", in.tol.bethe_tol}};
  if (in.tol.K >= 1) tol["K"] = in.tol.K;
  j["tolerances"] = tol;
  j["seed"] = in.seed;
  if (f.solution) {
    json qp = json::array(), qm = json::array();
    for (const auto& p : f.solution->qplus) qp.push_back(poly_json(p));
    for (const auto& p : f.solution->qminus) qm.push_back(poly_json(p));
    j["solution"] = {{"qplus", qp}, {"qminus", qm}};
  }
  return j;
}

}  // namespace qoper
