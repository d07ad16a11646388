// latd: command-line front end.
//
// Exit codes: 0 success, 1 usage or parse error, 2 mathematical property
// violated (including failed --expect checks), 3 resource limit.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "latd/catalog.hpp"
#include "latd/constructions.hpp"
#include "latd/design.hpp"
#include "latd/neighbors.hpp"
#include "latd/qseries.hpp"
#include "latd/theta.hpp"
#include "latd/tight.hpp"

using json = nlohmann::ordered_json;
using namespace latd;

namespace {

struct Failure {
  int code;
  std::string message;
};

struct Input {
  Lattice lattice;
  std::string source;
  std::string sha256;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Input load_input(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) {
    Lattice l = catalog_lattice(arg.substr(8));
    return {l, arg, sha256_hex(format_gram(l))};
  }
  const std::string bytes = arg == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : slurp(arg);
  return {parse_gram(bytes, arg), arg, sha256_hex(bytes)};
}

json str(const Rational& q) { return to_string(q); }
json str(const Integer& z) { return to_string(z); }
json str(std::uint64_t v) { return std::to_string(v); }
json str(std::int64_t v) { return std::to_string(v); }
json str(int v) { return std::to_string(v); }

json vec_json(std::span<const std::int64_t> v) {
  json a = json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}

json rat_vec_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json gram_json(const Lattice& l) {
  json rows = json::array();
  for (int i = 0; i < l.dim(); ++i) {
    json r = json::array();
    for (int j = 0; j < l.dim(); ++j) r.push_back(to_string(l.gram()(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::string exponent(int j, int den) {
  Rational e(j, den);
  e.canonicalize();
  return to_string(e);
}

std::vector<std::int64_t> parse_int_list(const std::string& text, int expect) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "'" + item + "' is not an integer");
    }
  }
  if (expect >= 0 && static_cast<int>(out.size()) != expect)
    throw Error(Errc::ParseError, "expected " + std::to_string(expect) + " comma-separated entries");
  return out;
}

std::vector<Rational> parse_rat_list(const std::string& text, int expect) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (expect >= 0 && static_cast<int>(out.size()) != expect)
    throw Error(Errc::ParseError, "expected " + std::to_string(expect) + " comma-separated entries");
  return out;
}

// --expect key=value against top-level report fields
void check_expectations(const json& report, const std::vector<std::string>& expects) {
  for (const auto& e : expects) {
    const auto eq = e.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "--expect takes key=value");
    const std::string key = e.substr(0, eq), want = e.substr(eq + 1);
    const json* node = &report;
    std::stringstream path(key);
    std::string part;
    while (std::getline(path, part, '.')) {
      if (!node->is_object() || !node->contains(part))
        throw Error(Errc::ParseError, "--expect: report has no field '" + key + "'");
      node = &(*node)[part];
    }
    const std::string got = node->is_string() ? node->get<std::string>() : node->dump();
    if (got != want) throw Failure{2, "expectation failed: " + key + " is " + got + ", expected " + want};
  }
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

using Clock = std::chrono::steady_clock;
std::string micros_since(Clock::time_point t) {
  return std::to_string(std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t).count());
}

std::string yes(bool b) { return b ? "true" : "false"; }

json witness_json(const std::optional<MomentWitness>& w) {
  if (!w) return nullptr;
  json e = json::array();
  for (int x : w->exponents) e.push_back(std::to_string(x));
  return {{"degree", str(w->degree)}, {"exponents", e}, {"lhs", str(w->lhs)}, {"rhs", str(w->rhs)}};
}

// analyze
struct AnalyzeOpts {
  std::string input;
  int t = -1;
  bool as_json = false, approx = false, timings = false;
  std::vector<std::string> expect;
};

void run_analyze(const AnalyzeOpts& o) {
  const auto t0 = Clock::now();
  const Input in = load_input(o.input);
  const Lattice& l = in.lattice;
  json timing = json::object();
  json j;
  j["command"] = "analyze";
  j["input"] = {{"source", in.source}, {"sha256", in.sha256}};
  j["dim"] = str(l.dim());
  j["det"] = str(determinant(l));
  j["parity"] = parity_name(parity(l));
  auto t = Clock::now();
  const OptimalityReport rep = is_strongly_perfect(l);
  timing["optimality"] = micros_since(t);
  j["minimum"] = str(rep.minimum);
  j["kissing_number"] = str(rep.kissing_number);
  const Rational hp = hermite_pow(l);
  j["hermite_pow"] = str(hp);
  if (o.approx) {
    const double gamma = std::pow(hp.get_d(), 1.0 / l.dim());
    std::ostringstream os;
    os.precision(12);
    os << gamma;
    j["approx"] = {{"note", "decimal approximations, not exact"}, {"hermite", os.str()}};
  }
  DesignCertificate design = rep.design;
  if (o.t >= 0) {
    t = Clock::now();
    design = design_strength(l, minimum(l).second, o.t);
    timing["design"] = micros_since(t);
  }
  j["design"] = {{"strength", str(design.strength)},
                 {"t_max", str(design.t_max)},
                 {"capped", design.capped},
                 {"set_size", str(design.set_size)},
                 {"failing_witness", witness_json(design.failing_witness)}};
  j["perfection_rank"] = str(rep.perfection_rank);
  j["symmetric_dim"] = str(rep.symmetric_dim);
  j["perfect"] = rep.perfect;
  j["eutactic"] = rep.eutactic;
  j["strongly_eutactic"] = rep.strongly_eutactic;
  j["strongly_perfect"] = rep.strongly_perfect;
  j["extreme_certified"] = rep.extreme_certified;
  t = Clock::now();
  const VenkovCheck v = venkov_bound_check(l);
  timing["venkov"] = micros_since(t);
  j["venkov"] = {{"lhs", str(v.lhs)}, {"rhs", str(v.rhs)}, {"ok", v.ok}};
  if (o.timings) {
    timing["total"] = micros_since(t0);
    j["timings_us"] = timing;
  }
  std::ostringstream text;
  text << "source: " << in.source << "\nsha256: " << in.sha256 << "\ndim: " << l.dim() << "\ndet: " << to_string(determinant(l))
       << "\nparity: " << parity_name(parity(l)) << "\nminimum: " << to_string(rep.minimum)
       << "\nkissing_number: " << rep.kissing_number << "\nhermite_pow: " << to_string(hp);
  if (o.approx) text << "\nhermite (approx): " << j["approx"]["hermite"].get<std::string>();
  text << "\ndesign_strength: " << design.strength << (design.capped ? " (at least; no failure up to t_max)" : "")
       << "\nperfection_rank: " << rep.perfection_rank << "/" << rep.symmetric_dim << "\nperfect: " << yes(rep.perfect)
       << "\neutactic: " << yes(rep.eutactic) << "\nstrongly_eutactic: " << yes(rep.strongly_eutactic)
       << "\nstrongly_perfect: " << yes(rep.strongly_perfect) << "\nextreme_certified: " << yes(rep.extreme_certified)
       << "\nvenkov: " << to_string(v.lhs) << (v.ok ? " >= " : " < ") << to_string(v.rhs) << "\n";
  if (o.timings) text << "time_us: " << timing["total"].get<std::string>() << "\n";
  emit(j, o.as_json, text.str());
  check_expectations(j, o.expect);
}

// theta
struct ThetaOpts {
  std::string input;
  int prec = -1;
  bool check_extremal = false, as_json = false;
  int harmonic_degree = 0;
  std::string alpha;
  std::vector<std::string> expect;
};

void run_theta(const ThetaOpts& o) {
  const Input in = load_input(o.input);
  const Lattice& l = in.lattice;
  const int prec = o.prec >= 0 ? o.prec : default_theta_precision(l.dim());
  json j;
  j["command"] = "theta";
  j["input"] = {{"source", in.source}, {"sha256", in.sha256}};
  std::ostringstream text;
  QSeries s;
  if (o.harmonic_degree) {
    if (o.alpha.empty()) throw Error(Errc::ParseError, "--harmonic-degree needs --alpha");
    const HarmonicWitness w = harmonic_witness(l, parse_rat_list(o.alpha, l.dim()), o.harmonic_degree);
    s = harmonic_theta(l, w, prec);
    j["harmonic"] = {{"degree", str(w.degree)}, {"alpha", rat_vec_json(w.alpha)}, {"coefficients", rat_vec_json(w.coefficients)}};
  } else {
    s = theta_series(l, prec);
  }
  j["prec"] = str(prec);
  j["den"] = str(s.den());
  json coeffs = json::array();
  for (int i = 0; i <= s.prec(); ++i) {
    coeffs.push_back(str(s[i]));
    text << exponent(i, s.den()) << ": " << to_string(s[i]) << "\n";
  }
  j["coefficients"] = coeffs;
  if (o.harmonic_degree) {
    j["zero"] = s.is_zero();
    text << "zero: " << yes(s.is_zero()) << "\n";
  }
  if (o.check_extremal) {
    const ExtremalCheck c = is_extremal(l);
    j["extremal"] = {{"extremal", c.extremal}, {"minimum", str(c.minimum)}, {"bound", str(c.bound)},
                     {"prec_checked", str(c.prec_checked)}, {"theta_matches", c.theta_matches}};
    text << "extremal: " << yes(c.extremal) << " (minimum " << to_string(c.minimum) << ", bound " << c.bound << ")\n";
  }
  emit(j, o.as_json, text.str());
  check_expectations(j, o.expect);
}

// construct
void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot write " + out);
  f << text;
}

struct ConstructOpts {
  std::string code_file, name, out;
  bool as_json = false;
};

void run_construct(const ConstructOpts& o) {
  if (o.code_file.empty() == o.name.empty()) throw Error(Errc::ParseError, "give exactly one of --code and --name");
  Lattice l = o.code_file.empty() ? catalog_lattice(o.name) : construction_a(read_code_file(o.code_file));
  if (o.as_json) {
    json j;
    j["command"] = "construct";
    j["label"] = l.label();
    j["dim"] = str(l.dim());
    j["det"] = str(determinant(l));
    j["parity"] = parity_name(parity(l));
    j["minimum"] = str(minimum(l).first);
    j["gram"] = gram_json(l);
    if (!o.out.empty()) write_or_print(o.out, format_gram(l));
    std::cout << j.dump(2) << "\n";
    return;
  }
  write_or_print(o.out, format_gram(l));
  if (!o.out.empty())
    std::cout << "wrote " << o.out << ": dim " << l.dim() << ", det " << to_string(determinant(l)) << ", "
              << parity_name(parity(l)) << "\n";
}

// frame
struct FrameOpts {
  std::string input;
  int p = 2;
  bool extract_code = false, as_json = false;
};

void run_frame(const FrameOpts& o) {
  const Input in = load_input(o.input);
  const auto f = find_p_frame(in.lattice, o.p);
  json j;
  j["command"] = "frame";
  j["p"] = str(o.p);
  j["found"] = f.has_value();
  std::ostringstream text;
  if (!f) {
    text << "no " << o.p << "-frame\n";
    j["frame"] = nullptr;
  } else {
    json rows = json::array();
    for (const auto& v : *f) {
      rows.push_back(vec_json(v));
      for (size_t i = 0; i < v.size(); ++i) text << (i ? " " : "") << v[i];
      text << "\n";
    }
    j["frame"] = rows;
    if (o.extract_code) {
      const LinearCode c = code_from_frame(in.lattice, *f, o.p);
      j["code"] = format_code(c);
      text.str("");
      text << format_code(c);
    }
  }
  emit(j, o.as_json, text.str());
  if (!f) throw Failure{2, "no frame found"};
}

// neighbor
struct NeighborOpts {
  std::string input, vector, out;
  bool even = false, as_json = false;
};

void run_neighbor(const NeighborOpts& o) {
  const Input in = load_input(o.input);
  const auto v = parse_int_list(o.vector, in.lattice.dim());
  const NeighborResult r = neighbor(in.lattice, v, o.even);
  const Lattice m = r.lattice.with_label(in.lattice.label() + " neighbor");
  if (o.as_json) {
    json j;
    j["command"] = "neighbor";
    j["vector"] = vec_json(r.vector);
    j["dim"] = str(m.dim());
    j["det"] = str(determinant(m));
    j["parity"] = parity_name(parity(m));
    j["minimum"] = str(minimum(m).first);
    j["gram"] = gram_json(m);
    if (!o.out.empty()) write_or_print(o.out, format_gram(m));
    std::cout << j.dump(2) << "\n";
    return;
  }
  write_or_print(o.out, format_gram(m));
}

// shadow
struct ShadowOpts {
  std::string input;
  int prec = 2;
  bool as_json = false;
  std::vector<std::string> expect;
};

void run_shadow(const ShadowOpts& o) {
  const Input in = load_input(o.input);
  const Shadow s = shadow(in.lattice, o.prec);
  const int n = in.lattice.dim();
  const OddMinBounds b = odd_min_bounds(n);
  json j;
  j["command"] = "shadow";
  j["input"] = {{"source", in.source}, {"sha256", in.sha256}};
  j["dim"] = str(n);
  j["minimum"] = str(s.report.minimum);
  j["shadow_min"] = str(s.report.shadow_min);
  j["sigma"] = str(s.report.sigma);
  j["char_vector_norm_residue"] = str(s.report.char_vector_norm_residue);
  j["s_extremal"] = s.report.s_extremal;
  j["exception_o23"] = s.report.exception_o23;
  j["characteristic"] = vec_json(s.characteristic);
  j["cosets"] = {rat_vec_json(s.cosets[0]), rat_vec_json(s.cosets[1])};
  j["bounds"] = {{"classical", str(b.classical)}, {"rains_sloane", str(b.rains_sloane)}};
  json th = json::array();
  std::ostringstream text;
  text << "minimum: " << to_string(s.report.minimum) << "\nshadow_min: " << to_string(s.report.shadow_min)
       << "\nsigma: " << to_string(s.report.sigma) << "\ns_extremal: " << yes(s.report.s_extremal)
       << "\nexception_o23: " << yes(s.report.exception_o23) << "\nbounds: " << b.classical << " " << b.rains_sloane
       << "\nshadow theta:\n";
  for (int i = 0; i <= s.theta.prec(); ++i) {
    th.push_back(str(s.theta[i]));
    if (s.theta[i] != 0) text << exponent(i, s.theta.den()) << ": " << to_string(s.theta[i]) << "\n";
  }
  j["shadow_theta"] = {{"den", str(s.theta.den())}, {"coefficients", th}};
  emit(j, o.as_json, text.str());
  check_expectations(j, o.expect);
}

// genus
struct GenusOpts {
  std::string input, out_dir;
  int max_classes = 32;
  std::uint64_t max_neighbors = 200000;
  bool as_json = false;
  std::vector<std::string> expect;
};

void run_genus(const GenusOpts& o) {
  const Input in = load_input(o.input);
  GenusOptions opt;
  opt.max_classes = o.max_classes;
  opt.max_neighbors = o.max_neighbors;
  const GenusReport r = genus_explore(in.lattice, opt);
  json j;
  j["command"] = "genus";
  j["input"] = {{"source", in.source}, {"sha256", in.sha256}};
  json classes = json::array();
  std::ostringstream text;
  for (size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    json e;
    e["index"] = str(static_cast<int>(i));
    e["roots"] = c.roots;
    e["aut_order"] = str(c.aut_order);
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      const std::string path = o.out_dir + "/class" + std::to_string(i) + ".gram";
      write_or_print(path, format_gram(c.lattice));
      e["path"] = path;
    } else {
      e["path"] = nullptr;
    }
    e["gram"] = gram_json(c.lattice);
    classes.push_back(e);
    text << "class " << i << ": roots " << c.roots << ", |Aut| = " << to_string(c.aut_order)
         << (r.explored[i] ? "" : " (not explored)") << "\n";
  }
  j["classes"] = classes;
  json k = json::array();
  text << "K:\n";
  for (const auto& row : r.adjacency) {
    json jr = json::array();
    for (size_t x = 0; x < row.size(); ++x) {
      jr.push_back(str(row[x]));
      text << (x ? " " : "") << row[x];
    }
    k.push_back(jr);
    text << "\n";
  }
  j["adjacency"] = k;
  j["neighbors_built"] = str(r.neighbors_built);
  j["mass_lhs"] = str(r.mass_lhs);
  j["mass_rhs"] = str(r.mass_rhs);
  j["closed"] = r.closed;
  j["complete"] = r.complete;
  text << "mass: " << to_string(r.mass_lhs) << " of " << to_string(r.mass_rhs) << "\ncomplete: " << yes(r.complete) << "\n";
  emit(j, o.as_json, text.str());
  check_expectations(j, o.expect);
}

// tight
struct TightOpts {
  int n = 0, t = 0, d = 0;
  std::string a, k_values;
  bool free_a = false, as_json = false;
};

void run_tight_bound(const TightOpts& o) {
  const Integer b = tight_bound(o.n, o.t);
  json j = {{"command", "tight bound"}, {"n", str(o.n)}, {"t", str(o.t)}, {"bound", str(b)}};
  emit(j, o.as_json, to_string(b) + "\n");
}

void run_tight_nk(const TightOpts& o) {
  std::vector<int> k;
  if (o.k_values.empty()) {
    for (int i = 0; i <= o.d / 2; ++i) k.push_back(i);
  } else {
    for (auto x : parse_int_list(o.k_values, -1)) k.push_back(static_cast<int>(x));
  }
  if (o.free_a == !o.a.empty()) throw Error(Errc::ParseError, "give exactly one of --a and --free-a");
  std::optional<Rational> a;
  if (!o.free_a) a = parse_rational(o.a);
  const NkSolution s = solve_nk(o.d, a, k);
  json j;
  j["command"] = "tight nk";
  j["d"] = str(o.d);
  j["a"] = a ? str(*a) : json(nullptr);
  json kv = json::array();
  for (int x : k) kv.push_back(str(x));
  j["k_values"] = kv;
  j["status"] = nk_status_name(s.status);
  std::ostringstream text;
  text << "status: " << nk_status_name(s.status) << "\n";
  json vals = json::object();
  for (const auto& [kk, v] : s.values) {
    vals[std::to_string(kk)] = str(v);
    text << "n_" << kk << " = " << to_string(v) << "\n";
  }
  j["values"] = vals;
  if (s.failing_equation >= 0) {
    j["failing_equation"] = str(s.failing_equation);
    j["residual"] = str(s.residual);
    text << "equation " << s.failing_equation << " (k^" << 2 * s.failing_equation << " moment) has residual "
         << to_string(s.residual) << "\n";
  }
  if (s.values.size() == k.size() && s.status == NkStatus::Unique) {
    j["nonnegative_integral"] = s.nonnegative_integral;
    text << "nonnegative integral: " << yes(s.nonnegative_integral) << "\n";
  }
  if (s.consistency_poly) {
    j["consistency_poly"] = s.consistency_poly->to_string();
    j["reduced_poly"] = s.reduced_poly->to_string();
    if (s.discriminant) j["discriminant"] = str(*s.discriminant);
    j["nonzero_rational_roots"] = rat_vec_json(s.nonzero_rational_roots);
    text << "consistency polynomial: " << s.consistency_poly->to_string() << "\n";
    if (s.discriminant) text << "discriminant of " << s.reduced_poly->to_string() << ": " << to_string(*s.discriminant) << "\n";
    if (s.nonzero_rational_roots.empty()) {
      j["verdict"] = "no nonzero rational roots";
      text << "verdict: no nonzero rational roots\n";
    } else {
      j["verdict"] = "nonzero rational roots exist";
      text << "nonzero rational roots:";
      for (const auto& r : s.nonzero_rational_roots) text << " " << to_string(r);
      text << "\n";
    }
  }
  emit(j, o.as_json, text.str());
}

void run_tight_admissible(const TightOpts& o) {
  const bool ok = tight7_odd_admissible(o.d);
  json j = {{"command", "tight admissible"}, {"d", str(o.d)}, {"admissible", ok},
            {"n", str(tight7_dimension(o.d))}};
  emit(j, o.as_json, std::string(ok ? "admissible" : "excluded") + " (n = " + std::to_string(tight7_dimension(o.d)) + ")\n");
}

void run_mass(int dim, bool as_json) {
  const Rational m = mass(dim);
  json j = {{"command", "mass"}, {"dim", str(dim)}, {"mass", str(m)}};
  emit(j, as_json, to_string(m) + "\n");
}

struct DefectOpts {
  std::string input;
  bool as_json = false;
};

void run_defect(const DefectOpts& o) {
  const Input in = load_input(o.input);
  const int d = defect(in.lattice);
  const RootDecomposition r = root_decomposition(in.lattice);
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"type", c.type}, {"rank", str(c.rank)}, {"roots", str(c.root_count)}, {"coxeter_number", str(c.coxeter_number)}});
  json j = {{"command", "defect"}, {"defect", str(d)}, {"roots", root_signature(r)}, {"components", comps},
            {"full_rank", r.full_rank}};
  emit(j, o.as_json, "roots: " + root_signature(r) + "\ndefect: " + std::to_string(d) + "\n");
}

struct KvOpts {
  std::string input;
  std::uint64_t max_pairs = 1000;
  bool as_json = false;
};

void run_koch_venkov(const KvOpts& o) {
  const Input in = load_input(o.input);
  const KochVenkovTally t = koch_venkov_g(in.lattice, o.max_pairs);
  json f = json::object(), g = json::object();
  std::ostringstream text;
  for (const auto& [i, c] : t.f) {
    f[std::to_string(i)] = str(c);
    g[std::to_string(i)] = str(t.g.at(i));
    text << "f(" << i << ") = " << c << ", g(" << i << ") = " << to_string(t.g.at(i)) << "\n";
  }
  text << "vectors: " << t.vectors_seen << (t.complete ? " (complete)" : " (partial)") << "\n";
  json j = {{"command", "koch-venkov"}, {"f", f}, {"g", g}, {"vectors_seen", str(t.vectors_seen)}, {"complete", t.complete}};
  emit(j, o.as_json, text.str());
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::ResourceLimit: return 3;
    case Errc::ParseError:
    case Errc::UnknownName:
    case Errc::InvalidArgument:
    case Errc::BadDimension: return 1;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice, design and modular form computations"};
  app.require_subcommand(1);
  std::string budget;
  app.add_option("--budget", budget, "node budget for enumeration and searches (overrides LATD_NODE_BUDGET)");

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "invariants and optimality certificates of a lattice");
  analyze->add_option("input", ao.input, "Gram file or catalog:NAME")->required();
  analyze->add_option("--design-strength", ao.t, "test design strength of Min(L) up to this degree")->check(CLI::Range(1, 12));
  analyze->add_flag("--json", ao.as_json);
  analyze->add_flag("--approx", ao.approx, "also print labelled decimal approximations");
  analyze->add_flag("--timings", ao.timings, "report wall-clock timings");
  analyze->add_option("--expect", ao.expect, "key=value; exit 2 when the report differs");

  ThetaOpts to;
  auto* theta = app.add_subcommand("theta", "theta series");
  theta->add_option("input", to.input)->required();
  theta->add_option("--prec", to.prec, "q-adic precision");
  theta->add_flag("--check-extremal", to.check_extremal);
  theta->add_option("--harmonic-degree", to.harmonic_degree)->check(CLI::IsMember({2, 4}));
  theta->add_option("--alpha", to.alpha, "direction c1,...,cn for the harmonic witness");
  theta->add_flag("--json", to.as_json);
  theta->add_option("--expect", to.expect);

  ConstructOpts co;
  auto* construct = app.add_subcommand("construct", "Construction A or a catalog lattice");
  construct->add_option("--code", co.code_file, ".code file");
  construct->add_option("--name", co.name, "catalog name");
  construct->add_option("--out", co.out, "write the Gram matrix here");
  construct->add_flag("--json", co.as_json);

  FrameOpts fo;
  auto* frame = app.add_subcommand("frame", "find a p-frame");
  frame->add_option("input", fo.input)->required();
  frame->add_option("--p", fo.p)->required();
  frame->add_flag("--extract-code", fo.extract_code);
  frame->add_flag("--json", fo.as_json);

  NeighborOpts no;
  auto* nb = app.add_subcommand("neighbor", "Kneser 2-neighbor");
  nb->add_option("input", no.input)->required();
  nb->add_option("--vector", no.vector, "c1,...,cn in the lattice basis")->required();
  nb->add_flag("--even", no.even, "lift v to norm 0 mod 8 when needed");
  nb->add_option("--out", no.out);
  nb->add_flag("--json", no.as_json);

  ShadowOpts so;
  auto* sh = app.add_subcommand("shadow", "shadow of an odd unimodular lattice");
  sh->add_option("input", so.input)->required();
  sh->add_option("--prec", so.prec);
  sh->add_flag("--json", so.as_json);
  sh->add_option("--expect", so.expect);

  GenusOpts go;
  auto* genus = app.add_subcommand("genus", "explore the genus of an even unimodular lattice");
  genus->add_option("input", go.input)->required();
  genus->add_option("--max-classes", go.max_classes);
  genus->add_option("--max-neighbors", go.max_neighbors);
  genus->add_option("--out-dir", go.out_dir, "write class Gram files here");
  genus->add_flag("--json", go.as_json);
  genus->add_option("--expect", go.expect);

  TightOpts tt;
  auto* tight = app.add_subcommand("tight", "tight spherical designs");
  tight->require_subcommand(1);
  auto* tb = tight->add_subcommand("bound", "tight design bound");
  tb->add_option("--n", tt.n)->required();
  tb->add_option("--t", tt.t)->required();
  tb->add_flag("--json", tt.as_json);
  auto* tn = tight->add_subcommand("nk", "moment equations of a tight 7-design");
  tn->add_option("--d", tt.d)->required();
  tn->add_option("--a", tt.a, "norm of alpha");
  tn->add_flag("--free-a", tt.free_a, "eliminate the counts and solve for a");
  tn->add_option("--k-values", tt.k_values, "comma-separated |(x, alpha)| values");
  tn->add_flag("--json", tt.as_json);
  auto* ta = tight->add_subcommand("admissible", "congruence condition for odd d");
  ta->add_option("--d", tt.d)->required();
  ta->add_flag("--json", tt.as_json);

  int mass_dim = 0;
  bool mass_json = false;
  auto* ms = app.add_subcommand("mass", "mass of the even unimodular genus");
  ms->add_option("--dim", mass_dim)->required();
  ms->add_flag("--json", mass_json);

  DefectOpts dd;
  auto* df = app.add_subcommand("defect", "root system and defect");
  df->add_option("input", dd.input)->required();
  df->add_flag("--json", dd.as_json);

  KvOpts kv;
  auto* kvc = app.add_subcommand("koch-venkov", "neighbor defect tallies over norm-8 vectors");
  kvc->add_option("input", kv.input)->required();
  kvc->add_option("--max-pairs", kv.max_pairs, "antipodal pairs of norm-8 vectors to visit");
  kvc->add_flag("--json", kv.as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (!budget.empty()) {
      parse_int_list(budget, 1);
      setenv("LATD_NODE_BUDGET", budget.c_str(), 1);
    }
    if (*analyze) run_analyze(ao);
    else if (*theta) run_theta(to);
    else if (*construct) run_construct(co);
    else if (*frame) run_frame(fo);
    else if (*nb) run_neighbor(no);
    else if (*sh) run_shadow(so);
    else if (*genus) run_genus(go);
    else if (*tb) run_tight_bound(tt);
    else if (*tn) run_tight_nk(tt);
    else if (*ta) run_tight_admissible(tt);
    else if (*ms) run_mass(mass_dim, mass_json);
    else if (*df) run_defect(dd);
    else if (*kvc) run_koch_venkov(kv);
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
