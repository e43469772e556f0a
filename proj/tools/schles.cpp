#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "schles/expression.hpp"
#include "schles/heun.hpp"
#include "schles/hypergeometric.hpp"
#include "schles/modification.hpp"
#include "schles/monodromy.hpp"
#include "schles/painleve.hpp"
#include "schles/sampling.hpp"
#include "schles/system_io.hpp"
#include "schles/weyl.hpp"

using namespace schles;

namespace {

// ---------------------------------------------------------------------------
// Logging: SCHLES_LOG = error | warn | info | debug (default warn), to stderr.

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level log_level() {
  const char* env = std::getenv("SCHLES_LOG");
  if (!env) return Level::warn;
  const std::string v = env;
  if (v == "error") return Level::error;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

void log(Level level, const std::string& msg) {
  static const Level threshold = log_level();
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= threshold) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string word;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-12;
  std::string format = "text";
  std::string plan_base;
  std::string t_range = "0.3,0.6";
  std::string out;
  // subcommand switches
  bool gauss = false, heun = false, kummer = false, shift = false, heun_relation = false,
       backlund = false, schlesinger = false, pvi = false;
  int n = 4;
  int count = 0;
  std::size_t samples = 31;
  std::string params;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string cnum(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real() == 0.0 ? 0.0 : z.real(),
                z.imag() == 0.0 ? 0.0 : z.imag());
  return buf;
}

cplx parse_complex(const std::string& text) {
  std::stringstream ss(text);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im);
  try {
    return {std::stod(re), im.empty() ? 0.0 : std::stod(im)};
  } catch (const std::exception&) {
    throw UsageError("cannot read complex number \"" + text + "\" (expected re,im)");
  }
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  // "a;b;c" with each entry re,im
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto pos = text.find(',');
  try {
    if (pos == std::string::npos) throw std::invalid_argument("");
    return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
  } catch (const std::exception&) {
    throw UsageError("--t-range expects t0,t1");
  }
}

// Writes to --out when given, else stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

FuchsianSystem input_system(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError(cfg.subcommand + " needs a system file");
  return load_system(cfg.input);
}

// ---------------------------------------------------------------------------

int cmd_describe(const RunConfig& cfg) {
  const FuchsianSystem S = input_system(cfg);
  if (cfg.format == "json") {
    Json j = system_to_json(S);
    Json poles = Json::array();
    for (std::size_t i = 0; i < S.size(); ++i) {
      Json p;
      p["pole"] = point_to_json(S.pole(i));
      p["marked"] = complex_to_json(S.marked(i));
      p["unmarked"] = complex_to_json(S.unmarked(i));
      p["trace"] = complex_to_json(S.residue(i).trace());
      poles.push_back(p);
    }
    j["eigenvalues"] = poles;
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  out << "gauge " << to_string(S.gauge()) << ", " << S.size() << " poles\n";
  Mat2 total = Mat2::Zero();
  for (std::size_t i = 0; i < S.size(); ++i) {
    total += S.residue(i);
    out << "  [" << i + 1 << "] " << to_string(S.pole(i)) << "  marked " << cnum(S.marked(i))
        << "  unmarked " << cnum(S.unmarked(i)) << "\n";
  }
  out << "sum of residues: " << short_num(total.norm()) << "\n";
  emit(cfg, out.str());
  return 0;
}

int cmd_transform(const RunConfig& cfg) {
  if (cfg.word.empty()) throw UsageError("transform needs --word");
  const FuchsianSystem S = input_system(cfg);
  const TransformWord w = parse_word(cfg.word);
  log(Level::info, "applying " + format_word(w));
  emit(cfg, format_system(act_on_system(w, S)));
  return 0;
}

int cmd_monodromy(const RunConfig& cfg) {
  const FuchsianSystem S = input_system(cfg);
  std::optional<cplx> base;
  if (!cfg.plan_base.empty()) base = parse_complex(cfg.plan_base);
  const LoopPlan plan = make_plan(S, base);
  PathOptions opts;
  opts.tol = cfg.tol;
  const MonodromyRep rep = monodromy(S, plan, opts);
  const ProductCheck prod = loop_product(S, rep);
  const double local = local_exponent_residual(S, rep);
  const double product = std::min(prod.to_plus, prod.to_minus) / prod.scale;

  if (cfg.format == "json") {
    Json j;
    j["base"] = complex_to_json(rep.base);
    j["matrices"] = Json::array();
    for (std::size_t k = 0; k < rep.m.size(); ++k) {
      Json m;
      m["pole"] = point_to_json(S.pole(rep.poles[k]));
      m["matrix"] = matrix_to_json(rep.m[k]);
      j["matrices"].push_back(m);
    }
    j["product_residual"] = product;
    j["local_exponent_residual"] = local;
    j["max_det_error"] = rep.max_det_error;
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  out << "base point " << cnum(rep.base) << "\n";
  for (std::size_t k = 0; k < rep.m.size(); ++k) {
    const Mat2& m = rep.m[k];
    out << "M at " << to_string(S.pole(rep.poles[k])) << ":\n"
        << "  [" << cnum(m(0, 0)) << "  " << cnum(m(0, 1)) << "]\n"
        << "  [" << cnum(m(1, 0)) << "  " << cnum(m(1, 1)) << "]\n";
  }
  out << "product relation residual " << short_num(product) << "\n"
      << "local exponent residual " << short_num(local) << "\n"
      << "determinant check " << short_num(rep.max_det_error) << "\n";
  emit(cfg, out.str());
  return 0;
}

// Residual table shared by the verify sweeps.
struct Row {
  std::string label;
  double residual;
  double bound;
};

int report(const RunConfig& cfg, const std::string& title, const std::vector<Row>& rows,
           const std::vector<std::string>& notes = {}) {
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.residual < r.bound;
  if (cfg.format == "json") {
    Json j;
    j["check"] = title;
    j["seed"] = cfg.seed;
    j["status"] = pass ? "pass" : "fail";
    j["rows"] = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["case"] = r.label;
      row["residual"] = r.residual;
      row["bound"] = r.bound;
      row["pass"] = r.residual < r.bound;
      j["rows"].push_back(row);
    }
    j["notes"] = notes;
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 1;
  }
  std::cout << title << " (seed " << cfg.seed << ")\n";
  for (const auto& r : rows)
    std::cout << "  " << r.label << "  residual " << short_num(r.residual) << "  bound " << short_num(r.bound)
              << (r.residual < r.bound ? "" : "  FAIL") << "\n";
  for (const auto& n : notes) std::cout << "  " << n << "\n";
  std::cout << (pass ? "status pass" : "status fail") << "\n";
  if (!pass) {
    Json fail;
    fail["status"] = "fail";
    fail["check"] = title;
    fail["failures"] = Json::array();
    for (const auto& r : rows)
      if (!(r.residual < r.bound)) fail["failures"].push_back(r.label);
    std::cout << fail.dump() << "\n";
  }
  return pass ? 0 : 1;
}

int verify_gauss(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Row> rows;
  const int count = cfg.count > 0 ? cfg.count : 20;
  for (int k = 0; k < count; ++k) {
    const HypergeomParams p = random_gauss_params(rng);
    for (cplx z : {cplx(0.1), cplx(0.0, 0.3), cplx(-0.25)}) {
      const GaussRelationReport r = verify_gauss_relation(p, z);
      rows.push_back({"a=" + cnum(p.a) + " b=" + cnum(p.b) + " c=" + cnum(p.c) + " z=" + cnum(z), r.max(), 1e-10});
    }
  }
  return report(cfg, "Gauss relation, both rows", rows);
}

int verify_kummer(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const HypergeomParams p = random_gauss_params(rng);
  const Ode2 ode = hypergeometric_ode(p);
  std::vector<Row> rows;
  for (const auto& e : kummer_solutions(p)) {
    const cplx z = sample_point(e);
    const SeriesValue y = evaluate(e, z);
    rows.push_back({e.str(), ode.residual(z, y.f, y.df, y.d2f), 1e-8});
  }
  return report(cfg, "Kummer solutions against the hypergeometric ODE, a=" + cnum(p.a) + " b=" + cnum(p.b) +
                         " c=" + cnum(p.c),
                rows);
}

int verify_heun(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Row> rows;
  const int count = cfg.count > 0 ? cfg.count : 10;
  for (int k = 0; k < count; ++k) {
    const HeunParams p = random_heun_params(rng, 3.0);
    const Ode2 ode = p.ode();
    for (cplx z : {cplx(0.3), cplx(0.0, 0.3), cplx(-0.2, 0.2)}) {
      const SeriesValue y = heun_partial_sum(p, z, 40);
      rows.push_back({"q=" + cnum(p.q) + " alpha=" + cnum(p.alpha) + " z=" + cnum(z),
                      ode.residual(z, y.f, y.df, y.d2f), 1e-9});
    }
  }
  return report(cfg, "Heun series, 40 terms, a=3", rows);
}

int verify_heun_relation(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const HeunParams p = random_heun_params(rng, 3.0);
  const HeunRelationReport r = verify_heun_relation(p, 0.2);
  std::vector<Row> rows = {{"relation as stated", r.residual_as_stated, 1e-8},
                           {"best fitted Heun operator", r.fit_residual, 1e-8}};
  return report(cfg, "Heun contiguous relation", rows,
                {"q' (printed) = " + cnum(r.q_printed), "q^ (fitted) = " + cnum(r.q_fit),
                 "exponent sum of the combination = " + cnum(r.exponent_sum) + " (Heun needs 2)"});
}

int verify_shift(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Row> rows;
  const int count = cfg.count > 0 ? cfg.count : 20;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 3;
    const FuchsianSystem S = random_system(rng, n);
    const std::size_t i = k % (n - 1), j = (i + 1) % (n - 1);
    const FuchsianSystem T = pair_modify(S, {i, j});
    double err = std::abs(T.marked(i) - S.marked(i) - 0.5) + std::abs(T.marked(j) - S.marked(j) + 0.5);
    // other poles keep their spectra and markings; the matrices get conjugated
    for (std::size_t m = 0; m < S.size(); ++m)
      if (m != i && m != j) err += std::abs(T.marked(m) - S.marked(m)) + std::abs(T.unmarked(m) - S.unmarked(m));
    rows.push_back({"n=" + std::to_string(n) + " pair(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                    err, 1e-12});
  }
  return report(cfg, "Marked eigenvalue shift under pair_modify", rows);
}

int verify_backlund(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const FuchsianSystem S = schlesinger_system(0.3, random_sl2_residue(rng, 0.21), random_sl2_residue(rng, 0.33),
                                              random_sl2_residue(rng, 0.17));
  const PviParams P = pvi_params(S);
  const HamiltonTrajectory traj = hamilton_flow(xp_coordinates(S), P, 0.6);
  const BacklundFit fit = fit_backlund_coefficient(traj, P);
  std::vector<Row> rows = {{"printed map (c = 1)", fit.residual_printed, 1e-6},
                           {"best coefficient c = " + short_num(fit.c_fit), fit.residual_fit, 1e-6}};
  return report(cfg, "Backlund map on a P_VI trajectory", rows);
}

int cmd_verify(const RunConfig& cfg) {
  const int picked = cfg.gauss + cfg.heun + cfg.kummer + cfg.shift + cfg.heun_relation + cfg.backlund;
  if (picked != 1)
    throw UsageError("verify needs exactly one of --gauss, --kummer, --heun, --heun-relation, --shift, --backlund");
  if (cfg.gauss) return verify_gauss(cfg);
  if (cfg.kummer) return verify_kummer(cfg);
  if (cfg.heun) return verify_heun(cfg);
  if (cfg.heun_relation) return verify_heun_relation(cfg);
  if (cfg.shift) return verify_shift(cfg);
  return verify_backlund(cfg);
}

// ---------------------------------------------------------------------------

FuchsianSystem flow_start(const RunConfig& cfg, double t0) {
  if (!cfg.input.empty()) {
    FuchsianSystem S = load_system(cfg.input);
    check_schlesinger_layout(S);
    if (std::abs(S.pole(2).value() - t0) > 1e-12)
      throw UsageError("pole t of the input is " + cnum(S.pole(2).value()) + ", --t-range starts at " + num(t0));
    return S;
  }
  Rng rng(cfg.seed);
  return schlesinger_system(t0, random_sl2_residue(rng, random_exponent(rng)),
                            random_sl2_residue(rng, random_exponent(rng)),
                            random_sl2_residue(rng, random_exponent(rng)));
}

std::string csv_header() {
  std::string h = "t,x_re,x_im,p_re,p_im";
  for (const char* k : {"0", "1", "t", "inf"}) h += std::string(",lambda_") + k + "_re,lambda_" + k + "_im";
  return h + ",H_re,H_im,drift\n";
}

std::string csv_row(double t, const HamiltonianState& s, const std::array<cplx, 4>& lambda, const PviParams& P,
                    const std::string& drift) {
  std::string r = num(t) + "," + num(s.x.real()) + "," + num(s.x.imag()) + "," + num(s.p.real()) + "," +
                  num(s.p.imag());
  for (cplx l : lambda) r += "," + num(l.real()) + "," + num(l.imag());
  const cplx H = hamiltonian(s, P);
  return r + "," + num(H.real()) + "," + num(H.imag()) + "," + drift + "\n";
}

int cmd_flow(const RunConfig& cfg) {
  if (cfg.schlesinger == cfg.pvi) throw UsageError("flow needs exactly one of --schlesinger, --pvi");
  const auto [t0, t1] = parse_range(cfg.t_range);
  const FuchsianSystem S0 = flow_start(cfg, t0);
  FlowOptions opts;
  opts.samples = cfg.samples;
  opts.integrate.abs_tol = opts.integrate.rel_tol = cfg.tol;
  const PviParams P = pvi_params(S0);
  const std::array<cplx, 4> lambda0 = {S0.marked(0), S0.marked(1), S0.marked(2), S0.marked(3)};

  std::string out = csv_header();
  if (cfg.schlesinger) {
    const SchlesingerTrajectory traj = schlesinger_flow(S0, t1, opts);
    const std::size_t every = std::max<std::size_t>(1, (traj.t.size() - 1) / 5);
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
      const FuchsianSystem& S = traj.systems[k];
      std::string drift;
      if (k > 0 && (k % every == 0 || k + 1 == traj.t.size())) {
        const double d = isomonodromy_drift({{S0, make_plan(S0)}, {S, make_plan(S)}});
        drift = num(d);
        log(Level::info, "t=" + num(traj.t[k].real()) + " drift " + short_num(d));
      }
      out += csv_row(traj.t[k].real(), xp_coordinates(S), {S.marked(0), S.marked(1), S.marked(2), S.marked(3)}, P,
                     drift);
    }
  } else {
    const HamiltonTrajectory traj = hamilton_flow(xp_coordinates(S0), P, t1, opts);
    for (std::size_t k = 0; k < traj.t.size(); ++k) out += csv_row(traj.t[k].real(), traj.states[k], lambda0, P, "");
    if (traj.blowup_t) log(Level::warn, "movable pole near t = " + cnum(*traj.blowup_t));
  }
  emit(cfg, out);
  return 0;
}

int cmd_enumerate(const RunConfig& cfg) {
  if (cfg.kummer == cfg.heun) throw UsageError("enumerate needs exactly one of --kummer, --heun");
  std::vector<SolutionExpression> list;
  Rng rng(cfg.seed);
  if (cfg.kummer) {
    HypergeomParams p = random_gauss_params(rng);
    if (!cfg.params.empty()) {
      const auto v = parse_complex_list(cfg.params);
      if (v.size() != 3) throw UsageError("--params for --kummer: a;b;c");
      p = {v[0], v[1], v[2]};
    }
    list = kummer_solutions(p);
  } else {
    HeunParams p = random_heun_params(rng, 3.0);
    if (!cfg.params.empty()) {
      const auto v = parse_complex_list(cfg.params);
      if (v.size() != 6) throw UsageError("--params for --heun: a;q;alpha;beta;gamma;delta");
      p = {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    list = heun_expressions(p);
  }
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const auto& e : list) {
      Json r;
      r["expression"] = e.str();
      r["map"] = e.map_text;
      r["prefactor"] = Json::array();
      for (cplx x : e.prefactor_values()) r["prefactor"].push_back(complex_to_json(x));
      r["params"] = Json::array();
      const int np = e.kind == FunctionKind::heun ? 4 : 3;
      const auto v = e.param_values();
      for (int k = 0; k < np; ++k) r["params"].push_back(complex_to_json(v[k]));
      if (e.kind == FunctionKind::heun) {
        r["modulus"] = complex_to_json(e.modulus);
        r["accessory"] = complex_to_json(e.accessory);
      }
      rows.push_back(r);
    }
    emit(cfg, rows.dump(2) + "\n");
    return 0;
  }
  std::string out;
  for (std::size_t k = 0; k < list.size(); ++k) out += std::to_string(k + 1) + "  " + list[k].str() + "\n";
  emit(cfg, out);
  return 0;
}

int cmd_coxeter(const RunConfig& cfg) {
  const CoxeterReport r = coxeter_check(cfg.n, 20, cfg.seed);
  std::vector<Row> rows;
  for (const auto& c : r.checks) rows.push_back({c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"), c.pass ? 0.0 : 1.0, 0.5});
  return report(cfg, "Coxeter relations of W(C_" + std::to_string(cfg.n) + "^), finite orbit " +
                         std::to_string(r.finite_orbit),
                rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schlesinger transformations of rank-2 Fuchsian systems"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "integration tolerance")->capture_default_str();
    sub->add_option("--format", cfg.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };

  auto* describe = app.add_subcommand("describe", "print poles and marked eigenvalues");
  describe->add_option("system", cfg.input, "system JSON")->required();
  common(describe);

  auto* transform = app.add_subcommand("transform", "apply a word of W(C_n^) and write the new system");
  transform->add_option("system", cfg.input, "system JSON")->required();
  transform->add_option("--word", cfg.word, "generators s1, p12, t12, l1 joined by dots");
  common(transform);

  auto* mono = app.add_subcommand("monodromy", "monodromy matrices of the loops around each pole");
  mono->add_option("system", cfg.input, "system JSON")->required();
  mono->add_option("--plan-base", cfg.plan_base, "base point re,im");
  common(mono);

  auto* verify = app.add_subcommand("verify", "numerical checks with residual tables");
  verify->add_flag("--gauss", cfg.gauss, "Gauss contiguous relation");
  verify->add_flag("--kummer", cfg.kummer, "Kummer's 24 solutions against the ODE");
  verify->add_flag("--heun", cfg.heun, "Heun series against the ODE");
  verify->add_flag("--heun-relation", cfg.heun_relation, "Heun contiguous relation");
  verify->add_flag("--shift", cfg.shift, "eigenvalue shifts of pair_modify");
  verify->add_flag("--backlund", cfg.backlund, "Backlund map on P_VI trajectories");
  verify->add_option("--count", cfg.count, "number of random cases");
  common(verify);

  auto* flow = app.add_subcommand("flow", "isomonodromic flow, CSV trajectory");
  flow->add_flag("--schlesinger", cfg.schlesinger, "integrate the Schlesinger system");
  flow->add_flag("--pvi", cfg.pvi, "integrate the Hamiltonian form of P_VI");
  flow->add_option("system", cfg.input, "system JSON with poles 0, 1, t, inf (random when omitted)");
  flow->add_option("--t-range", cfg.t_range, "t0,t1")->capture_default_str();
  flow->add_option("--samples", cfg.samples, "rows in the CSV")->capture_default_str();
  common(flow);

  auto* enumerate = app.add_subcommand("enumerate", "list local solutions");
  enumerate->add_flag("--kummer", cfg.kummer, "Kummer's 24 solutions");
  enumerate->add_flag("--heun", cfg.heun, "the 192 Heun expressions");
  enumerate->add_option("--params", cfg.params, "parameters, entries re,im separated by ';'");
  common(enumerate);

  auto* coxeter = app.add_subcommand("coxeter", "check the Coxeter relations");
  coxeter->add_option("--n", cfg.n, "number of poles")->check(CLI::Range(3, 6))->capture_default_str();
  common(coxeter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    int rc = 0;
    if (cfg.subcommand == "describe") rc = cmd_describe(cfg);
    else if (cfg.subcommand == "transform") rc = cmd_transform(cfg);
    else if (cfg.subcommand == "monodromy") rc = cmd_monodromy(cfg);
    else if (cfg.subcommand == "verify") rc = cmd_verify(cfg);
    else if (cfg.subcommand == "flow") rc = cmd_flow(cfg);
    else if (cfg.subcommand == "enumerate") rc = cmd_enumerate(cfg);
    else rc = cmd_coxeter(cfg);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    log(Level::debug, cfg.subcommand + " finished in " + short_num(ms) + " ms");
    return rc;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
