#ifndef SOSLYAP_CLI_APP_HPP
#define SOSLYAP_CLI_APP_HPP

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soslyap/integrate.hpp"
#include "soslyap/lyapunov.hpp"
#include "soslyap/serialize.hpp"
#include "soslyap/svg.hpp"

namespace soslyap {

// Exit codes: 0 definitive answer, 1 usage or input error, 2 unresolved
// (the solver could not certify either way).
enum CliExit { kCliOk = 0, kCliError = 1, kCliUnresolved = 2 };

namespace cli_detail {

struct ReportBuilder {
  Json j;
  std::chrono::steady_clock::time_point start;
  bool timing = false;

  explicit ReportBuilder(const std::string& command) {
    start = std::chrono::steady_clock::now();
    j["command"] = command;
    j["inputs"] = Json::object();
    j["config"] = Json::object();
  }

  void input_file(const std::string& path, const std::string& content) {
    j["inputs"][path] = "fnv1a:" + fnv1a64_hex(content);
  }

  void finish(std::ostream& out, const std::string& out_path) {
    if (timing) {
      auto dt = std::chrono::steady_clock::now() - start;
      j["wall_time_s"] = std::chrono::duration<double>(dt).count();
    } else {
      // Deterministic by default: timings go to the console, not the report.
      j["wall_time_s"] = nullptr;
    }
    std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) write_file(out_path, text);
    else out << text;
  }
};

inline std::string approx_poly_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    double v = rat_to_double(c);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v));
    std::string piece = buf;
    if (!m.is_constant()) {
      if (piece == "1") piece = monomial_to_string(m);
      else piece += "*" + monomial_to_string(m);
    }
    if (out.empty()) out = (v < 0 ? "-" : "") + piece;
    else out += (v < 0 ? " - " : " + ") + piece;
  }
  return out;
}

// Resolves --system values: "gallery:<name>" or a vector-field file.
inline VectorField load_system(const std::string& spec, ReportBuilder& rb,
                               const std::optional<Rat>& c,
                               const std::optional<Rat>& s,
                               const std::optional<Rat>& lambda) {
  if (spec.rfind("gallery:", 0) == 0) {
    GalleryParams gp;
    gp.c = c;
    gp.s = s;
    gp.lambda = lambda;
    auto sys = gallery(spec.substr(8), gp);
    rb.j["inputs"][spec] = "builtin";
    return sys.field;
  }
  std::string text = read_file(spec);
  rb.input_file(spec, text);
  return parse_vector_field(text);
}

inline Polynomial load_polynomial(const std::string& path, ReportBuilder& rb) {
  std::string text = read_file(path);
  rb.input_file(path, text);
  return parse_polynomial(text);
}

inline std::optional<Rat> parse_opt_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return rat_from_string(s);
}

inline Json lyap_result_json(const LyapunovResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  if (r.status == LyapunovResult::Status::Found) {
    j["v"] = r.v.to_string();
    j["v_approx"] = approx_poly_string(r.v);
    j["margin_v"] = r.margin_v.to_string();
    j["margin_vdot"] = r.margin_vdot.to_string();
  }
  if (r.status == LyapunovResult::Status::CertifiedInfeasible)
    j["infeasibility_ray"] = r.dual_ray;
  if (!r.message.empty()) j["message"] = r.message;
  j["solver"] = Json{{"iterations", r.iterations},
                     {"primal_residual", r.primal_residual},
                     {"gap", r.gap}};
  return j;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"sum-of-squares Lyapunov analysis toolkit"};
  app.require_subcommand(1);

  // Common options, bound per subcommand.
  struct Common {
    std::string out_path;
    bool timing = false;
  };

  std::string report_out;
  auto add_common = [&](CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out_path, "write the JSON report to this file");
    sub->add_flag("--timing", c.timing, "include wall time in the report");
  };

  // ---- check-sos ----
  auto* sc_check = app.add_subcommand("check-sos", "decide whether a polynomial is a sum of squares");
  struct {
    Common common;
    std::string poly, mode = "auto", cert_path;
    bool rationalize = false;
  } check_args;
  sc_check->add_option("--poly", check_args.poly, "polynomial file")->required();
  sc_check->add_option("--mode", check_args.mode,
                       "Gram basis: auto|full|homogeneous|newton");
  sc_check->add_flag("--rationalize", check_args.rationalize,
                     "upgrade the certificate to exact rational arithmetic");
  sc_check->add_option("--cert", check_args.cert_path, "write the certificate JSON here");
  add_common(sc_check, check_args.common);

  // ---- find-lyapunov ----
  auto* sc_find = app.add_subcommand("find-lyapunov", "search for an sos Lyapunov function of fixed degree");
  struct {
    Common common;
    std::string system, eps = "1/10000", eps_deriv = "1/10000";
    std::string c, s, lambda;
    int degree = 2;
    bool homogeneous = false;
    std::string cert_v, cert_vdot;
  } find_args;
  sc_find->add_option("--system", find_args.system, "vector field file or gallery:<name>")->required();
  sc_find->add_option("--degree", find_args.degree, "even degree of V")->required();
  sc_find->add_flag("--homogeneous", find_args.homogeneous, "restrict V to a form");
  sc_find->add_option("--eps", find_args.eps, "strictness margin on V (rational)");
  sc_find->add_option("--eps-deriv", find_args.eps_deriv, "strictness margin on -Vdot (rational)");
  sc_find->add_option("--c", find_args.c, "gallery rotation parameter c");
  sc_find->add_option("--s", find_args.s, "gallery rotation parameter s");
  sc_find->add_option("--lambda", find_args.lambda, "gallery lambda parameter");
  sc_find->add_option("--cert-v", find_args.cert_v, "write the V certificate here");
  sc_find->add_option("--cert-vdot", find_args.cert_vdot, "write the -Vdot certificate here");
  add_common(sc_find, find_args.common);

  // ---- sweep ----
  auto* sc_sweep = app.add_subcommand("sweep", "run Lyapunov searches over a list of degrees");
  struct {
    Common common;
    std::string system, degrees = "2,4,6,8", eps = "0", eps_deriv = "0";
    std::string c, s, lambda;
    bool homogeneous = false, early_stop = false;
  } sweep_args;
  sc_sweep->add_option("--system", sweep_args.system)->required();
  sc_sweep->add_option("--degrees", sweep_args.degrees, "comma-separated even degrees");
  sc_sweep->add_flag("--homogeneous", sweep_args.homogeneous);
  sc_sweep->add_option("--eps", sweep_args.eps);
  sc_sweep->add_option("--eps-deriv", sweep_args.eps_deriv);
  sc_sweep->add_option("--c", sweep_args.c);
  sc_sweep->add_option("--s", sweep_args.s);
  sc_sweep->add_option("--lambda", sweep_args.lambda);
  sc_sweep->add_flag("--early-stop", sweep_args.early_stop, "stop at the first Found");
  add_common(sc_sweep, sweep_args.common);

  // ---- reduce ----
  auto* sc_reduce = app.add_subcommand("reduce", "generate hardness instances from a ONE-IN-THREE 3SAT file");
  struct {
    Common common;
    std::string cnf, emit = "field", file;
  } reduce_args;
  sc_reduce->add_option("--cnf", reduce_args.cnf, "DIMACS file (3 literals per clause)")->required();
  sc_reduce->add_option("--emit", reduce_args.emit, "quartic | form | field");
  sc_reduce->add_option("--file", reduce_args.file, "write the emitted object to this file");
  add_common(sc_reduce, reduce_args.common);

  // ---- oracle ----
  auto* sc_oracle = app.add_subcommand("oracle", "brute-force ONE-IN-THREE satisfiability");
  struct {
    Common common;
    std::string cnf;
  } oracle_args;
  sc_oracle->add_option("--cnf", oracle_args.cnf)->required();
  add_common(sc_oracle, oracle_args.common);

  // ---- simulate ----
  auto* sc_sim = app.add_subcommand("simulate", "integrate a trajectory");
  struct {
    Common common;
    std::string system, x0, csv, svg, level_poly;
    std::string c, s, lambda;
    double t_end = 20.0;
  } sim_args;
  sc_sim->add_option("--system", sim_args.system)->required();
  sc_sim->add_option("--x0", sim_args.x0, "comma-separated initial state")->required();
  sc_sim->add_option("--t-end", sim_args.t_end);
  sc_sim->add_option("--csv", sim_args.csv, "write the trajectory as CSV");
  sc_sim->add_option("--svg", sim_args.svg, "write a phase portrait (planar only)");
  sc_sim->add_option("--level-poly", sim_args.level_poly,
                     "overlay level sets of this polynomial in the SVG");
  sc_sim->add_option("--c", sim_args.c);
  sc_sim->add_option("--s", sim_args.s);
  sc_sim->add_option("--lambda", sim_args.lambda);
  add_common(sc_sim, sim_args.common);

  // ---- certify ----
  auto* sc_cert = app.add_subcommand("certify", "re-verify a certificate independently");
  struct {
    Common common;
    std::string poly, cert, system, v, cert_v, cert_vdot;
    std::string eps = "1/10000", eps_deriv = "1/10000";
    bool homogeneous = false;
    int degree = 0;
    std::string report;
  } cert_args;
  sc_cert->add_option("--poly", cert_args.poly, "polynomial the certificate is about");
  sc_cert->add_option("--cert", cert_args.cert, "certificate JSON");
  sc_cert->add_option("--system", cert_args.system, "system for Lyapunov-pair verification");
  sc_cert->add_option("--v", cert_args.v, "Lyapunov candidate file");
  sc_cert->add_option("--cert-v", cert_args.cert_v);
  sc_cert->add_option("--cert-vdot", cert_args.cert_vdot);
  sc_cert->add_option("--eps", cert_args.eps);
  sc_cert->add_option("--eps-deriv", cert_args.eps_deriv);
  sc_cert->add_option("--report", cert_args.report,
                      "find-lyapunov report whose infeasibility ray should be re-checked");
  sc_cert->add_option("--degree", cert_args.degree);
  sc_cert->add_flag("--homogeneous", cert_args.homogeneous);
  add_common(sc_cert, cert_args.common);

  // ---- gallery ----
  auto* sc_gal = app.add_subcommand("gallery", "list or export the named systems");
  struct {
    Common common;
    std::string name, file;
    std::string c, s, lambda;
  } gal_args;
  sc_gal->add_option("name", gal_args.name, "system name (omit to list)");
  sc_gal->add_option("--file", gal_args.file, "write the vector field text here");
  sc_gal->add_option("--c", gal_args.c);
  sc_gal->add_option("--s", gal_args.s);
  sc_gal->add_option("--lambda", gal_args.lambda);
  add_common(sc_gal, gal_args.common);

  std::vector<const char*> argv;
  argv.push_back("soslyap");
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {       // --help
      out << app.help();
      return kCliOk;
    }
    err << "error: " << e.what() << "\n";
    return kCliError;
  }

  try {
    if (*sc_check) {
      ReportBuilder rb("check-sos");
      rb.timing = check_args.common.timing;
      Polynomial p = load_polynomial(check_args.poly, rb);
      std::optional<BasisMode> mode;
      if (check_args.mode == "full") mode = BasisMode::full;
      else if (check_args.mode == "homogeneous") mode = BasisMode::homogeneous;
      else if (check_args.mode == "newton") mode = BasisMode::newton;
      else if (check_args.mode != "auto")
        throw std::runtime_error("unknown basis mode: " + check_args.mode);
      rb.j["config"] = Json{{"mode", check_args.mode},
                            {"rationalize", check_args.rationalize}};
      SosVerdict v = check_sos(p, mode);
      if (v.status == SosStatus::Sos && check_args.rationalize &&
          !v.certificate->is_rational()) {
        auto exact = rationalize_auto(p, *v.certificate);
        if (exact.status == SosStatus::Sos) v.certificate = exact.certificate;
        else rb.j["results"]["rationalize_note"] = "rounding failed; keeping float certificate";
      }
      // "unresolved" is the CLI-facing name for Indeterminate: distinct from
      // a certified "not-sos".
      rb.j["results"]["status"] =
          v.status == SosStatus::Indeterminate ? "unresolved" : to_string(v.status);
      if (!v.message.empty()) rb.j["results"]["message"] = v.message;
      if (v.status == SosStatus::Sos && !check_args.cert_path.empty()) {
        Json cj = certificate_to_json(*v.certificate, p.nvars());
        write_file(check_args.cert_path, cj.dump(2) + "\n");
        rb.j["results"]["certificate_file"] = check_args.cert_path;
        rb.j["results"]["certificate_hash"] = "fnv1a:" + fnv1a64_hex(cj.dump(2) + "\n");
      }
      if (v.status == SosStatus::NotSos) {
        Json ray;
        ray["kind"] = "sos-refutation";
        ray["nvars"] = p.nvars();
        Json basis = Json::array();
        for (const auto& m : v.basis.monomials) basis.push_back(m.exps);
        ray["basis"] = std::move(basis);
        Json support = Json::array();
        for (const auto& m : v.ray_support) support.push_back(m.exps);
        ray["ray_support"] = std::move(support);
        ray["ray"] = *v.dual_ray;
        rb.j["results"]["refutation"] = ray;
        if (!check_args.cert_path.empty()) {
          write_file(check_args.cert_path, ray.dump(2) + "\n");
          rb.j["results"]["certificate_file"] = check_args.cert_path;
        }
      }
      rb.finish(out, check_args.common.out_path);
      return v.status == SosStatus::Indeterminate ? kCliUnresolved : kCliOk;
    }

    if (*sc_find) {
      ReportBuilder rb("find-lyapunov");
      rb.timing = find_args.common.timing;
      VectorField f = load_system(find_args.system, rb, parse_opt_rat(find_args.c),
                                  parse_opt_rat(find_args.s),
                                  parse_opt_rat(find_args.lambda));
      LyapunovProblem lp{f, find_args.degree, find_args.homogeneous,
                         rat_from_string(find_args.eps),
                         rat_from_string(find_args.eps_deriv)};
      rb.j["config"] = Json{{"degree", lp.degree},
                            {"homogeneous", lp.homogeneous},
                            {"eps", rat_to_string(lp.eps)},
                            {"eps_deriv", rat_to_string(lp.eps_deriv)}};
      LyapunovResult r = search_sos_lyapunov(lp);
      rb.j["results"] = lyap_result_json(r);
      if (r.status == LyapunovResult::Status::Found) {
        if (!find_args.cert_v.empty()) {
          Json cj = certificate_to_json(r.cert_v, f.nvars);
          write_file(find_args.cert_v, cj.dump(2) + "\n");
          rb.j["results"]["cert_v_file"] = find_args.cert_v;
        }
        if (!find_args.cert_vdot.empty()) {
          Json cj = certificate_to_json(r.cert_vdot, f.nvars);
          write_file(find_args.cert_vdot, cj.dump(2) + "\n");
          rb.j["results"]["cert_vdot_file"] = find_args.cert_vdot;
        }
      }
      rb.finish(out, find_args.common.out_path);
      return r.status == LyapunovResult::Status::Indeterminate ? kCliUnresolved
                                                               : kCliOk;
    }

    if (*sc_sweep) {
      ReportBuilder rb("sweep");
      rb.timing = sweep_args.common.timing;
      VectorField f = load_system(sweep_args.system, rb, parse_opt_rat(sweep_args.c),
                                  parse_opt_rat(sweep_args.s),
                                  parse_opt_rat(sweep_args.lambda));
      std::vector<int> degrees;
      std::stringstream ss(sweep_args.degrees);
      std::string tok;
      while (std::getline(ss, tok, ',')) degrees.push_back(std::stoi(tok));
      rb.j["config"] = Json{{"degrees", degrees},
                            {"homogeneous", sweep_args.homogeneous},
                            {"eps", sweep_args.eps},
                            {"eps_deriv", sweep_args.eps_deriv},
                            {"early_stop", sweep_args.early_stop}};
      auto entries = degree_sweep(f, degrees, sweep_args.homogeneous,
                                  rat_from_string(sweep_args.eps),
                                  rat_from_string(sweep_args.eps_deriv),
                                  sweep_args.early_stop);
      Json list = Json::array();
      bool unresolved = false;
      for (auto& e : entries) {
        Json je = lyap_result_json(e.result);
        je["degree"] = e.degree;
        unresolved |= e.result.status == LyapunovResult::Status::Indeterminate;
        list.push_back(std::move(je));
      }
      rb.j["results"]["sweep"] = std::move(list);
      rb.finish(out, sweep_args.common.out_path);
      return unresolved ? kCliUnresolved : kCliOk;
    }

    if (*sc_reduce) {
      ReportBuilder rb("reduce");
      rb.timing = reduce_args.common.timing;
      std::string text = read_file(reduce_args.cnf);
      rb.input_file(reduce_args.cnf, text);
      CnfInstance inst = parse_cnf(text);
      Polynomial p = sat_to_quartic(inst);
      rb.j["config"] = Json{{"emit", reduce_args.emit}};
      Json meta{{"nvars", inst.nvars},
                {"nclauses", inst.clauses.size()},
                {"construction",
                 "sum_i x_i^2(1-x_i)^2 + sum_clauses (l1+l2+l3-1)^2"}};
      std::string payload;
      if (reduce_args.emit == "quartic") {
        meta["degree"] = p.degree();
        payload = p.to_string() + "\n";
      } else if (reduce_args.emit == "form") {
        Polynomial ph = homogenize_quartic(p);
        meta["degree"] = ph.degree();
        meta["nvars_out"] = ph.nvars();
        payload = ph.to_string() + "\n";
      } else if (reduce_args.emit == "field") {
        VectorField f = quartic_to_gradient_field(homogenize_quartic(p));
        meta["field_degree"] = 3;
        meta["nvars_out"] = f.nvars;
        payload = vector_field_to_string(f);
      } else {
        throw std::runtime_error("unknown emit kind: " + reduce_args.emit);
      }
      rb.j["results"] = meta;
      if (!reduce_args.file.empty()) {
        write_file(reduce_args.file, payload);
        rb.j["results"]["file"] = reduce_args.file;
      } else {
        rb.j["results"]["text"] = payload;
      }
      rb.finish(out, reduce_args.common.out_path);
      return kCliOk;
    }

    if (*sc_oracle) {
      ReportBuilder rb("oracle");
      rb.timing = oracle_args.common.timing;
      std::string text = read_file(oracle_args.cnf);
      rb.input_file(oracle_args.cnf, text);
      CnfInstance inst = parse_cnf(text);
      auto res = one_in_three_brute_force(inst);
      rb.j["results"]["satisfiable"] = res.satisfiable;
      if (res.satisfiable) rb.j["results"]["assignment"] = res.assignment;
      rb.finish(out, oracle_args.common.out_path);
      return kCliOk;
    }

    if (*sc_sim) {
      ReportBuilder rb("simulate");
      rb.timing = sim_args.common.timing;
      VectorField f = load_system(sim_args.system, rb, parse_opt_rat(sim_args.c),
                                  parse_opt_rat(sim_args.s),
                                  parse_opt_rat(sim_args.lambda));
      std::vector<double> x0;
      std::stringstream ss(sim_args.x0);
      std::string tok;
      while (std::getline(ss, tok, ',')) x0.push_back(std::stod(tok));
      SimConfig cfg;
      cfg.t_end = sim_args.t_end;
      rb.j["config"] = Json{{"x0", x0}, {"t_end", cfg.t_end}};
      Trajectory traj = integrate(f, x0, cfg);
      rb.j["results"]["terminal"] = to_string(traj.terminal);
      rb.j["results"]["steps"] = traj.times.size();
      rb.j["results"]["t_final"] = traj.times.back();
      rb.j["results"]["x_final"] = traj.states.back();
      if (!sim_args.csv.empty()) {
        write_file(sim_args.csv, trajectory_to_csv(traj));
        rb.j["results"]["csv"] = sim_args.csv;
      }
      if (!sim_args.svg.empty()) {
        std::optional<Polynomial> v;
        if (!sim_args.level_poly.empty()) v = load_polynomial(sim_args.level_poly, rb);
        emit_plot(traj, v, sim_args.svg);
        rb.j["results"]["svg"] = sim_args.svg;
      }
      rb.finish(out, sim_args.common.out_path);
      return kCliOk;
    }

    if (*sc_cert) {
      ReportBuilder rb("certify");
      rb.timing = cert_args.common.timing;
      bool ok = false;
      if (!cert_args.report.empty()) {
        // Re-check an infeasibility ray from a find-lyapunov report.
        std::string rtext = read_file(cert_args.report);
        rb.input_file(cert_args.report, rtext);
        Json rj = Json::parse(rtext);
        VectorField f = load_system(cert_args.system, rb, std::nullopt, std::nullopt,
                                    std::nullopt);
        LyapunovProblem lp{f, rj["config"]["degree"].get<int>(),
                           rj["config"]["homogeneous"].get<bool>(),
                           rat_from_string(rj["config"]["eps"].get<std::string>()),
                           rat_from_string(rj["config"]["eps_deriv"].get<std::string>())};
        auto ray = rj["results"]["infeasibility_ray"].get<std::vector<double>>();
        auto sdp = compile_lyapunov_sdp(lp);
        ok = verify_dual_ray(sdp.problem, ray, SdpOptions{});
        rb.j["results"]["verified"] = ok;
        rb.j["results"]["claim"] = "certified-infeasible";
      } else if (!cert_args.v.empty()) {
        VectorField f = load_system(cert_args.system, rb, std::nullopt, std::nullopt,
                                    std::nullopt);
        Polynomial v = load_polynomial(cert_args.v, rb);
        std::string cv = read_file(cert_args.cert_v);
        std::string cd = read_file(cert_args.cert_vdot);
        rb.input_file(cert_args.cert_v, cv);
        rb.input_file(cert_args.cert_vdot, cd);
        SosCertificate cert_v = certificate_from_json(Json::parse(cv));
        SosCertificate cert_d = certificate_from_json(Json::parse(cd));
        // Margins are reconstructed from the claim's eps and the degrees.
        LyapunovProblem lp{f, v.degree(), false, rat_from_string(cert_args.eps),
                           rat_from_string(cert_args.eps_deriv)};
        Polynomial g(f.nvars), h(f.nvars);
        for (size_t i = 0; i < f.nvars; ++i) {
          Monomial mg(f.nvars);
          mg.exps[i] = static_cast<uint32_t>(v.degree());
          g.add_term(mg, lp.eps);
        }
        Polynomial target_v = v - g;
        Polynomial vdot = lie_derivative(v, f);
        int dh = std::max(vdot.degree(), 2) / 2 * 2;
        for (size_t i = 0; i < f.nvars; ++i) {
          Monomial mh(f.nvars);
          mh.exps[i] = static_cast<uint32_t>(dh);
          h.add_term(mh, lp.eps_deriv);
        }
        Polynomial target_d = -vdot - h;
        bool okv = cert_v.is_rational() ? verify_certificate_exact(target_v, cert_v)
                                        : verify_certificate_float(target_v, cert_v);
        bool okd = cert_d.is_rational() ? verify_certificate_exact(target_d, cert_d)
                                        : verify_certificate_float(target_d, cert_d);
        ok = okv && okd;
        rb.j["results"]["verified_v"] = okv;
        rb.j["results"]["verified_vdot"] = okd;
        rb.j["results"]["claim"] = "lyapunov-pair";
      } else {
        Polynomial p = load_polynomial(cert_args.poly, rb);
        std::string ctext = read_file(cert_args.cert);
        rb.input_file(cert_args.cert, ctext);
        Json cj = Json::parse(ctext);
        if (cj.at("kind") == "sos-refutation") {
          GramBasis basis;
          size_t nv = cj["nvars"].get<size_t>();
          for (const auto& exps : cj["basis"]) {
            Monomial m(nv);
            for (size_t i = 0; i < nv; ++i) m.exps[i] = exps[i].get<uint32_t>();
            basis.monomials.push_back(std::move(m));
          }
          auto ray = cj["ray"].get<std::vector<double>>();
          auto prob = compile_sos(p, basis);
          ok = verify_dual_ray(prob, ray, SdpOptions{});
          rb.j["results"]["claim"] = "not-sos";
        } else {
          SosCertificate cert = certificate_from_json(cj);
          ok = cert.is_rational() ? verify_certificate_exact(p, cert)
                                  : verify_certificate_float(p, cert);
          rb.j["results"]["claim"] = "sos";
          rb.j["results"]["exact"] = cert.is_rational();
        }
        rb.j["results"]["verified"] = ok;
      }
      rb.j["results"]["verified"] = ok;
      rb.finish(out, cert_args.common.out_path);
      return ok ? kCliOk : kCliError;
    }

    if (*sc_gal) {
      ReportBuilder rb("gallery");
      rb.timing = gal_args.common.timing;
      if (gal_args.name.empty()) {
        Json list = Json::array();
        for (const auto& n : gallery_names()) {
          auto sys = gallery(n);
          list.push_back(Json{{"name", n},
                              {"description", sys.description},
                              {"homogeneous", sys.homogeneous}});
        }
        rb.j["results"]["systems"] = std::move(list);
        rb.finish(out, gal_args.common.out_path);
        return kCliOk;
      }
      GalleryParams gp;
      gp.c = parse_opt_rat(gal_args.c);
      gp.s = parse_opt_rat(gal_args.s);
      gp.lambda = parse_opt_rat(gal_args.lambda);
      auto sys = gallery(gal_args.name, gp);
      rb.j["results"]["name"] = sys.name;
      rb.j["results"]["description"] = sys.description;
      rb.j["results"]["homogeneous"] = sys.homogeneous;
      Json params = Json::object();
      for (auto& [k, v] : sys.params) params[k] = rat_to_string(v);
      rb.j["results"]["params"] = std::move(params);
      std::string text = vector_field_to_string(sys.field);
      if (!gal_args.file.empty()) {
        write_file(gal_args.file, text);
        rb.j["results"]["file"] = gal_args.file;
      } else {
        rb.j["results"]["field"] = text;
      }
      rb.finish(out, gal_args.common.out_path);
      return kCliOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCliError;
  }
  return kCliError;
}

}  // namespace soslyap

#endif
