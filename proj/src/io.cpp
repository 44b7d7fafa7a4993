#include "vpair/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vpair/geometry.hpp"
#include "vpair/newton.hpp"
#include "vpair/residual.hpp"

namespace vpair {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(raw, &pos);
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + raw + "'");
  }
}

int parse_int(const std::string& key, const std::string& raw) {
  const double x = parse_number(key, raw);
  const double r = std::round(x);
  if (x != r || std::abs(x) > 1e9)
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + raw + "'");
  return static_cast<int>(r);
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::string s = raw;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(key, tok));
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "': expected a list of numbers, got '" +
                                raw + "'");
  return out;
}

void apply_assignment(std::map<std::string, std::string>& kv, const std::string& text,
                      const char* what) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument(std::string(what) + " must be key=value, got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  const std::string value = trim(text.substr(eq + 1));
  if (key.empty())
    throw std::invalid_argument(std::string(what) + " has an empty key: '" + text + "'");
  kv[key] = value;
}

RunConfig build_run_config(const std::map<std::string, std::string>& kv) {
  static const char* known[] = {"mode", "gamma1", "gamma2", "b1",      "b2",         "d",
                                "modes", "grid",  "tol",    "max_iter", "eps_targets"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known))
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  const auto have = [&](const char* k) { return kv.count(k) != 0; };
  const auto get = [&](const char* k) -> const std::string& {
    const auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument(std::string("missing config key '") + k + "'");
    return it->second;
  };

  RunConfig rc;
  const std::string mode = get("mode");
  if (mode == "co")
    rc.pair.mode = PairMode::co_rotating;
  else if (mode == "counter")
    rc.pair.mode = PairMode::counter_rotating;
  else
    throw std::invalid_argument("config key 'mode': expected co or counter, got '" + mode + "'");

  rc.pair.gamma1 = parse_number("gamma1", get("gamma1"));
  if (rc.pair.mode == PairMode::co_rotating) {
    rc.pair.gamma2 = parse_number("gamma2", get("gamma2"));
  } else if (have("gamma2")) {
    throw std::invalid_argument(
        "config key 'gamma2' is not accepted in counter mode (gamma2 is solved for)");
  }
  rc.pair.b1 = parse_number("b1", get("b1"));
  rc.pair.b2 = parse_number("b2", get("b2"));
  rc.pair.d = parse_number("d", get("d"));
  if (have("modes")) rc.pair.N = parse_int("modes", get("modes"));
  if (have("grid")) rc.pair.M = parse_int("grid", get("grid"));
  if (have("tol")) rc.pair.tol = parse_number("tol", get("tol"));
  if (have("max_iter")) rc.pair.max_iter = parse_int("max_iter", get("max_iter"));
  rc.eps_targets = parse_list("eps_targets", get("eps_targets"));
  validate_config(rc.pair);
  return rc;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

std::string fmt_px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out.good()) throw IoError("write failed for '" + path + "'");
}

double gamma2_magnitude(const PairConfig& cfg, const VState& v) {
  return cfg.mode == PairMode::co_rotating ? std::abs(cfg.gamma2) : std::abs(v.state.s2);
}

}  // namespace

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    apply_assignment(kv, line, "config line");
  }
  for (const std::string& o : overrides) apply_assignment(kv, o, "override");
  return build_run_config(kv);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_branch_jsonl(const std::string& path, const Branch& branch) {
  std::ofstream out = open_for_write(path);
  for (const VState& v : branch.states) {
    out << "{\"eps\":" << format_double(v.eps) << ",\"scalar1\":" << format_double(v.state.s1)
        << ",\"scalar2\":" << format_double(v.state.s2) << ",\"coeffs1\":["
        << join_doubles(v.state.f1.coeffs) << "],\"coeffs2\":[" << join_doubles(v.state.f2.coeffs)
        << "],\"residual_norm\":" << format_double(v.residual_norm)
        << ",\"newton_iters\":" << v.newton_iters << "}\n";
  }
  finish_write(out, path);
}

std::vector<VState> read_branch_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read branch file '" + path + "'");
  std::vector<VState> states;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      VState v;
      v.eps = j.at("eps").get<double>();
      v.state.s1 = j.at("scalar1").get<double>();
      v.state.s2 = j.at("scalar2").get<double>();
      v.state.f1.coeffs = j.at("coeffs1").get<std::vector<double>>();
      v.state.f2.coeffs = j.at("coeffs2").get<std::vector<double>>();
      v.residual_norm = j.at("residual_norm").get<double>();
      v.newton_iters = j.at("newton_iters").get<int>();
      states.push_back(std::move(v));
    } catch (const json::exception& e) {
      throw IoError("branch file '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return states;
}

void write_boundary_csv(const std::string& path, const PairConfig& cfg, const VState& v,
                        int M_out) {
  const PhysicalPatchPair rec = reconstruct_patches(cfg, v, M_out);
  std::ofstream out = open_for_write(path);
  out << "patch_id,theta,x,y\n";
  const auto dump = [&](int id, const std::vector<cd>& pts) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / pts.size();
      out << id << ',' << format_double(theta) << ',' << format_double(pts[k].real()) << ','
          << format_double(pts[k].imag()) << '\n';
    }
  };
  dump(1, rec.boundary1);
  dump(2, rec.boundary2);
  finish_write(out, path);
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out = open_for_write(path);
  out << "name,predicted,fitted,rel_err,order\n";
  for (const ReportRow& r : rows) {
    out << r.name << ',' << format_double(r.predicted) << ',' << format_double(r.fitted) << ','
        << format_double(r.rel_err) << ',' << format_double(r.order) << '\n';
  }
  finish_write(out, path);
}

void write_boundaries_svg(const std::string& path, const PairConfig& cfg, const VState& v,
                          int M_out) {
  const PhysicalPatchPair rec = reconstruct_patches(cfg, v, M_out);
  double xmin = rec.centre1.real(), xmax = rec.centre1.real();
  double ymin = rec.centre1.imag(), ymax = rec.centre1.imag();
  const auto grow = [&](cd z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (cd z : rec.boundary1) grow(z);
  for (cd z : rec.boundary2) grow(z);
  grow(rec.centre2);
  const double pad = 0.08 * std::max(xmax - xmin, ymax - ymin) + 1e-12;
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double k = 860.0 / (xmax - xmin);
  const double width = 900.0;
  const double height = (ymax - ymin) * k + 70.0;
  const auto px = [&](double x) { return 20.0 + (x - xmin) * k; };
  const auto py = [&](double y) { return 50.0 + (ymax - y) * k; };

  std::ofstream out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_px(width) << "\" height=\""
      << fmt_px(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"20\" y=\"30\" font-family=\"monospace\" font-size=\"16\">"
      << (cfg.mode == PairMode::co_rotating ? "co-rotating" : "counter-rotating")
      << " pair, eps=" << eps_label(v.eps) << ", scalar1=" << format_double(v.state.s1)
      << ", scalar2=" << format_double(v.state.s2) << "</text>\n";
  const auto polygon = [&](const std::vector<cd>& pts, const char* color) {
    out << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << fmt_px(px(pts[i].real())) << ',' << fmt_px(py(pts[i].imag()));
    }
    out << "\"/>\n";
  };
  polygon(rec.boundary1, "#1f77b4");
  polygon(rec.boundary2, "#d62728");
  const auto mark = [&](cd c, const char* color, const char* label) {
    out << "<circle cx=\"" << fmt_px(px(c.real())) << "\" cy=\"" << fmt_px(py(c.imag()))
        << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << fmt_px(px(c.real()) + 6.0) << "\" y=\"" << fmt_px(py(c.imag()) - 6.0)
        << "\" font-family=\"monospace\" font-size=\"13\" fill=\"" << color << "\">" << label
        << "</text>\n";
  };
  mark(rec.centre1, "#1f77b4", "patch 1");
  mark(rec.centre2, "#d62728", "patch 2");
  out << "</svg>\n";
  finish_write(out, path);
}

std::vector<VerifyCheck> verify_branch(const PairConfig& cfg, const std::vector<VState>& states) {
  validate_config(cfg);
  const double scale = residual_scale(cfg);
  std::vector<VerifyCheck> checks;
  const auto push = [&](double eps, const char* label, double value, double limit, bool ge,
                        bool pass) {
    checks.push_back({eps, label, value, limit, ge, pass});
  };
  for (const VState& v : states) {
    const double r = residual_sup(residual_series(cfg, v.eps, v.state));
    push(v.eps, "residual", r, 2.0 * cfg.tol * scale, false, r <= 2.0 * cfg.tol * scale);

    const double mc = min_curvature(cfg, v);
    push(v.eps, "min_curvature", mc, 0.0, true, mc > 0.0);

    if (v.eps == 0.0) continue;

    const double eq = equilibrium_residual(cfg, v);
    push(v.eps, "equilibrium", eq, 1e-6, false, eq <= 1e-6);

    // Reflection w -> -w, eps -> -eps: a_n picks up (-1)^n, scalars are even.
    StateVector flipped = v.state;
    for (std::size_t i = 0; i < flipped.f1.coeffs.size(); i += 2) flipped.f1.coeffs[i] *= -1.0;
    for (std::size_t i = 0; i < flipped.f2.coeffs.size(); i += 2) flipped.f2.coeffs[i] *= -1.0;
    const double sym = residual_sup(residual_series(cfg, -v.eps, flipped)) / scale;
    push(v.eps, "symmetry", sym, 1e-10, false, sym <= 1e-10);

    // The branch must be detectably shaped: leading-order theory puts
    // sup|f_j| near |eps|*b_j*|gamma_other|/(d^2*|gamma_self|); gate at half.
    const CircleGrid grid = make_grid(cfg.M, 0.0);
    const double g2 = gamma2_magnitude(cfg, v);
    const double gs[2] = {std::abs(cfg.gamma1), g2};
    const double go[2] = {g2, std::abs(cfg.gamma1)};
    const double bs[2] = {cfg.b1, cfg.b2};
    const FourierMap* fs[2] = {&v.state.f1, &v.state.f2};
    for (int j = 0; j < 2; ++j) {
      if (gs[j] == 0.0) continue;  // patch carries no vorticity: no shape demand
      double sup = 0.0;
      for (cd fw : evaluate(*fs[j], grid)) sup = std::max(sup, std::abs(fw));
      const double limit =
          0.5 * std::abs(v.eps) * bs[j] * go[j] / (cfg.d * cfg.d * gs[j]);
      const char* label = j == 0 ? "nondegeneracy_1" : "nondegeneracy_2";
      push(v.eps, label, sup, limit, true, sup >= limit);
    }
  }
  return checks;
}

namespace {

void print_state_line(const VState& v) {
  std::cout << "eps=" << eps_label(v.eps) << " iters=" << v.newton_iters
            << " residual=" << format_double(v.residual_norm)
            << " truncation=" << format_double(v.truncation_indicator) << "\n";
}

int cmd_solve(const RunConfig& rc, const std::string& branch_path) {
  if (rc.eps_targets.size() != 1)
    throw std::invalid_argument(
        "solve expects exactly one value in eps_targets (use continue for ladders)");
  const Branch br = continue_branch(rc.pair, rc.eps_targets);
  write_branch_jsonl(branch_path, br);
  print_state_line(br.states.back());
  std::cout << "wrote " << branch_path << "\n";
  return 0;
}

int cmd_continue(const RunConfig& rc, const std::string& branch_path) {
  const Branch br = continue_branch(rc.pair, rc.eps_targets);
  write_branch_jsonl(branch_path, br);
  for (const VState& v : br.states) print_state_line(v);
  std::cout << "wrote " << branch_path << "\n";
  if (br.states.back().eps < rc.eps_targets.back()) {
    std::cerr << "continue: branch ends at eps=" << eps_label(br.eps_max)
              << " before the last target " << eps_label(rc.eps_targets.back())
              << " (continuation step failed)\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const RunConfig& rc, const std::string& branch_path, const std::string& out_dir) {
  const std::vector<VState> states = read_branch_jsonl(branch_path);
  if (states.empty()) throw IoError("branch file '" + branch_path + "' holds no states");
  const std::vector<VerifyCheck> checks = verify_branch(rc.pair, states);
  const std::string report_path = out_dir + "/verify.txt";
  std::ofstream rep = open_for_write(report_path);
  int failed = 0;
  for (const VerifyCheck& c : checks) {
    std::ostringstream line;
    line << "eps=" << eps_label(c.eps) << ' ' << c.label << ' ' << format_double(c.value)
         << (c.ge ? " >= " : " <= ") << format_double(c.limit) << ' '
         << (c.pass ? "PASS" : "FAIL");
    std::cout << line.str() << "\n";
    rep << line.str() << "\n";
    if (!c.pass) ++failed;
  }
  std::ostringstream tail;
  tail << "verify: " << (checks.size() - failed) << "/" << checks.size() << " checks passed";
  std::cout << tail.str() << "\n";
  rep << tail.str() << "\n";
  finish_write(rep, report_path);
  return failed == 0 ? 0 : 2;
}

int cmd_expand_check(const RunConfig& rc, const std::string& branch_path,
                     const std::string& out_dir) {
  Branch br;
  br.config = rc.pair;
  br.states = read_branch_jsonl(branch_path);
  br.eps_max = br.states.empty() ? 0.0 : br.states.back().eps;
  const std::vector<ReportRow> rows = expansion_report(br);
  write_report_csv(out_dir + "/report.csv", rows);
  int failed = 0;
  for (const ReportRow& r : rows) {
    std::cout << r.name << " predicted=" << format_double(r.predicted)
              << " fitted=" << format_double(r.fitted) << " rel_err=" << format_double(r.rel_err)
              << " order=" << format_double(r.order) << ' ' << (r.pass ? "PASS" : "FAIL") << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << "expand-check: " << (rows.size() - failed) << "/" << rows.size()
            << " rows passed; wrote " << out_dir << "/report.csv\n";
  return failed == 0 ? 0 : 2;
}

int cmd_emit(const RunConfig& rc, const std::string& branch_path, const std::string& out_dir) {
  const std::vector<VState> states = read_branch_jsonl(branch_path);
  if (states.empty()) throw IoError("branch file '" + branch_path + "' holds no states");
  const VState* last = nullptr;
  for (const VState& v : states) {
    if (v.eps == 0.0) {
      std::cout << "emit: skipping eps=0 state (patches are points)\n";
      continue;
    }
    const std::string path = out_dir + "/boundary_" + eps_label(v.eps) + ".csv";
    write_boundary_csv(path, rc.pair, v);
    std::cout << "wrote " << path << "\n";
    last = &v;
  }
  if (last) {
    write_boundaries_svg(out_dir + "/boundaries.svg", rc.pair, *last);
    std::cout << "wrote " << out_dir << "/boundaries.svg\n";
  }
  return 0;
}

}  // namespace

int run_command(const RunSpec& spec) {
  try {
    const bool known = spec.command == "solve" || spec.command == "continue" ||
                       spec.command == "verify" || spec.command == "expand-check" ||
                       spec.command == "emit";
    if (!known)
      throw std::invalid_argument(
          "unknown command '" + spec.command +
          "' (expected solve, continue, verify, expand-check or emit)");
    const RunConfig rc = parse_config(spec.config_path, spec.overrides);
    try {
      fs::create_directories(spec.out_dir);
    } catch (const fs::filesystem_error& e) {
      throw IoError("cannot create output directory '" + spec.out_dir + "': " + e.what());
    }
    const std::string branch_path = spec.out_dir + "/branch.jsonl";
    if (spec.command == "solve") return cmd_solve(rc, branch_path);
    if (spec.command == "continue") return cmd_continue(rc, branch_path);
    if (spec.command == "verify") return cmd_verify(rc, branch_path, spec.out_dir);
    if (spec.command == "expand-check") return cmd_expand_check(rc, branch_path, spec.out_dir);
    return cmd_emit(rc, branch_path, spec.out_dir);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vpair
