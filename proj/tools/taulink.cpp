#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "taulink/bivariate.hpp"
#include "taulink/json_io.hpp"
#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"
#include "taulink/verify.hpp"

using namespace taulink;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { text, json };

struct Options {
  RunConfig cfg;
  Format format = Format::text;
  std::string out;
  bool no_timing = false;
};

std::string series_text(const LaurentSeries& s) {
  auto terms = s.terms();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::string out;
  for (const auto& [e, c] : terms) {
    if (is_zero(c)) continue;
    std::string mag = to_string(abs(c));
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    const bool unit = mag == "1" && e != 0;
    if (!unit) out += mag;
    if (e != 0) out += (unit ? "" : "*") + std::string("z") + (e == 1 ? "" : "^" + std::to_string(e));
  }
  if (out.empty()) out = "0";
  if (!s.is_exact()) {
    const int next = s.last_known() + (s.expansion() == Expansion::at_zero ? 1 : -1);
    out += " + O(z^" + std::to_string(next) + ")";
  }
  return out;
}

Json pairs_json(int first, const std::vector<Rational>& v, int step = 1) {
  Json j = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    j.push_back(Json::array({std::to_string(first + step * static_cast<int>(i)), to_string(v[i])}));
  }
  return j;
}

std::string pairs_text(const std::string& name, int first, const std::vector<Rational>& v, int step = 1) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += name + "_" + std::to_string(first + step * static_cast<int>(i)) + " = " + to_string(v[i]) + "\n";
  }
  return out;
}

std::string bivariate_text(const std::string& name, const SymBivariate& s) {
  std::string out;
  for (const auto& [ij, v] : s.coeffs) {
    out += name + "_" + std::to_string(ij.first) + "," + std::to_string(ij.second) + " = " + to_string(v) + "\n";
  }
  return out;
}

std::string cmd_coeffs(const Options& o, const std::string& name, int count) {
  if (count < 1) throw UsageError("count must be >= 1");
  std::vector<Rational> v;
  int first = 1;
  int step = 1;
  if (name == "a") {
    v = a_coefficients(count).coeffs;
  } else if (name == "e") {
    v = e_sequence(count);
  } else if (name == "b") {
    v = b_sequence(count).values;
  } else if (name == "C") {
    v = C_sequence(count - 1).values;
    first = 0;
  } else if (name == "l") {
    v = solve_l_from_btilde(count);
  } else if (name == "d") {
    for (int m = -1; m >= -count; --m) v.push_back(d_coefficient(m));
    first = -1;
    step = -1;
  } else if (name == "Q" || name == "QB") {
    const SymBivariate s = name == "Q" ? series_Q(count) : series_QB(count);
    return o.format == Format::json ? to_json(s).dump() + "\n" : bivariate_text(name, s);
  } else {
    throw UsageError("unknown coefficient table \"" + name + "\"");
  }
  return o.format == Format::json ? pairs_json(first, v, step).dump() + "\n" : pairs_text(name, first, v, step);
}

std::string cmd_series(const Options& o, const std::string& name, int order) {
  if (order < 1) throw UsageError("order must be >= 1");
  static const std::map<std::string, LaurentSeries (*)(int)> table{
      {"f", series_f},         {"h", series_h},         {"w", series_w},
      {"v", series_v},         {"psi", series_psi},     {"eta1", series_eta1},
      {"theta", series_theta}, {"theta-of-f", series_theta_of_f}, {"stirling", series_stirling}};
  const auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown series \"" + name + "\"");
  const LaurentSeries s = it->second(order);
  return o.format == Format::json ? to_json(s).dump() + "\n" : series_text(s) + "\n";
}

Json report_json(const std::string& suite, const Report& r) {
  Json j;
  j["suite"] = suite;
  j["pass"] = r.pass();
  const Json body = to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string report_text(const std::string& suite, const Report& r) {
  std::ostringstream out;
  out << suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (checked " << r.checked;
  if (r.seed >= 0) out << ", seed " << r.seed;
  out << ", " << r.mismatches.size() << " mismatches)\n";
  for (const auto& m : r.mismatches) {
    out << "  " << m.label << " at " << (m.where.empty() ? format_monomial(m.monomial, r.alphabet) : m.where)
        << ": " << to_string(m.lhs) << " vs " << to_string(m.rhs) << "\n";
  }
  return out.str();
}

std::string cmd_verify(const Options& o, const std::string& suite, bool& pass) {
  if (suite != "all" && !is_suite(suite)) throw UsageError("unknown suite \"" + suite + "\"");
  Verifier v(o.cfg);
  if (suite != "all") {
    const Report r = v.run(suite);
    pass = r.pass();
    return o.format == Format::json ? report_json(suite, r).dump() + "\n" : report_text(suite, r);
  }
  pass = true;
  Json suites = Json::array();
  std::string text;
  for (const auto& name : suite_names()) {
    const auto start = std::chrono::steady_clock::now();
    const Report r = v.run(name);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && r.pass();
    Json j = report_json(name, r);
    if (!o.no_timing) j["seconds"] = seconds;
    suites.push_back(std::move(j));
    text += report_text(name, r);
  }
  if (o.format == Format::text) return text + (pass ? "all: PASS\n" : "all: FAIL\n");
  return Json{{"suite", "all"}, {"pass", pass}, {"suites", std::move(suites)}}.dump() + "\n";
}

std::string correlator_text(const Insertion& d) {
  std::string out = "<";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? " tau_" : "tau_") + std::to_string(d[i]);
  return out + ">";
}

std::string cmd_fk(const Options& o, int weight_bound) {
  if (weight_bound < 3) throw UsageError("weight bound must be >= 3");
  const CorrelatorTable table = solve_fk(weight_bound);
  const TruncationSpec trunc{0, weight_bound, weight_bound};
  const TauSeries fk = fk_series(table, Alphabet::t, trunc);
  if (o.format == Format::json) {
    Json c = Json::array();
    for (const auto& [d, v] : table.entries()) c.push_back(Json::array({d, to_string(v)}));
    return Json{{"weight_bound", weight_bound}, {"correlators", std::move(c)}, {"log_part", to_json(fk.log_part)}}
               .dump() +
           "\n";
  }
  std::string out;
  for (const auto& [d, v] : table.entries()) out += correlator_text(d) + " = " + to_string(v) + "\n";
  return out + "F_K(t) = " + format_poly(fk.log_part) + "\n";
}

std::string cmd_fh(const Options& o) {
  const RunConfig& c = o.cfg;
  const TruncationSpec trunc = margin_truncation(c.u_max, c.weight_max, c.margin_extra);
  const HodgeSeries fh = build_fh(solve_fk(trunc.weight_max), trunc, c.kernel);
  const GradedPoly t = fh.t.log_part.restricted(c.u_max, c.weight_max);
  const GradedPoly q = fh.q.log_part.restricted(c.u_max, c.weight_max);
  if (o.format == Format::json) {
    return Json{{"window", {{"u_max", c.u_max}, {"weight_max", c.weight_max}}},
                {"t", to_json(t)},
                {"q", to_json(q)}}
               .dump() +
           "\n";
  }
  return "F_H(u,t) = " + format_poly(t) + "\nF_H(u,q) = " + format_poly(q) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact series, operators and tau-function identities"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::string format = "text";
  std::optional<int> weight_max;
  app.add_option("--u-max", o.cfg.u_max, "u-power bound of the comparison window")->check(CLI::PositiveNumber);
  app.add_option("--weight-max", weight_max, "weight bound of the comparison window")->check(CLI::PositiveNumber);
  app.add_option("--order", o.cfg.order, "series truncation")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.cfg.seed, "seed for sampled inputs");
  app.add_option("--margin-extra", o.cfg.margin_extra, "extra weight margin")->check(CLI::NonNegativeNumber);
  app.add_option("--out", o.out, "also write stdout to this file");
  app.add_flag("--no-timing", o.no_timing, "omit wall-clock seconds from verify all");
  app.add_flag_callback("--serial", [&] { o.cfg.kernel = Kernel::serial; }, "use the serial kernel");

  std::string name;
  int count = 0;
  auto* coeffs = app.add_subcommand("coeffs", "coefficient tables a, e, b, C, l, d, Q, QB");
  coeffs->add_option("name", name)->required();
  coeffs->add_option("count", count)->required();
  std::string sname;
  int sorder = 0;
  auto* series = app.add_subcommand("series", "named series f, h, w, v, psi, eta1, theta, theta-of-f, stirling");
  series->add_option("name", sname)->required();
  series->add_option("order", sorder);
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite, or all");
  verify->add_option("suite", suite)->required();
  int wb = 0;
  auto* fk = app.add_subcommand("fk", "intersection numbers and F_K(t)");
  fk->add_option("weight_bound", wb)->required();
  auto* fh = app.add_subcommand("fh", "F_H on the comparison window, in t and q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!weight_max) {
    if (const char* env = std::getenv("TAULINK_WEIGHT_MAX")) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(env, &pos);
        if (pos != std::string(env).size() || v < 1) throw std::invalid_argument(env);
        weight_max = v;
      } catch (const std::exception&) {
        std::cerr << "TAULINK_WEIGHT_MAX must be a positive integer\n";
        return 2;
      }
    }
  }
  if (weight_max) o.cfg.weight_max = *weight_max;
  o.format = format == "json" ? Format::json : Format::text;

  std::string out;
  bool pass = true;
  try {
    if (*coeffs) out = cmd_coeffs(o, name, count);
    else if (*series) out = cmd_series(o, sname, sorder > 0 ? sorder : o.cfg.order);
    else if (*verify) out = cmd_verify(o, suite, pass);
    else if (*fk) out = cmd_fk(o, wb);
    else if (*fh) out = cmd_fh(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out;
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    f << out;
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 2;
    }
  }
  return pass ? 0 : 1;
}
