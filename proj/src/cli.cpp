#include "slopecert/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "slopecert/autgroup.hpp"
#include "slopecert/destabilize.hpp"
#include "slopecert/errors.hpp"
#include "slopecert/futaki.hpp"
#include "slopecert/positivity.hpp"
#include "slopecert/surface.hpp"

namespace slopecert::cli {

namespace {

std::string approx(const Rational& q) {
  std::ostringstream s;
  s << std::setprecision(12) << to_double(q);
  return s.str();
}

std::string exact(const Rational& q, bool with_approx) {
  return with_approx ? to_string(q) + " (approx " + approx(q) + ")" : to_string(q);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::string token;
  for (char ch : text + ",") {
    if (ch == ',' || ch == ' ') {
      if (!token.empty()) out.push_back(parse_rational(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return out;
}

std::vector<std::size_t> parse_schedule(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& q : parse_rational_list(text)) {
    if (q < 0 || q.get_den() != 1 || !q.get_num().fits_ulong_p()) {
      throw UsageError("schedule entries must be nonnegative integers");
    }
    out.push_back(q.get_num().get_ui());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_atomically(path, contents);
  }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const char* command) {
  for (const char* f : allowed) {
    if (format == f) return;
  }
  throw UsageError("format '" + format + "' is not available for " + command);
}

std::string certificate_summary(const Certificate& c, bool with_approx) {
  std::ostringstream s;
  s << "destabilized: " << c.presentation << "\n";
  s << "normalized: " << c.normalized_presentation << "\n";
  s << "polarization:";
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    s << " " << c.basis[i] << "=" << to_string(c.polarization[i]);
  }
  s << "\n";
  s << "curve: " << c.curve_tag.str() << " (genus " << c.curve_genus << ")\n";
  s << "seshadri_bound: " << exact(c.seshadri_bound, with_approx) << "\n";
  s << "lambda: " << exact(c.lambda, with_approx) << "\n";
  s << "df: " << exact(c.df_value, with_approx) << "\n";
  s << "epsilon_chain:";
  for (const auto& e : c.epsilon_chain) s << " " << to_string(e);
  s << "\n";
  s << "positivity: " << to_string(c.positivity.verdict) << "\n";
  s << "assumptions:";
  for (const auto& a : c.assumptions) s << " " << a;
  s << "\n";
  return s.str();
}

struct Options {
  std::string text;
  std::string emit;
  std::string format;
  unsigned lambda_depth = kDefaultLambdaDepth;
  unsigned epsilon_depth = 64;
  bool approx = false;
  std::string path;
  std::string polarization;
  std::string lambda;
  std::string seshadri;
  bool oracle = false;
  unsigned n = 0;
  std::string range = "4";
  unsigned grid = 0;
  std::string schedule;
};

int cmd_parse(const Options& o, std::ostream& out) {
  require_format(o.format.empty() ? "text" : o.format, {"text", "json"}, "parse");
  const auto p = parse_presentation(o.text);
  const auto norm = normalize(p);
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["presentation"] = pretty_print(p);
    doc["picard_rank"] = p.picard_rank();
    doc["basis"] = p.lattice()->labels();
    nlohmann::ordered_json k = nlohmann::ordered_json::array();
    for (const auto& c : p.canonical().coeffs()) k.push_back(to_string(c));
    doc["canonical"] = k;
    nlohmann::ordered_json tracked = nlohmann::ordered_json::array();
    for (const auto& t : p.tracked()) {
      tracked.push_back({{"tag", t.tag().str()},
                         {"self_intersection", to_string(intersect(t.cls(), t.cls()))},
                         {"genus", t.genus()}});
    }
    doc["tracked"] = tracked;
    doc["normalized"] = pretty_print(norm.presentation);
    doc["minimal_polystable"] = norm.minimal_polystable;
    out << doc.dump(2) << "\n";
    return kSuccess;
  }
  out << pretty_print(p) << "\n";
  out << "picard_rank: " << p.picard_rank() << "\n";
  out << "canonical: " << p.canonical().str() << "\n";
  for (const auto& t : p.tracked()) {
    out << "tracked " << t.tag().str() << ": " << t.cls().str()
        << " self=" << to_string(intersect(t.cls(), t.cls())) << " genus=" << t.genus()
        << "\n";
  }
  out << "normalized: " << pretty_print(norm.presentation)
      << (norm.minimal_polystable ? " (minimal polystable)" : "") << "\n";
  return kSuccess;
}

int cmd_destabilize(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"}, "destabilize");
  const auto p = parse_presentation(o.text);
  const auto verdict = destabilize(p, {o.lambda_depth, o.epsilon_depth});
  if (const auto* minimal = std::get_if<MinimalPolystable>(&verdict)) {
    out << minimal->presentation << ": " << minimal->reason << "\n";
    return kMinimalPolystable;
  }
  const auto& cert = std::get<Certificate>(verdict);
  const std::string doc = emit(cert);
  if (!o.emit.empty()) write_atomically(o.emit, doc);
  if (format == "json") {
    out << doc;
  } else {
    out << certificate_summary(cert, o.approx);
  }
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string document = read_file(o.path);
  Certificate cert;
  try {
    cert = load(document);
  } catch (const ParseError& e) {
    out << "rejected: schema: " << e.what() << "\n";
    return kRejected;
  }
  const auto report = verify(cert);
  if (!report.accepted) {
    out << "rejected: " << report.failed_check << ": " << report.detail << "\n";
    return kRejected;
  }
  out << "accepted:";
  for (const auto& c : report.passed_checks) out << " " << c;
  out << "\n";
  return kSuccess;
}

int cmd_df(const Options& o, std::ostream& out) {
  require_format(o.format.empty() ? "text" : o.format, {"text"}, "df");
  const auto p = parse_presentation(o.text);
  const auto* z = p.z_section();
  if (z == nullptr) throw UsageError("presentation has no curve Z");
  const auto coeffs = parse_rational_list(o.polarization);
  if (coeffs.size() != p.picard_rank()) {
    throw UsageError("polarization needs " + std::to_string(p.picard_rank()) +
                     " coefficients");
  }
  const DivisorClass L(p.lattice(), coeffs);
  Rational sesh;
  if (!o.seshadri.empty()) {
    sesh = parse_rational(o.seshadri);
  } else if (p.base().is_hirzebruch() && p.steps().empty()) {
    sesh = seshadri_at_Z(p.base().n, coeffs[0], coeffs[1]);
  } else {
    throw UsageError("--seshadri is required on blown-up presentations");
  }
  const Rational lambda = parse_rational(o.lambda);
  const Rational value =
      o.oracle ? df_total_space_oracle(TestConfigModel::from_surface(p, L, *z, sesh), lambda)
               : df_slope(SlopeInput::from_surface(p, L, *z, sesh), lambda);
  out << exact(value, o.approx) << "\n";
  return kSuccess;
}

int cmd_scan(const Options& o, std::ostream& out) {
  require_format(o.format.empty() ? "csv" : o.format, {"csv"}, "scan");
  if (o.grid == 0) throw UsageError("scan grid is empty");
  const Rational range = parse_rational(o.range);
  write_output(o.emit, scan_csv(scan_grid(o.n, range, o.grid, o.lambda_depth)), out);
  return kSuccess;
}

int cmd_reductivity(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"}, "reductivity");
  const auto p = parse_presentation(o.text);
  std::optional<std::vector<std::size_t>> schedule;
  if (!o.schedule.empty()) schedule = parse_schedule(o.schedule);
  const auto report = matsushima_verdict(p, schedule);
  out << (format == "json" ? report.to_json() : report.to_text());
  return kSuccess;
}

}  // namespace

std::vector<ScanRow> scan_grid(unsigned n, const Rational& range, unsigned grid,
                               unsigned lambda_depth) {
  if (grid == 0) throw UsageError("scan grid is empty");
  if (range <= 0) throw UsageError("scan range must be positive");
  std::vector<ScanRow> rows(grid);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned k = next++; k < grid; k = next++) {
      const Rational t = n + range * (k + 1) / grid;
      const auto samples = lambda_samples(SlopeInput::hirzebruch(n, Rational(1), t), lambda_depth);
      const auto best = std::min_element(samples.begin(), samples.end(),
                                         [](const auto& a, const auto& b) { return a.df < b.df; });
      rows[k] = {t, best->lambda, best->df};
    }
  };
  const unsigned threads = std::max(1u, std::min(grid, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "t,lambda_star,df_min\n";
  for (const auto& r : rows) {
    out += to_string(r.t) + "," + to_string(r.lambda_star) + "," + to_string(r.df_min) + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact K-instability certificates for rational surfaces", "slopecert"};
  app.require_subcommand(1);
  Options o;

  auto add_depths = [&](CLI::App* sub) {
    sub->add_option("--lambda-depth", o.lambda_depth, "dyadic lambda samples")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon-depth", o.epsilon_depth, "halvings allowed per epsilon")
        ->check(CLI::PositiveNumber);
  };

  auto* parse = app.add_subcommand("parse", "parse and describe a presentation");
  parse->add_option("presentation", o.text)->required();
  parse->add_option("--format", o.format, "text|json");

  auto* destab = app.add_subcommand("destabilize", "certify K-instability");
  destab->add_option("presentation", o.text)->required();
  destab->add_option("--emit", o.emit, "write the certificate JSON here");
  destab->add_option("--format", o.format, "text|json");
  destab->add_flag("--approx", o.approx, "append decimal approximations");
  add_depths(destab);

  auto* ver = app.add_subcommand("verify", "replay a certificate");
  ver->add_option("certificate", o.path)->required();

  auto* df = app.add_subcommand("df", "DF of the slope configuration of Z");
  df->add_option("--surface", o.text)->required();
  df->add_option("--polarization", o.polarization, "coefficients in basis order")->required();
  df->add_option("--lambda", o.lambda)->required();
  df->add_option("--seshadri", o.seshadri, "upper end of the lambda range");
  df->add_flag("--oracle", o.oracle, "use the total-space intersection oracle");
  df->add_option("--format", o.format, "text");
  df->add_flag("--approx", o.approx, "append a decimal approximation");

  auto* scan = app.add_subcommand("scan", "sweep L = Z + tF over the ample cone of F_n");
  scan->add_option("--n", o.n)->required();
  scan->add_option("--range", o.range, "t runs over (n, n + range]");
  scan->add_option("--grid", o.grid)->required();
  scan->add_option("--emit", o.emit, "write the CSV here");
  scan->add_option("--format", o.format, "csv");
  scan->add_option("--lambda-depth", o.lambda_depth)->check(CLI::PositiveNumber);

  auto* red = app.add_subcommand("reductivity", "Matsushima obstruction for toric surfaces");
  red->add_option("presentation", o.text)->required();
  red->add_option("--format", o.format, "text|json");
  red->add_option("--schedule", o.schedule, "cone refined by each blow-up");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kFailure;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, out);
    if (destab->parsed()) return cmd_destabilize(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (df->parsed()) return cmd_df(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (red->parsed()) return cmd_reductivity(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace slopecert::cli
