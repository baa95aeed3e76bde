#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "a2q/eigen.hpp"
#include "a2q/reduction.hpp"
#include "a2q/spectra.hpp"

namespace a2q::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunConfig {
  std::uint32_t q = 2;
  int depth = 0;
  double tol_s = kTolS;
  double tol_sing = kTolSing;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string emit;
  std::string output_dir;
  std::string out;
};

void require_q(std::uint32_t q) {
  if (!is_prime(q)) throw DomainError(fmt::format("q must be a prime >= 2, got {}", q));
}

void require_depth(int depth) {
  if (depth < 2) throw DomainError(fmt::format("depth must be >= 2, got {}", depth));
}

void require_tolerances(const RunConfig& c) {
  if (!(c.tol_s > 0 && c.tol_sing > 0 && c.tol > 0)) throw DomainError("tolerances must be positive");
}

json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string num(double x) { return fmt::format("{:.17g}", x); }

// "1.5", "-2i", "i", "0.3-0.7i", "1e-3+2e-1i".
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty complex number");
  auto fail = [&] { return ParseError("cannot parse complex number '" + text + "'"); };
  const char* p = s.c_str();
  char* end = nullptr;
  double re = 0, im = 0;
  if (s.back() != 'i') {
    re = std::strtod(p, &end);
    if (end == p || *end != '\0') throw fail();
    return {re, 0};
  }
  // Split before the sign that starts the imaginary part (not an exponent sign).
  std::size_t split = 0;
  for (std::size_t k = s.size() - 1; k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && (k == 0 || (s[k - 1] != 'e' && s[k - 1] != 'E'))) {
      split = k;
      break;
    }
  }
  std::string rpart = s.substr(0, split), ipart = s.substr(split, s.size() - split - 1);
  if (!rpart.empty()) {
    re = std::strtod(rpart.c_str(), &end);
    if (end == rpart.c_str() || *end != '\0') throw fail();
  }
  if (ipart.empty() || ipart == "+") {
    im = 1;
  } else if (ipart == "-") {
    im = -1;
  } else {
    im = std::strtod(ipart.c_str(), &end);
    if (end == ipart.c_str() || *end != '\0') throw fail();
  }
  return {re, im};
}

Triple parse_triple(const std::string& text) {
  Triple s;
  std::stringstream in(text);
  std::string item;
  int k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 3) throw ParseError("--s needs exactly three comma-separated complex numbers");
    s[k++] = parse_complex(item);
  }
  if (k != 3) throw ParseError("--s needs exactly three comma-separated complex numbers");
  return s;
}

fs::path output_dir(const RunConfig& c) {
  fs::path dir = ".";
  if (!c.output_dir.empty()) {
    dir = c.output_dir;
  } else if (const char* env = std::getenv("A2Q_OUTPUT_DIR"); env && *env) {
    dir = env;
  }
  fs::create_directories(dir);
  return dir;
}

fs::path output_path(const RunConfig& c, const std::string& fallback) {
  if (!c.out.empty()) return c.out;
  return output_dir(c) / fallback;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

// Text goes to --out when given, otherwise to stdout.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
  }
}

// Bumped whenever a CSV column or JSON key changes meaning.
constexpr int kFormatVersion = 1;

json header(const RunConfig& c, const char* command) {
  return {{"command", command}, {"format", kFormatVersion}, {"q", c.q}, {"seed", c.seed}};
}

// reduce

int cmd_reduce(const RunConfig& c, const std::string& matrix, int random, int dim, int max_m, std::ostream& out) {
  const FieldCfg field(c.q);
  json j = header(c, "reduce");
  if (!matrix.empty()) {
    const ProjMat g = parse_matrix(field, matrix);
    const ReductionResult r = reduce(g);
    const bool ok = verify_witness(r, g);
    j["matrix"] = to_string(g);
    j["m"] = r.m;
    j["n"] = r.n ? json(*r.n) : json(nullptr);
    j["gamma"] = to_string(r.gamma);
    j["w"] = to_string(r.w);
    j["steps"] = r.steps;
    j["verified"] = ok;
    emit(c, out, j.dump(2) + "\n");
    return ok ? kOk : kVerificationFailed;
  }
  if (random <= 0) throw DomainError("reduce needs --matrix or --random N with N > 0");
  if (dim != 2 && dim != 3) throw DomainError("--dim must be 2 or 3");
  if (max_m < 0) throw DomainError("--max-m must be >= 0");
  Rng rng(c.seed);
  json cases = json::array();
  int failures = 0;
  for (int k = 0; k < random; ++k) {
    const int m = static_cast<int>(rng.uniform_int(0, max_m));
    const int n = dim == 3 ? static_cast<int>(rng.uniform_int(0, m)) : 0;
    const std::vector<int> e = dim == 3 ? std::vector<int>{m, n, 0} : std::vector<int>{m, 0};
    const ProjMat g = random_gamma(field, dim, rng) * ProjMat::diag_t(field, e) * random_w(field, dim, rng);
    const ReductionResult r = reduce(g);
    const bool ok = r.m == m && (dim == 2 || r.n == n) && verify_witness(r, g);
    failures += !ok;
    json row = {{"matrix", to_string(g)}, {"expected_m", m}, {"m", r.m}};
    if (dim == 3) {
      row["expected_n"] = n;
      row["n"] = *r.n;
    }
    row["steps"] = r.steps;
    row["verified"] = ok;
    cases.push_back(std::move(row));
  }
  j["dim"] = dim;
  j["cases"] = std::move(cases);
  j["failures"] = failures;
  emit(c, out, j.dump(2) + "\n");
  return failures == 0 ? kOk : kVerificationFailed;
}

// complex

int cmd_complex(const RunConfig& c, std::ostream& out) {
  require_q(c.q);
  require_depth(c.depth);
  const QuotientComplex cx(c.q, c.depth);
  auto row_text = [&](Direction dir, std::size_t i) {
    std::string s;
    for (const auto& e : cx.row(dir, i)) {
      const Vertex t = cx.vertices()[e.target];
      s += fmt::format("{}{}.{}:{}", s.empty() ? "" : " ", t.m, t.n, e.coeff);
    }
    return s;
  };
  if (c.emit == "csv") {
    std::string text = fmt::format("# a2q complex q={} depth={} seed={} format={}\n", c.q, c.depth, c.seed, kFormatVersion);
    text += "m,n,color,stabilizer_order,weight_num,weight_den,plus,minus,masked\n";
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const Vertex v = cx.vertices()[i];
      const Rational& w = cx.weight(i);
      text += fmt::format("{},{},{},{},{},{},{},{},{}\n", v.m, v.n, color(v), stabilizer_order(c.q, v).str(),
                          numerator(w).str(), denominator(w).str(), row_text(Direction::Plus, i),
                          row_text(Direction::Minus, i), cx.masked(Direction::Plus, i) ? 1 : 0);
    }
    emit(c, out, text);
    return kOk;
  }
  if (c.emit != "json") throw DomainError("complex: --emit must be csv or json");
  json j = header(c, "complex");
  j["depth"] = c.depth;
  j["degree"] = cx.degree();
  json verts = json::array();
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const Vertex v = cx.vertices()[i];
    json row = {{"m", v.m},
                {"n", v.n},
                {"color", color(v)},
                {"stabilizer_order", stabilizer_order(c.q, v).str()},
                {"weight", rational_json(cx.weight(i))},
                {"masked", cx.masked(Direction::Plus, i)}};
    for (Direction dir : {Direction::Plus, Direction::Minus}) {
      json entries = json::array();
      for (const auto& e : cx.row(dir, i)) {
        const Vertex t = cx.vertices()[e.target];
        entries.push_back({{"m", t.m}, {"n", t.n}, {"coeff", e.coeff}});
      }
      row[dir == Direction::Plus ? "plus" : "minus"] = std::move(entries);
    }
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  emit(c, out, j.dump(2) + "\n");
  return kOk;
}

// eigen

int cmd_eigen(const RunConfig& c, const std::string& s_text, const std::string& lambda_text, bool check,
              std::ostream& out, std::ostream& err) {
  require_q(c.q);
  require_depth(c.depth);
  require_tolerances(c);
  if (s_text.empty() == lambda_text.empty()) throw DomainError("eigen needs exactly one of --s and --lambda");
  const SpectralParam p = s_text.empty() ? from_lambda(c.q, parse_complex(lambda_text), c.tol_sing)
                                         : make_param(c.q, parse_triple(s_text), c.tol_s, c.tol_sing);
  if (p.near_singular) {
    err << fmt::format("warning: near-singular parameter (smallest gap {:.3g}); generic formula loses accuracy\n",
                       smallest_gap(p.s));
  }
  const auto lam = lambda_of(p);
  const auto f = eigenfunction(p, c.depth);

  std::string csv = fmt::format("# a2q eigen q={} depth={} seed={} format={}\n", c.q, c.depth, c.seed, kFormatVersion);
  csv += "m,n,re,im\n";
  std::size_t i = 0;
  for (int m = 0; m <= c.depth; ++m)
    for (int n = 0; n <= m; ++n, ++i) csv += fmt::format("{},{},{},{}\n", m, n, num(f[i].real()), num(f[i].imag()));
  const fs::path csv_path = output_path(c, fmt::format("eigen_q{}_M{}.csv", c.q, c.depth));
  write_file(csv_path, csv);

  const double residual = verify_recurrence(p, c.depth);
  json j = header(c, "eigen");
  json s = json::array();
  for (const auto& x : p.s) s.push_back(complex_json(x));
  j["s"] = std::move(s);
  j["stratum"] = to_string(p.stratum);
  j["near_singular"] = p.near_singular;
  j["lambda_plus"] = complex_json(lam.lambda_plus);
  j["lambda_minus"] = complex_json(lam.lambda_minus);
  j["depth"] = c.depth;
  j["residual"] = residual;
  j["tolerance"] = c.tol;
  j["csv"] = csv_path.string();
  const bool ok = residual < c.tol;
  if (check) j["passed"] = ok;
  out << j.dump(2) << "\n";
  return check && !ok ? kVerificationFailed : kOk;
}

// norm

int cmd_norm(const RunConfig& c, int iters, std::ostream& out) {
  require_q(c.q);
  require_depth(c.depth);
  const auto est = norm_estimate(c.q, c.depth, iters);
  json j = header(c, "norm");
  j["depth"] = c.depth;
  j["iterations"] = est.iterations;
  j["estimate"] = est.estimate;
  j["bound"] = est.bound;
  j["ratio"] = est.estimate / est.bound;
  j["history"] = est.history;
  const bool ok = est.estimate <= est.bound + 1e-9;
  j["within_bound"] = ok;
  emit(c, out, j.dump(2) + "\n");
  return ok ? kOk : kVerificationFailed;
}

// spectra and witness

json report_json(const ResidualReport& r) {
  return {{"epsilon", r.epsilon},
          {"depth", r.depth},
          {"residual_plus", r.residual_plus},
          {"residual_minus", r.residual_minus},
          {"norm", r.norm},
          {"truncation_fraction", r.truncation_fraction}};
}

json witness_json(const RunConfig& c, const WitnessReport& w) {
  json j = header(c, "witness");
  j["lambda_star"] = w.lambda_star;
  j["sigma2_contains"] = w.sigma2_contains;
  j["margin"] = w.margin;
  j["root_moduli"] = w.root_moduli;
  json sweep = json::array();
  for (const auto& r : w.sweep) sweep.push_back(report_json(r));
  j["sweep"] = std::move(sweep);
  j["sweep_monotone"] = w.sweep_monotone;
  j["verdict"] = !w.sigma2_contains && w.margin > 0 && w.sweep_monotone ? "not Ramanujan" : "inconclusive";
  return j;
}

int cmd_witness(const RunConfig& c, const std::vector<double>& eps, std::ostream& out) {
  require_q(c.q);
  const auto w = non_ramanujan_witness(c.q, eps);
  emit(c, out, witness_json(c, w).dump(2) + "\n");
  return !w.sigma2_contains && w.margin > 0 && w.sweep_monotone ? kOk : kVerificationFailed;
}

int cmd_sweep(const RunConfig& c, const std::vector<double>& eps, std::ostream& out) {
  Rng rng(c.seed);
  const double a = rng.uniform(-3.14159, 3.14159), b = rng.uniform(-3.14159, 3.14159);
  const double r = std::sqrt(double(c.q));
  const std::vector<std::pair<std::string, SpectralParam>> families{
      {"sigma2_origin", from_lambda(c.q, 0)},
      {"sigma2_random", make_param(c.q, {std::polar(1.0, a), std::polar(1.0, b), std::polar(1.0, -a - b)})},
      {"sigma1_theta_0.7",
       make_param(c.q, {std::polar(r, 0.7), std::polar(1.0, -1.4), std::polar(1 / r, 0.7)})},
  };
  bool ok = true;
  json j = header(c, "spectra");
  std::string csv = fmt::format("# a2q spectra sweep q={} seed={} format={}\n", c.q, c.seed, kFormatVersion);
  csv += "family,lambda_re,lambda_im,epsilon,depth,residual_plus,residual_minus,norm,truncation_fraction\n";
  json fams = json::array();
  for (const auto& [name, p] : families) {
    const auto sweep = residual_sweep(p, eps);
    const bool mono = sweep_monotone(sweep);
    ok = ok && mono;
    const Complex l = lambda_of(p).lambda_plus;
    json rows = json::array();
    for (const auto& rep : sweep) {
      csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", name, num(l.real()), num(l.imag()), num(rep.epsilon),
                         rep.depth, num(rep.residual_plus), num(rep.residual_minus), num(rep.norm),
                         num(rep.truncation_fraction));
      rows.push_back(report_json(rep));
    }
    fams.push_back({{"family", name}, {"lambda", complex_json(l)}, {"sweep", std::move(rows)}, {"monotone", mono}});
  }
  j["families"] = std::move(fams);
  j["monotone"] = ok;
  if (c.emit == "csv") {
    emit(c, out, csv);
  } else if (c.emit == "json") {
    emit(c, out, j.dump(2) + "\n");
  } else {
    throw DomainError("spectra --sweep: --emit must be csv or json");
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_spectra(const RunConfig& c, int samples, bool sweep, bool witness, const std::vector<double>& eps,
                const std::vector<std::string>& tags, std::ostream& out) {
  require_q(c.q);
  if (witness) return cmd_witness(c, eps, out);
  if (sweep) return cmd_sweep(c, eps, out);
  if (!tags.empty()) {
    json j = header(c, "spectra");
    json pts = json::array();
    for (const auto& t : tags) {
      const Complex l = parse_complex(t);
      pts.push_back({{"lambda", complex_json(l)},
                     {"set_tag", to_string(tag_point(c.q, l).tag)},
                     {"root_moduli", root_moduli(c.q, l)}});
    }
    j["points"] = std::move(pts);
    emit(c, out, j.dump(2) + "\n");
    return kOk;
  }
  if (c.emit == "svg") {
    const fs::path path = output_path(c, fmt::format("spectra_q{}.svg", c.q));
    write_file(path, spectra_svg(c.q));
    json j = header(c, "spectra");
    j["svg"] = path.string();
    out << j.dump(2) << "\n";
    return kOk;
  }
  const auto pts = sample_sets(c.q, samples);
  if (c.emit == "csv") {
    std::string csv = fmt::format("# a2q spectra q={} samples={} seed={} format={}\n", c.q, samples, c.seed, kFormatVersion);
    csv += "theta,re,im,set_tag\n";
    for (const auto& p : pts) {
      csv += fmt::format("{},{},{},{}\n", num(p.theta), num(p.point.lambda.real()), num(p.point.lambda.imag()),
                         to_string(p.point.tag));
    }
    emit(c, out, csv);
    return kOk;
  }
  if (c.emit != "json") throw DomainError("spectra: --emit must be csv, json or svg");
  json j = header(c, "spectra");
  json arr = json::array();
  for (const auto& p : pts) {
    arr.push_back({{"theta", p.theta},
                   {"re", p.point.lambda.real()},
                   {"im", p.point.lambda.imag()},
                   {"set_tag", to_string(p.point.tag)}});
  }
  j["points"] = std::move(arr);
  emit(c, out, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quotient of the A2 building by PGL(3, F_q[t]): reduction, weights, eigenfunctions, spectra", "a2q"};
  app.set_config("--config", "", "key = value file supplying option defaults");
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--output-dir", c.output_dir, "directory for output files (default $A2Q_OUTPUT_DIR or .)");

  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", c.q, "prime field size")->capture_default_str(); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "output file (default stdout)"); };

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a matrix to its vertex x_{m,n} = diag(t^m, t^n, 1)");
  std::string matrix;
  int random = 0, dim = 3, max_m = 5;
  add_q(reduce_cmd);
  add_out(reduce_cmd);
  reduce_cmd->add_option("--matrix", matrix, "rows separated by ';', entries by ',', e.g. \"t^2,0,0;0,t,0;0,0,1\"");
  reduce_cmd->add_option("--random", random, "reduce N random products gamma x_{m,n} w instead");
  reduce_cmd->add_option("--dim", dim, "matrix size for --random (2 or 3)")->capture_default_str();
  reduce_cmd->add_option("--max-m", max_m, "largest m for --random")->capture_default_str();

  auto* complex_cmd = app.add_subcommand("complex", "vertices, weights and coefficient rows of the truncated quotient");
  add_q(complex_cmd);
  add_out(complex_cmd);
  int complex_depth = 10;
  std::string complex_emit = "json";
  complex_cmd->add_option("--depth", complex_depth, "truncation depth M")->capture_default_str();
  complex_cmd->add_option("--emit", complex_emit, "csv or json")->capture_default_str();

  auto* eigen_cmd = app.add_subcommand("eigen", "evaluate the simultaneous eigenfunction f_s on the depth-M triangle");
  std::string s_text, lambda_text;
  bool check = false;
  add_q(eigen_cmd);
  eigen_cmd->add_option("--out", c.out, "CSV file for f (default <output-dir>/eigen_q<q>_M<depth>.csv)");
  eigen_cmd->add_option("--s", s_text, "spectral parameter \"a+bi,c+di,e+fi\"");
  eigen_cmd->add_option("--lambda", lambda_text, "eigenvalue of A+, \"a+bi\"");
  int eigen_depth = 10;
  eigen_cmd->add_option("--depth", eigen_depth, "truncation depth M")->capture_default_str();
  eigen_cmd->add_flag("--check", check, "exit 2 unless the recurrence residual is below --tol");
  eigen_cmd->add_option("--tol-s", c.tol_s, "tolerance for membership in S")->capture_default_str();
  eigen_cmd->add_option("--tol-sing", c.tol_sing, "distance below which roots count as equal")->capture_default_str();
  eigen_cmd->add_option("--tol", c.tol, "residual tolerance for --check")->capture_default_str();

  auto* norm_cmd = app.add_subcommand("norm", "power-iteration estimate of ||A+|| on the truncation");
  int iters = 200;
  add_q(norm_cmd);
  add_out(norm_cmd);
  int norm_depth = 50;
  norm_cmd->add_option("--depth", norm_depth, "truncation depth M")->capture_default_str();
  norm_cmd->add_option("--iters", iters, "power iterations")->capture_default_str();

  auto* spectra_cmd = app.add_subcommand("spectra", "sample, tag and draw the spectrum sets");
  int samples = 360;
  bool sweep = false, witness = false;
  std::vector<double> eps = kDefaultEpsilons;
  std::vector<std::string> tags;
  add_q(spectra_cmd);
  add_out(spectra_cmd);
  std::string spectra_emit = "csv";
  spectra_cmd->add_option("--emit", spectra_emit, "csv, json or svg")->capture_default_str();
  spectra_cmd->add_option("--samples", samples, "points per curve")->capture_default_str();
  spectra_cmd->add_flag("--sweep", sweep, "run residual sweeps instead of sampling");
  spectra_cmd->add_flag("--witness", witness, "run the non-Ramanujan witness instead of sampling");
  spectra_cmd->add_option("--eps", eps, "epsilon values for sweeps")->delimiter(',');
  spectra_cmd->add_option("--tag", tags, "classify the given eigenvalue(s) \"a+bi\"");

  auto* witness_cmd = app.add_subcommand("witness", "check that the cusp q^{3/2}+q+q^{1/2} is an approximate eigenvalue "
                                                    "outside the building's spectrum");
  add_q(witness_cmd);
  add_out(witness_cmd);
  witness_cmd->add_option("--eps", eps, "epsilon values for the sweep")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomainError;
  }

  try {
    if (reduce_cmd->parsed()) return cmd_reduce(c, matrix, random, dim, max_m, out);
    if (complex_cmd->parsed()) {
      c.depth = complex_depth, c.emit = complex_emit;
      return cmd_complex(c, out);
    }
    if (eigen_cmd->parsed()) {
      c.depth = eigen_depth;
      return cmd_eigen(c, s_text, lambda_text, check, out, err);
    }
    if (norm_cmd->parsed()) {
      c.depth = norm_depth;
      return cmd_norm(c, iters, out);
    }
    if (spectra_cmd->parsed()) {
      c.emit = spectra_emit;
      return cmd_spectra(c, samples, sweep, witness, eps, tags, out);
    }
    if (witness_cmd->parsed()) return cmd_witness(c, eps, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kDomainError;
}

}  // namespace a2q::cli
