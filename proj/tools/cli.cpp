#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include <nkv/chow.hpp>
#include <nkv/enumerative.hpp>
#include <nkv/error.hpp>
#include <nkv/kalman.hpp>
#include <nkv/salmon.hpp>
#include <nkv/veronese.hpp>
#include <nkv/witness.hpp>

namespace nkv::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  unsigned n = 0;
  unsigned d = 2;
  unsigned s = 3;
  std::string f;
  std::string conic;
  std::string mu;
  std::string at;
  std::uint64_t seed = 1;
  unsigned trials = 20;
  std::string format = "text";
  bool table = false;
  bool print = false;
};

/// Thrown by a subcommand whose own checks failed; maps to exit 1.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned infer_n(const std::string& text) {
  static const std::regex var(R"(x(\d+))");
  unsigned n = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
    n = std::max(n, static_cast<unsigned>(std::stoul((*it)[1])));
  return n;
}

Polynomial parse_form(const Options& o) {
  if (o.f.empty()) throw Error(Errc::InvalidArgument, "--f is required");
  const unsigned n = o.n ? o.n : infer_n(o.f);
  if (n == 0) throw Error(Errc::InvalidArgument, "cannot infer n; pass --n");
  return Polynomial::parse(o.f, indexed_universe("x", n));
}

/// Universe of every identifier in `text`, with x1, x2, x3 last.
UniversePtr conic_universe(const std::string& text) {
  static const std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
  std::set<std::string> params;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
    const std::string name = it->str();
    if (name != "x1" && name != "x2" && name != "x3") params.insert(name);
  }
  std::vector<std::string> names(params.begin(), params.end());
  for (const char* x : {"x1", "x2", "x3"}) names.emplace_back(x);
  return make_universe(std::move(names));
}

const char* kGeneralConic = "b200*x1^2+b110*x1*x2+b101*x1*x3+b020*x2^2+b011*x2*x3+b002*x3^2";

QMatrix parse_matrix(const std::string& text, unsigned n) {
  // Rows separated by ';', entries by ',' or whitespace.
  std::vector<std::vector<Rational>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::replace(row.begin(), row.end(), ',', ' ');
    std::stringstream es(row);
    std::string entry;
    std::vector<Rational> r;
    while (es >> entry) r.push_back(parse_rational(entry));
    rows.push_back(std::move(r));
  }
  if (rows.size() != n)
    throw Error(Errc::DimensionMismatch, "matrix needs " + std::to_string(n) + " rows");
  for (const auto& r : rows)
    if (r.size() != n) throw Error(Errc::DimensionMismatch, "matrix needs " + std::to_string(n) + " columns");
  return QMatrix::from_rows(rows);
}

void emit_pairs(std::ostream& out, const std::string& format,
                const std::vector<std::pair<std::string, std::string>>& kv) {
  if (format == "json") {
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
  } else {
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
  }
}

int cmd_sympower(const Options& o, std::ostream& out) {
  const unsigned n = o.n ? o.n : 3;
  const PolyMatrix r = sym_power(PolyMatrix::symbolic(n), o.d);
  if (o.format == "json") out << r.to_json() << '\n';
  else out << r.to_text();
  return Ok;
}

int cmd_kalman_matrix(const Options& o, std::ostream& out) {
  const Polynomial f = parse_form(o);
  const KalmanInstance inst = KalmanInstance::from_form(f);
  if (!o.at.empty()) {
    const QMatrix k = kalman_matrix(inst, parse_matrix(o.at, inst.n));
    out << k.to_string();
    return Ok;
  }
  const PolyMatrix k = kalman_matrix(inst, PolyMatrix::symbolic(inst.n));
  if (o.format == "json") out << k.to_json() << '\n';
  else out << k.to_text();
  return Ok;
}

int cmd_kalman_det(const Options& o, std::ostream& out) {
  const Polynomial f = parse_form(o);
  const KalmanInstance inst = KalmanInstance::from_form(f);
  if (!o.at.empty()) {
    const Rational v = kalman_det_at(inst, parse_matrix(o.at, inst.n));
    emit_pairs(out, o.format, {{"det", to_string(v)}});
    return Ok;
  }
  const Polynomial det = kalman_det(f);
  const Integer expected = discriminant_budget(inst.n, inst.d).at("deg_det");
  std::vector<std::pair<std::string, std::string>> kv{
      {"degree", std::to_string(det.total_degree())},
      {"expected_degree", expected.get_str()},
      {"terms", std::to_string(det.size())}};
  if (o.print) kv.emplace_back("det", det.to_string());
  emit_pairs(out, o.format, kv);
  if (!det.is_zero() && Integer(det.total_degree()) != expected)
    throw AssertionFailure("determinant degree differs from the budget");
  return Ok;
}

int cmd_salmon(const Options& o, std::ostream& out) {
  std::string text = o.conic.empty() ? o.f : o.conic;
  if (text.empty() || text == "general") text = kGeneralConic;
  const Polynomial f = Polynomial::parse(text, conic_universe(text));
  const ConicKalman r = salmon_conic(f);

  std::vector<std::size_t> avars;
  for (std::size_t i = 0; i < 9; ++i) avars.push_back(i);
  std::vector<std::size_t> bvars;
  for (std::size_t i = 9; i < r.g2.universe()->size(); ++i) bvars.push_back(i);
  std::vector<std::pair<std::string, std::string>> kv{
      {"f", f.to_string()},
      {"g1", r.g1.to_string()},
      {"g2_terms", std::to_string(r.g2.size())},
      {"g2_degree_a", std::to_string(r.g2.degree_in(avars))},
      {"g2_degree_coefficients", std::to_string(r.g2.degree_in(bvars))}};
  if (o.print) kv.emplace_back("g2", r.g2.to_string());
  emit_pairs(out, o.format, kv);
  if (r.g2.degree_in(avars) != 6) throw AssertionFailure("g2 is not of degree 6 in the matrix entries");
  return Ok;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const AuditReport report = factorization_audit(parse_form(o), o.trials, o.seed);
  if (o.format == "json") {
    out << report.to_json() << '\n';
  } else {
    for (const auto& e : report.entries)
      out << status_name(e.status) << ' ' << e.assertion << " seed=" << e.witness_seed << '\n';
  }
  if (!report.all_pass()) throw AssertionFailure("audit failed");
  return Ok;
}

int cmd_degrees(const Options& o, std::ostream& out) {
  if (o.table) {
    bool ok = true;
    out << "quantity,parameters,value,stated,asserted\n";
    for (const auto& row : degree_table()) {
      out << row.quantity << ',' << '"' << row.parameters << '"' << ',' << row.value.get_str() << ','
          << row.stated << ',' << (row.asserted ? "yes" : "no") << '\n';
      if (row.asserted && !row.stated.empty() && row.stated != row.value.get_str()) ok = false;
    }
    if (!ok) throw AssertionFailure("degree table disagrees with a stated value");
    return Ok;
  }
  const unsigned n = o.n ? o.n : 3;
  const DegreeReport budget = discriminant_budget(n, o.d);
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& [k, v] : budget.values) kv.emplace_back(k, v.get_str());
  for (const Partition& mu : partitions(o.d, n))
    kv.emplace_back("deg_p" + mu.to_string(), deg_mu_kalman(n, mu).get_str());
  kv.emplace_back("detA_multiplicity", detA_multiplicity(n, o.d).get_str());
  emit_pairs(out, o.format, kv);
  if (budget.at("budget_ok") != 1 || budget.at("monomials_ok") != 1 || budget.at("delta_ok") != 1)
    throw AssertionFailure("degree budget does not balance");
  return Ok;
}

int cmd_chow(const Options& o, std::ostream& out) {
  const unsigned n = o.n ? o.n : 3;
  std::vector<std::pair<std::string, std::string>> kv;
  bool ok = true;
  for (unsigned s = 1; s <= std::min(o.s, 2u); ++s) {
    const Integer c = linear_coefficient(class_Wtilde(n, s));
    kv.emplace_back("ctilde_" + std::to_string(s), c.get_str());
    ok = ok && c == coeff_ctilde(n, s);
  }
  if (o.s >= 3) {
    if (n != 3) throw Error(Errc::UnsupportedCase, "s = 3 classes are tabulated for n = 3 only");
    const Integer c = linear_coefficient(fixture_Wtilde3());
    kv.emplace_back("ctilde_3", c.get_str());
    ok = ok && c == coeff_ctilde(3, 3);
    TruncatedClass sum = fixture_E3();
    for (const SetPartition& p : SetPartition::all(3))
      sum = sum + (p.is_discrete() ? class_Wtilde(3, 3) : class_WsP(3, p));
    const bool identity = sum == class_W(3, 3);
    kv.emplace_back("decomposition_identity", identity ? "holds" : "fails");
    ok = ok && identity;
    if (o.print) kv.emplace_back("W3", class_W(3, 3).to_string());
  }
  emit_pairs(out, o.format, kv);
  if (!ok) throw AssertionFailure("Chow checks failed");
  return Ok;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const Polynomial f = parse_form(o);
  const KalmanInstance inst = KalmanInstance::from_form(f);
  const Partition mu = o.mu.empty() ? Partition({inst.d}) : Partition::parse(o.mu);
  const MuWitness w = mu_witness(f, mu, o.seed);
  json cert = json::parse(certificate_json(w, f));
  const Rational det = kalman_det_at(inst, w.a);
  cert["det_K"] = to_string(det);
  out << cert.dump(2) << '\n';
  if (det != 0) throw AssertionFailure("Kalman determinant does not vanish at the witness");
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kalman varieties: symmetric powers, Kalman determinants and degree formulas", "nkv"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "number of variables (matrix size)");
    sub->add_option("--d", o.d, "degree");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--trials", o.trials, "trials per assertion")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--f", o.f, "form in x1..xn, e.g. \"x2^2-x1*x3\"");
  };

  auto* sympower = app.add_subcommand("sympower", "rho_d of the symbolic n x n matrix");
  add_common(sympower);
  auto* kmatrix = app.add_subcommand("kalman-matrix", "Kalman matrix of a form");
  add_common(kmatrix);
  add_form(kmatrix);
  kmatrix->add_option("--at", o.at, "rational matrix \"a11,a12;a21,a22\"");
  auto* kdet = app.add_subcommand("kalman-det", "Kalman determinant of a form");
  add_common(kdet);
  add_form(kdet);
  kdet->add_option("--at", o.at, "rational matrix \"a11,a12;a21,a22\"");
  kdet->add_flag("--print", o.print, "print the polynomial");
  auto* salmon = app.add_subcommand("salmon", "Kalman equation of a plane conic via resultants");
  add_common(salmon);
  add_form(salmon);
  salmon->add_option("--conic", o.conic, "conic in x1,x2,x3; other identifiers are parameters; \"general\" for the generic conic");
  salmon->add_flag("--print", o.print, "print g2");
  auto* audit = app.add_subcommand("audit", "pointwise audit of the factorization of det K_d(f)");
  add_common(audit);
  add_form(audit);
  auto* degrees = app.add_subcommand("degrees", "degree formulas");
  add_common(degrees);
  degrees->add_flag("--table", o.table, "every tabulated degree as CSV");
  auto* chow = app.add_subcommand("chow", "Chow classes of the eigenvector incidence varieties");
  add_common(chow);
  chow->add_option("--s", o.s, "number of eigenvectors")->check(CLI::Range(1u, 3u));
  chow->add_flag("--print", o.print, "print [W_3]");
  auto* witness = app.add_subcommand("witness", "matrix on the mu-Kalman variety of a form");
  add_common(witness);
  add_form(witness);
  witness->add_option("--mu", o.mu, "partition of d, e.g. \"(1,1)\"");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return BadInput;
  }

  try {
    if (*sympower) return cmd_sympower(o, out);
    if (*kmatrix) return cmd_kalman_matrix(o, out);
    if (*kdet) return cmd_kalman_det(o, out);
    if (*salmon) return cmd_salmon(o, out);
    if (*audit) return cmd_audit(o, out);
    if (*degrees) return cmd_degrees(o, out);
    if (*chow) return cmd_chow(o, out);
    if (*witness) return cmd_witness(o, out);
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return AssertionFailed;
  } catch (const Error& e) {
    err << e.what() << '\n';
    switch (e.code()) {
      case Errc::Parse:
      case Errc::InvalidArgument:
      case Errc::NotHomogeneous:
      case Errc::DegenerateDegree:
      case Errc::DimensionMismatch:
      case Errc::ZeroPolynomial:
      case Errc::UnsupportedPartition:
      case Errc::UnsupportedCase:
        return BadInput;
      default:
        return Internal;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return Internal;
  }
  return Internal;
}

}  // namespace nkv::cli
