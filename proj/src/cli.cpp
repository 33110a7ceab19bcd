#include "eulerlab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerlab/dsl.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/reproduce.hpp"
#include "eulerlab/sampler.hpp"

namespace eulerlab {

namespace {

std::string fmt17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream stream(text);
  while (std::getline(stream, current, ',')) parts.push_back(current);
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  }
  while (used < text.size() &&
         std::isspace(static_cast<unsigned char>(text[used]))) {
    ++used;
  }
  if (used != text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  }
  return value;
}

Vec2 parse_pair(const std::string& text, const char* what) {
  const std::vector<std::string> parts = split_commas(text);
  if (parts.size() != 2) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " must be 'a,b', got '" + text + "'");
  }
  return {parse_double(parts[0]), parse_double(parts[1])};
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  for (const std::string& part : split_commas(text)) {
    values.push_back(parse_double(part));
  }
  if (values.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " must be a comma-separated list");
  }
  return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const char* what) {
  std::vector<std::int64_t> values;
  for (const std::string& part : split_commas(text)) {
    try {
      values.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + ": not an integer: '" + part + "'");
    }
  }
  return values;
}

struct Options {
  std::string product;
  std::string sigma_text = "1,1";
  std::string t_text = "0,0";
  std::string primes_text = "2,3";
  std::string sigmas_text = "1";
  int series_order = 64;
  long witness_budget = 1000000;
  double truncation_target = 1e-10;
  std::uint64_t seed = 0;
  long n = 100000;
  std::int64_t prime = 0;
  bool json = false;
  bool csv = false;
  std::string out_file;
};

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) {
        throw Error(ErrorCode::InvalidArgument,
                    "cannot open output file '" + path + "'");
      }
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void print_atom_line(std::ostream& out, const Atom& atom) {
  out << "  p=" << atom.key.p << " r=" << atom.key.r << " a=["
      << atom.key.a[0] << "," << atom.key.a[1]
      << "] coeff=" << to_string(atom.coeff) << " weight=" << fmt17(atom.weight)
      << " x=(" << fmt17(atom.x[0]) << "," << fmt17(atom.x[1]) << ")\n";
}

// The CLI keeps sigma away from the |alpha| = 1, <a,sigma> -> 0 boundary;
// the library itself accepts any <a,sigma> > 0.
constexpr double kSigmaFloor = 1e-6;

void require_cli_domain(const Product& product, const Vec2& sigma) {
  for (const Factor& factor : product.factors()) {
    if (dot(factor.a(), sigma) < kSigmaFloor) {
      throw Error(ErrorCode::DomainViolation,
                  "<a,sigma> must be at least 1e-6 for every factor");
    }
  }
}

int cmd_classify(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  const Vec2 sigma = parse_pair(opts.sigma_text, "--sigma");
  require_cli_domain(product, sigma);
  const Classification result =
      classify(product, sigma, opts.series_order, opts.witness_budget);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json j = to_json(result);
    j["product"] = format(product);
    os << j.dump(2) << "\n";
  } else if (opts.csv) {
    switch (result.kind) {
      case EvidenceKind::NonnegativeAtoms:
      case EvidenceKind::SignedAtomsPlusCF:
        write_atoms_csv(os, result.atoms);
        break;
      case EvidenceKind::Witness:
        os << "t1,t2,modulus\n"
           << fmt17(result.witness->t[0]) << ',' << fmt17(result.witness->t[1])
           << ',' << fmt17(result.witness->modulus) << '\n';
        break;
      case EvidenceKind::Exhausted:
        os << "verdict\nINCONCLUSIVE\n";
        break;
    }
  } else {
    os << "product: " << format(product) << "\n";
    os << "sigma: (" << fmt17(sigma[0]) << ", " << fmt17(sigma[1]) << ")\n";
    switch (result.verdict) {
      case Verdict::ID:
        os << "verdict: ID\n";
        os << "evidence: " << result.atoms.atoms().size()
           << " nonnegative atoms, R=" << result.atoms.truncation_order()
           << ", tail bound " << fmt17(result.atoms.tail_bound()) << "\n";
        break;
      case Verdict::QID: {
        os << "verdict: QID (CF verified to order "
           << result.cf_verified_order << ")\n";
        os << "evidence: " << result.atoms.atoms().size()
           << " atoms, R=" << result.atoms.truncation_order()
           << ", negative atoms:\n";
        for (const Atom& atom : result.atoms.negative_atoms()) {
          print_atom_line(os, atom);
        }
        break;
      }
      case Verdict::ND:
        os << "verdict: ND\n";
        os << "witness: t = (" << fmt17(result.witness->t[0]) << ", "
           << fmt17(result.witness->t[1])
           << "), |value| = " << fmt17(result.witness->modulus) << "\n";
        break;
      case Verdict::INCONCLUSIVE:
        os << "verdict: INCONCLUSIVE\n";
        os << "budgets exhausted: series order " << result.series_order
           << ", witness budget " << result.witness_budget << "\n";
        break;
    }
  }
  return result.verdict == Verdict::INCONCLUSIVE ? 2 : 0;
}

int cmd_eval(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  const Vec2 sigma = parse_pair(opts.sigma_text, "--sigma");
  require_cli_domain(product, sigma);
  const Vec2 t = parse_pair(opts.t_text, "--t");
  const std::complex<double> value = normalize(product, EvalPoint{sigma, t});

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json j{{"product", format(product)},
                     {"sigma", {sigma[0], sigma[1]}},
                     {"t", {t[0], t[1]}},
                     {"value", {{"re", value.real()}, {"im", value.imag()}}},
                     {"modulus", std::abs(value)}};
    os << j.dump(2) << "\n";
  } else if (opts.csv) {
    os << "re,im,modulus\n"
       << fmt17(value.real()) << ',' << fmt17(value.imag()) << ','
       << fmt17(std::abs(value)) << '\n';
  } else {
    os << "normalize = " << fmt17(value.real()) << " + " << fmt17(value.imag())
       << "i\n";
    os << "modulus = " << fmt17(std::abs(value)) << "\n";
  }
  return 0;
}

int cmd_expand(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  const Vec2 sigma = parse_pair(opts.sigma_text, "--sigma");
  require_cli_domain(product, sigma);
  const int R = choose_truncation(product, sigma, opts.truncation_target);
  const SignedAtomicMeasure measure = expand(product, sigma, R);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& atom : measure.atoms()) {
      atoms.push_back({{"p", atom.key.p},
                       {"r", atom.key.r},
                       {"a", {atom.key.a[0], atom.key.a[1]}},
                       {"coeff", to_string(atom.coeff)},
                       {"weight", atom.weight},
                       {"x", {atom.x[0], atom.x[1]}}});
    }
    nlohmann::json j{{"product", format(product)},
                     {"sigma", {sigma[0], sigma[1]}},
                     {"truncation_order", R},
                     {"tail_bound", measure.tail_bound()},
                     {"total_variation", measure.total_variation()},
                     {"atoms", std::move(atoms)}};
    os << j.dump(2) << "\n";
  } else {
    write_atoms_csv(os, measure);
  }
  return 0;
}

int cmd_series(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  std::int64_t p = opts.prime;
  if (p == 0) {
    const std::vector<std::int64_t> primes = product.primes();
    if (primes.size() != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "product has " + std::to_string(primes.size()) +
                      " primes; pick one with --prime");
    }
    p = primes.front();
  }
  const CoeffLattice lattice = coeff_lattice(product, p, opts.series_order);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i <= lattice.degree(); ++i) {
      for (int j = 0; j <= lattice.degree(); ++j) {
        if (sign(lattice.at(i, j)) == 0) continue;
        entries.push_back({{"i", i},
                           {"j", j},
                           {"num", lattice.at(i, j).get_num().get_str()},
                           {"den", lattice.at(i, j).get_den().get_str()}});
      }
    }
    nlohmann::json j{{"product", format(product)},
                     {"p", p},
                     {"degree", lattice.degree()},
                     {"nonnegative", lattice.nonnegative()},
                     {"entries", std::move(entries)}};
    os << j.dump(2) << "\n";
  } else {
    write_lattice_csv(os, lattice);
  }
  return 0;
}

int cmd_witness(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  const Vec2 sigma = parse_pair(opts.sigma_text, "--sigma");
  require_cli_domain(product, sigma);
  const std::optional<WitnessPoint> witness =
      find_nd_witness(product, sigma, opts.witness_budget);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json j{{"product", format(product)},
                     {"sigma", {sigma[0], sigma[1]}},
                     {"found", witness.has_value()}};
    if (witness) {
      j["witness"] = {{"t", {witness->t[0], witness->t[1]}},
                      {"modulus", witness->modulus}};
    } else {
      j["witness"] = nullptr;
    }
    os << j.dump(2) << "\n";
  } else if (opts.csv) {
    os << "t1,t2,modulus\n";
    if (witness) {
      os << fmt17(witness->t[0]) << ',' << fmt17(witness->t[1]) << ','
         << fmt17(witness->modulus) << '\n';
    }
  } else if (witness) {
    os << "witness: t = (" << fmt17(witness->t[0]) << ", "
       << fmt17(witness->t[1]) << "), |value| = " << fmt17(witness->modulus)
       << "\n";
  } else {
    os << "no witness found within budget " << opts.witness_budget << "\n";
  }
  return witness ? 0 : 2;
}

int cmd_sample(const Options& opts, std::ostream& out) {
  const Product product = parse(opts.product);
  const Vec2 sigma = parse_pair(opts.sigma_text, "--sigma");
  require_cli_domain(product, sigma);
  const int R = choose_truncation(product, sigma, opts.truncation_target);
  const SignedAtomicMeasure measure = expand(product, sigma, R);
  if (opts.n < 0) {
    throw Error(ErrorCode::InvalidArgument, "--n must be nonnegative");
  }
  const SampleBatch batch =
      sample(measure, static_cast<std::size_t>(opts.n), opts.seed);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json points = nlohmann::json::array();
    for (const Vec2& point : batch.points) {
      points.push_back({point[0], point[1]});
    }
    nlohmann::json j{{"product", format(product)},
                     {"sigma", {sigma[0], sigma[1]}},
                     {"n", batch.points.size()},
                     {"seed", batch.seed},
                     {"points", std::move(points)}};
    os << j.dump(2) << "\n";
  } else {
    write_batch_csv(os, batch);
  }
  return 0;
}

int cmd_reproduce(const Options& opts, std::ostream& out) {
  const std::vector<std::int64_t> primes =
      parse_int_list(opts.primes_text, "--primes");
  const std::vector<double> sigmas =
      parse_double_list(opts.sigmas_text, "--sigmas");
  for (double s : sigmas) {
    if (s < kSigmaFloor) {
      throw Error(ErrorCode::DomainViolation,
                  "sigma values must be at least 1e-6");
    }
  }
  const ReproduceReport report =
      reproduce(primes, sigmas, opts.series_order, opts.witness_budget);

  OutputTarget target(opts.out_file, out);
  std::ostream& os = target.stream();
  if (opts.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReproduceRow& row : report.rows) {
      rows.push_back({{"family", row.family},
                      {"product", row.product_text},
                      {"p", row.p},
                      {"q", row.q},
                      {"sigma", {row.sigma[0], row.sigma[1]}},
                      {"expected", to_string(row.expected)},
                      {"computed", to_string(row.computed)},
                      {"pass", row.pass}});
    }
    nlohmann::json j{{"rows", std::move(rows)},
                     {"all_pass", report.all_pass},
                     {"seconds", report.seconds}};
    os << j.dump(2) << "\n";
  } else if (opts.csv) {
    os << "family,product,p,q,sigma1,sigma2,expected,computed,pass\n";
    for (const ReproduceRow& row : report.rows) {
      os << row.family << ',' << row.product_text << ',' << row.p << ','
         << row.q << ',' << fmt17(row.sigma[0]) << ',' << fmt17(row.sigma[1])
         << ',' << to_string(row.expected) << ',' << to_string(row.computed)
         << ',' << (row.pass ? "true" : "false") << '\n';
    }
  } else {
    os << std::left << std::setw(12) << "family" << std::setw(22) << "product"
       << std::setw(14) << "sigma" << std::setw(10) << "expected"
       << std::setw(14) << "computed" << "result\n";
    std::size_t passed = 0;
    for (const ReproduceRow& row : report.rows) {
      std::ostringstream sigma_text;
      sigma_text << "(" << row.sigma[0] << "," << row.sigma[1] << ")";
      os << std::left << std::setw(12) << row.family << std::setw(22)
         << row.product_text << std::setw(14) << sigma_text.str()
         << std::setw(10) << to_string(row.expected) << std::setw(14)
         << to_string(row.computed) << (row.pass ? "PASS" : "FAIL") << "\n";
      if (row.pass) ++passed;
    }
    os << passed << "/" << report.rows.size() << " rows PASS ("
       << std::fixed << std::setprecision(1) << report.seconds << " s)\n";
    os << (report.all_pass ? "PASS" : "FAIL") << "\n";
  }
  return report.all_pass ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finite two-variable Euler products: evaluation, log-expansion,"
               " series coefficients, classification, sampling"};
  app.name("eulerlab");
  app.require_subcommand(1);

  Options opts;

  auto add_product = [&](CLI::App* cmd) {
    cmd->add_option("--product", opts.product, "product in the DSL grammar")
        ->required();
  };
  auto add_sigma = [&](CLI::App* cmd) {
    cmd->add_option("--sigma", opts.sigma_text, "sigma as 'a,b'")
        ->capture_default_str();
  };
  auto add_modes = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opts.json, "JSON output");
    cmd->add_flag("--csv", opts.csv, "CSV output");
    cmd->add_option("--out", opts.out_file, "write output to FILE");
  };

  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "decide ID / QID / ND / INCONCLUSIVE with evidence");
  add_product(classify_cmd);
  add_sigma(classify_cmd);
  classify_cmd->add_option("--series-order", opts.series_order,
                           "CF certification order K")->capture_default_str();
  classify_cmd->add_option("--witness-budget", opts.witness_budget,
                           "grid points for the witness search")->capture_default_str();
  add_modes(classify_cmd);

  CLI::App* reproduce_cmd = app.add_subcommand(
      "reproduce", "run the 11-family verdict table over primes and sigmas");
  reproduce_cmd->add_option("--primes", opts.primes_text,
                            "comma-separated primes (need at least two)")->capture_default_str();
  reproduce_cmd->add_option("--sigmas", opts.sigmas_text,
                            "comma-separated sigma values")->capture_default_str();
  reproduce_cmd->add_option("--series-order", opts.series_order, "")->capture_default_str();
  reproduce_cmd->add_option("--witness-budget", opts.witness_budget, "")->capture_default_str();
  add_modes(reproduce_cmd);

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate the normalized product at (sigma,t)");
  add_product(eval_cmd);
  add_sigma(eval_cmd);
  eval_cmd->add_option("--t", opts.t_text, "t as 'a,b'")->capture_default_str();
  add_modes(eval_cmd);

  CLI::App* expand_cmd = app.add_subcommand(
      "expand", "atom table of log of the normalized product");
  add_product(expand_cmd);
  add_sigma(expand_cmd);
  expand_cmd->add_option("--truncation-target", opts.truncation_target,
                         "tail bound target for choosing R")->capture_default_str();
  add_modes(expand_cmd);

  CLI::App* series_cmd = app.add_subcommand(
      "series", "per-prime Dirichlet series coefficient lattice");
  add_product(series_cmd);
  series_cmd->add_option("--prime", opts.prime,
                         "prime to expand at (defaults to the only prime)");
  series_cmd->add_option("--series-order", opts.series_order, "degree K")
      ->capture_default_str();
  add_modes(series_cmd);

  CLI::App* witness_cmd =
      app.add_subcommand("witness", "search for a point with |value| > 1");
  add_product(witness_cmd);
  add_sigma(witness_cmd);
  witness_cmd->add_option("--witness-budget", opts.witness_budget, "")->capture_default_str();
  add_modes(witness_cmd);

  CLI::App* sample_cmd = app.add_subcommand(
      "sample", "draw from the compound-Poisson law of a nonnegative measure");
  add_product(sample_cmd);
  add_sigma(sample_cmd);
  sample_cmd->add_option("--n", opts.n, "number of points")->capture_default_str();
  sample_cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  sample_cmd->add_option("--truncation-target", opts.truncation_target, "")
      ->capture_default_str();
  add_modes(sample_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("eulerlab");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(classify_cmd)) return cmd_classify(opts, out);
    if (app.got_subcommand(reproduce_cmd)) return cmd_reproduce(opts, out);
    if (app.got_subcommand(eval_cmd)) return cmd_eval(opts, out);
    if (app.got_subcommand(expand_cmd)) return cmd_expand(opts, out);
    if (app.got_subcommand(series_cmd)) return cmd_series(opts, out);
    if (app.got_subcommand(witness_cmd)) return cmd_witness(opts, out);
    if (app.got_subcommand(sample_cmd)) return cmd_sample(opts, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace eulerlab
