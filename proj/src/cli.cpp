#include "eqlab/cli.hpp"

#include "eqlab/analysis.hpp"
#include "eqlab/consumer.hpp"
#include "eqlab/dynamics.hpp"
#include "eqlab/economy_io.hpp"
#include "eqlab/error.hpp"
#include "eqlab/excess.hpp"
#include "eqlab/producer.hpp"
#include "eqlab/solve.hpp"
#include "eqlab/surplus.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace eqlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string token = text.substr(pos, next - pos);
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
      throw IoError("cannot parse number \"" + token + "\"");
    }
    values.push_back(value);
    pos = next + 1;
  }
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

std::vector<Vector> parse_waypoints(const std::string& text) {
  std::vector<Vector> points;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (!item.empty()) points.push_back(parse_vector(item));
  }
  return points;
}

// Path file: one waypoint per line, entries separated by commas.
std::vector<Vector> read_waypoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Vector> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    points.push_back(parse_vector(line));
  }
  return points;
}

std::string format(const Vector& v) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index k = 0; k < v.size(); ++k) out << (k ? "," : "") << v(k);
  return out.str();
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << format(m.row(r).transpose()) << '\n';
  }
  return out.str();
}

class Writer {
 public:
  Writer(std::string path, std::ostream& fallback, CommandOutcome& outcome)
      : path_(std::move(path)), fallback_(fallback), outcome_(outcome) {}

  template <typename Fn>
  void emit(Fn&& fn) {
    if (path_.empty()) {
      fn(fallback_);
      return;
    }
    std::ofstream file(path_);
    if (!file) throw IoError("cannot write " + path_);
    fn(file);
    file.close();
    if (!file) throw IoError("write failed for " + path_);
    outcome_.artifacts.emplace_back(path_);
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  CommandOutcome& outcome_;
};

struct Options {
  std::string econ;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
  std::string prices;
  std::string p0;
  std::string speeds;
  double tmax = 200.0;
  int stride = 1;
  int starts = 50;
  int consumer = 1;
  int producer = 1;
  double wealth = 0.0;
  std::string path;
  std::string path_file;
  std::string grid;
  int goods = 2;
  int consumers = 1;
  int producers = 0;
};

Economy load_valid(const Options& o) {
  Economy e = load_economy(o.econ);
  require_valid(e);
  return e;
}

PriceVector prices_for(const Economy& e, const std::string& text) {
  PriceVector p(parse_vector(text));
  if (p.size() != e.goods) throw DomainError("price dimension mismatch");
  return p;
}

SolverOptions solver_options(const Options& o) {
  SolverOptions s;
  if (o.tol > 0.0) s.tolerance = o.tol;
  return s;
}

int run(const std::string& command, const Options& o, std::ostream& out,
        CommandOutcome& outcome) {
  out << std::setprecision(17);
  Writer writer(o.out, out, outcome);

  if (command == "gen") {
    const Economy e =
        generate_random_economy(o.seed, o.goods, o.consumers, o.producers);
    writer.emit([&](std::ostream& s) { s << economy_to_json(e); });
    return kExitOk;
  }

  if (command == "validate") {
    const Economy e = load_economy(o.econ);
    const auto report = validate_economy(e);
    out << (report.ok() ? "ok" : "invalid") << '\n';
    for (const auto& v : report.violations) {
      out << "violation " << v.rule << ": " << v.message << '\n';
    }
    return report.ok() ? kExitOk : kExitValidation;
  }

  const Economy e = load_valid(o);

  if (command == "demand") {
    const auto i = static_cast<std::size_t>(o.consumer - 1);
    if (o.consumer < 1 || i >= e.consumers.size()) {
      throw DomainError("consumer index out of range");
    }
    const PriceVector p = prices_for(e, o.prices);
    const double m = o.wealth > 0.0 ? o.wealth : wealth(e, i, p);
    const DemandResult d = demand(e.consumers[i], e.mode, p, m);
    out << "wealth " << m << '\n'
        << "bundle " << format(d.bundle) << '\n'
        << "boundary " << (d.boundary ? "true" : "false") << '\n'
        << "multiplier " << d.multiplier << '\n';
    if (!d.boundary) {
      out << "slutsky\n" << format_matrix(slutsky(e.consumers[i], e.mode, p, m));
    }
    return kExitOk;
  }

  if (command == "supply") {
    const auto j = static_cast<std::size_t>(o.producer - 1);
    if (o.producer < 1 || j >= e.producers.size()) {
      throw DomainError("producer index out of range");
    }
    const PriceVector p = prices_for(e, o.prices);
    const SupplyResult s = supply(e.producers[j], p);
    out << "netput " << format(s.netput) << '\n' << "profit " << s.profit << '\n';
    return kExitOk;
  }

  if (command == "excess") {
    const PriceVector p = prices_for(e, o.prices);
    const ExcessResult r = excess_demand(e, p);
    out << "zeta " << format(r.zeta) << '\n'
        << "walras " << p.values().dot(r.zeta) << '\n';
    for (std::size_t i = 0; i < r.wealths.size(); ++i) {
      out << "consumer " << i + 1 << " wealth " << r.wealths[i] << " excess "
          << format(r.per_consumer[i]) << '\n';
    }
    return kExitOk;
  }

  if (command == "solve") {
    const PriceVector p0 =
        o.p0.empty() ? PriceVector(Vector::Ones(e.goods)) : prices_for(e, o.p0);
    const EquilibriumReport r = find_equilibrium(e, p0, solver_options(o));
    out << "converged " << (r.converged ? "true" : "false") << '\n'
        << "p_star " << format(r.p_star) << '\n'
        << "p_star_numeraire " << format(r.p_star / r.p_star(e.goods - 1)) << '\n'
        << "residual " << r.residual << '\n'
        << "index " << r.index << '\n'
        << "iterations " << r.iterations << '\n';
    return r.converged ? kExitOk : kExitNumerical;
  }

  if (command == "unique") {
    const UniquenessReport r =
        verify_uniqueness(e, o.starts, o.seed, solver_options(o));
    out << "starts " << r.starts << '\n'
        << "converged " << r.converged << '\n'
        << "clusters " << r.clusters.size() << '\n';
    for (const auto& c : r.clusters) {
      out << "cluster " << format(c.representative) << " members " << c.members
          << '\n';
    }
    out << "max_intra_distance " << r.max_intra_distance << '\n'
        << "max_inter_distance " << r.max_inter_distance << '\n'
        << "unique " << (r.unique() ? "true" : "false") << '\n';
    return kExitOk;
  }

  if (command == "index") {
    PriceVector p = o.prices.empty()
                        ? PriceVector(find_equilibrium(e, PriceVector(Vector::Ones(e.goods))).p_star)
                        : prices_for(e, o.prices);
    const double chi = bordered_determinant(e, p, 1e-5);
    out << "prices " << format(p.values()) << '\n'
        << "chi " << chi << '\n'
        << "index " << equilibrium_index(e, p) << '\n';
    return kExitOk;
  }

  if (command == "tatonnement") {
    const PriceVector p0 =
        o.p0.empty() ? PriceVector(Vector::Ones(e.goods)) : prices_for(e, o.p0);
    TatonnementConfig cfg;
    cfg.speeds = o.speeds.empty() ? Vector(Vector::Ones(e.goods)) : parse_vector(o.speeds);
    cfg.t_max = o.tmax;
    cfg.sample_stride = o.stride;
    if (o.tol > 0.0) cfg.tolerance = o.tol;
    std::optional<PriceVector> reference;
    try {
      const auto eq = find_equilibrium(e, p0);
      if (eq.converged) reference = PriceVector(eq.p_star);
    } catch (const NumericalError&) {
    }
    const TatonnementTrace trace = integrate_tatonnement(e, p0, cfg, reference);
    writer.emit([&](std::ostream& s) { trace.write_csv(s); });
    // With no --out the trace went to stdout; keep the summary off it.
    std::ostream& summary = o.out.empty() ? std::clog : out;
    summary << std::setprecision(17) << "verdict " << to_string(trace.verdict)
            << '\n'
            << "samples " << trace.samples.size() << '\n'
            << "max_h_drift " << trace.max_h_drift << '\n';
    if (trace.limit) summary << "limit " << format(*trace.limit) << '\n';
    return trace.verdict == Verdict::kStepFailure ? kExitNumerical : kExitOk;
  }

  if (command == "surplus") {
    std::vector<Vector> points =
        o.path_file.empty() ? parse_waypoints(o.path) : read_waypoints(o.path_file);
    const PricePath path(std::move(points));
    std::vector<double> wealths;
    if (o.wealth > 0.0) wealths.assign(e.consumers.size(), o.wealth);
    const AggregateSurplus r = aggregate_surplus_identity(e.consumers, path, wealths);
    writer.emit([&](std::ostream& s) {
      s << std::setprecision(17) << "lhs,rhs,gap\n"
        << r.lhs << ',' << r.rhs << ',' << r.gap << '\n';
    });
    return kExitOk;
  }

  if (command == "curves") {
    const Vector g = parse_vector(o.grid);
    const CurveTable table =
        partial_eq_curves(e, std::vector<double>(g.begin(), g.end()));
    writer.emit([&](std::ostream& s) { table.write_csv(s); });
    return kExitOk;
  }

  throw IoError("unknown subcommand " + command);
}

}  // namespace

CommandOutcome execute(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CommandOutcome outcome;
  CLI::App app{"Quasi-linear general-equilibrium laboratory", "eqlab"};
  app.require_subcommand(1);
  Options o;

  auto econ = [&](CLI::App* sub) {
    sub->add_option("--econ", o.econ, "Economy JSON file")->required();
  };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (default: stdout)");
  };
  auto tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Override the default tolerance");
  };

  auto* validate = app.add_subcommand("validate", "Check model assumptions");
  econ(validate);

  auto* dem = app.add_subcommand("demand", "Consumer demand and Slutsky matrix");
  econ(dem);
  dem->add_option("--consumer", o.consumer, "1-based consumer index");
  dem->add_option("--prices", o.prices, "Comma-separated prices")->required();
  dem->add_option("--wealth", o.wealth, "Wealth (default: m^i(p))");

  auto* sup = app.add_subcommand("supply", "Producer supply and profit");
  econ(sup);
  sup->add_option("--producer", o.producer, "1-based producer index");
  sup->add_option("--prices", o.prices, "Comma-separated prices")->required();

  auto* exc = app.add_subcommand("excess", "Aggregate excess demand");
  econ(exc);
  exc->add_option("--prices", o.prices, "Comma-separated prices")->required();

  auto* sol = app.add_subcommand("solve", "Find an equilibrium price");
  econ(sol);
  sol->add_option("--p0", o.p0, "Start prices (default: all ones)");
  tol(sol);

  auto* uni = app.add_subcommand("unique", "Multi-start uniqueness check");
  econ(uni);
  uni->add_option("--starts", o.starts, "Number of starts")->check(CLI::Range(2, 1 << 20));
  uni->add_option("--seed", o.seed, "RNG seed");
  tol(uni);

  auto* idx = app.add_subcommand("index", "Index of an equilibrium");
  econ(idx);
  idx->add_option("--prices", o.prices, "Equilibrium prices (default: solve)");

  auto* tat = app.add_subcommand("tatonnement", "Integrate the price adjustment ODE");
  econ(tat);
  tat->add_option("--p0", o.p0, "Start prices (default: all ones)");
  tat->add_option("--speeds", o.speeds, "Adjustment speeds (default: all ones)");
  tat->add_option("--tmax", o.tmax, "Time horizon");
  tat->add_option("--stride", o.stride, "Sample every n-th accepted step");
  out_opt(tat);
  tol(tat);

  auto* sur = app.add_subcommand("surplus", "Aggregate consumer-surplus relation");
  econ(sur);
  sur->add_option("--path", o.path, "Waypoints, e.g. \"1,1;4,2\"");
  sur->add_option("--path-file", o.path_file, "File with one waypoint per line");
  sur->add_option("--wealth", o.wealth, "Fixed wealth for every consumer (default 10)");
  out_opt(sur);

  auto* cur = app.add_subcommand("curves", "Two-good demand and supply curves");
  econ(cur);
  cur->add_option("--grid", o.grid, "Comma-separated prices of good 1")->required();
  out_opt(cur);

  auto* gen = app.add_subcommand("gen", "Generate a random economy");
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--goods", o.goods, "Number of goods L");
  gen->add_option("--consumers", o.consumers, "Number of consumers");
  gen->add_option("--producers", o.producers, "Number of producers");
  out_opt(gen);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return outcome;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    outcome.exit_code = kExitIo;
    return outcome;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    outcome.exit_code = run(command, o, out, outcome);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    outcome.exit_code = kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    outcome.exit_code = kExitValidation;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    outcome.exit_code = kExitNumerical;
  }
  if (outcome.exit_code != kExitOk && command != "validate") outcome.artifacts.clear();
  return outcome;
}

}  // namespace eqlab
