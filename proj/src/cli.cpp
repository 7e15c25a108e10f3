#include "bcmf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "bcmf/errors.hpp"
#include "bcmf/expansions.hpp"
#include "bcmf/measure.hpp"
#include "bcmf/serialize.hpp"
#include "bcmf/spectrum.hpp"

namespace bcmf::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  Json json = Json::object();
  std::string csv;
};

// One leaf subcommand: its CLI11 node, the option values to echo and the action.
struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, std::function<Json()>>> echo;
  std::function<Output()> action;

  template <class T>
  CLI::Option* option(const std::string& flag, T& var, const std::string& help) {
    echo.emplace_back(flag, [&var] { return Json(var); });
    return app->add_option("--" + flag, var, help);
  }

  Json meta() const {
    Json params = Json::object();
    for (const auto& [key, get] : echo) params[key] = get();
    return Json{{"command", name}, {"params", std::move(params)}};
  }
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + '\n';
}

std::string csv_kv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : rows) s += k + ',' + v + '\n';
  return s;
}

std::string fr(double v) { return format_real(v); }

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Undecided: return "undecided";
  }
  return "undecided";
}

std::vector<double> alpha_grid_from(double amin, double amax, int steps) {
  if (!(amin < amax)) throw DomainError("alpha-min must be smaller than alpha-max");
  if (steps < 2) throw DomainError("alpha-steps must be >= 2");
  return linspace(amin, amax, static_cast<std::size_t>(steps));
}

std::size_t to_count(int v, const char* flag) {
  if (v < 0) throw DomainError(std::string(flag) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

// Options shared by all subcommands; each subcommand registers the ones it reads.
struct Opts {
  double lambda = kUnset;
  double lambda2 = kUnset;
  double p = kUnset;
  double q = kUnset;
  double x = kUnset;
  double a = kUnset;
  double b = kUnset;
  double r = kUnset;
  double rho = 0.5;
  double tol = kDefaultConstantTolerance;
  double eps = 0.05;
  double alpha_min = kUnset;
  double alpha_max = kUnset;
  int alpha_steps = 200;
  int depth = kDefaultDepth;
  int membership_depth = static_cast<int>(kDefaultMembershipDepth);
  int nmin = 5;
  int nmax = 25;
  int mc_nmin = 4;
  int mc_nmax = 20;
  int n = 40;
  int k = 0;
  int kmax = 8;
  int samples = 200;
  int digits = 60;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string seq;
  std::string mode = "greedy";
  std::string source = "symbolic";
  std::string count_mode = "certified";
  std::vector<double> weights;
  std::vector<double> r_list;
};

class Dispatcher {
 public:
  Dispatcher() : app_("Bernoulli convolution multifractal toolkit", "bcmf") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--format", format_, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app_.add_option("--out", out_path_, "Write output to this file instead of stdout");
    register_all();
  }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << "bcmf: usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    Command* chosen = nullptr;
    for (auto& c : commands_)
      if (c->app->parsed()) chosen = c.get();
    if (chosen == nullptr) {
      err << "bcmf: usage error: a subcommand is required\n";
      return kExitUsage;
    }
    try {
      Output result = chosen->action();
      std::string text;
      if (format_ == "json") {
        Json doc{{"meta", chosen->meta()}};
        doc["meta"]["params"]["format"] = format_;
        for (auto& [key, value] : result.json.items()) doc[key] = value;
        text = dump(doc);
      } else {
        text = result.csv;
      }
      if (out_path_.empty())
        out << text;
      else
        write_file(out_path_, text);
      return kExitOk;
    } catch (const UsageError& e) {
      err << "bcmf: usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "bcmf: error: " << e.what() << '\n';
      return kExitError;
    }
  }

 private:
  Command& add(CLI::App* parent, const std::string& name, const std::string& help,
               const std::string& full_name) {
    auto cmd = std::make_unique<Command>();
    cmd->name = full_name;
    cmd->app = parent->add_subcommand(name, help);
    commands_.push_back(std::move(cmd));
    return *commands_.back();
  }

  static void need(bool given, const char* what) {
    if (!given) throw UsageError(what);
  }

  void register_all() {
    Opts& o = o_;

    {
      auto& c = add(&app_, "constants", "Golden ratio, multinacci, Komornik-Loreti and beta_1 constants",
                    "constants");
      c.option("tol", o.tol, "Bisection tolerance")->capture_default_str();
      c.option("k", o.kmax, "Largest multinacci order reported (>= 2)")->capture_default_str();
      c.action = [&o] {
        if (!(o.tol > 0.0)) throw DomainError("tol must be positive");
        if (o.kmax < 2) throw DomainError("k must be >= 2");
        Output r;
        const double golden = solve_constant(ConstantKind::Golden, o.tol);
        const double beta1 = solve_constant(ConstantKind::BetaOne, o.tol);
        const double kl = solve_constant(ConstantKind::KomornikLoreti, o.tol);
        Json multi = Json::object();
        r.csv = "name,k,value\n";
        r.csv += csv_row({"golden", "", fr(golden)});
        r.csv += csv_row({"beta1", "", fr(beta1)});
        r.csv += csv_row({"komornik_loreti", "", fr(kl)});
        for (int k = 2; k <= o.kmax; ++k) {
          const double g = solve_constant(ConstantKind::Multinacci, o.tol, k);
          multi[std::to_string(k)] = g;
          r.csv += csv_row({"multinacci", std::to_string(k), fr(g)});
        }
        r.json = Json{{"golden", golden},
                      {"beta1", beta1},
                      {"komornik_loreti", kl},
                      {"komornik_loreti_residual", constant_residual(ConstantKind::KomornikLoreti, kl)},
                      {"multinacci", multi}};
        return r;
      };
    }

    {
      auto& c = add(&app_, "expand", "Greedy or lazy beta-expansion digits (of 1 when --x is omitted)",
                    "expand");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,1)")->required();
      c.option("x", o.x, "Point in [0, lambda/(1-lambda)]");
      c.option("mode", o.mode, "greedy or lazy")
          ->check(CLI::IsMember({"greedy", "lazy"}))
          ->capture_default_str();
      c.option("n", o.n, "Number of digits")->capture_default_str();
      c.action = [&o] {
        const std::size_t n = to_count(o.n, "n");
        BitWord digits;
        std::string target;
        if (std::isnan(o.x)) {
          if (o.mode != "greedy") throw UsageError("--mode lazy requires --x");
          digits = greedy_one(o.lambda, n, true);
          target = "quasi_greedy_one";
        } else {
          digits = beta_digits(o.x, o.lambda, o.mode == "greedy" ? ExpansionMode::Greedy
                                                               : ExpansionMode::Lazy, n);
          target = o.mode;
        }
        Output r;
        r.json = Json{{"expansion", target}, {"digits", digits.str()}, {"value", pi(digits, o.lambda)}};
        r.csv = "expansion,digits,value\n" + csv_row({target, digits.str(), fr(pi(digits, o.lambda))});
        return r;
      };
    }

    {
      auto& c = add(&app_, "unique", "Certify a unique expansion (membership in U_lambda)", "unique");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,1)")->required();
      c.option("seq", o.seq, "Eventually periodic sequence PRE|PER")->required();
      c.option("depth", o.membership_depth, "Lexicographic comparison depth")->capture_default_str();
      c.action = [&o] {
        const auto seq = EPSequence::parse(o.seq);
        const auto v = membership_u(seq, o.lambda, to_count(o.membership_depth, "depth"));
        Output r;
        Json witness = nullptr;
        std::string shift, position, flipped;
        if (v.witness) {
          witness = Json{{"shift", v.witness->shift},
                         {"position", v.witness->position},
                         {"flipped", v.witness->flipped}};
          shift = std::to_string(v.witness->shift);
          position = std::to_string(v.witness->position);
          flipped = v.witness->flipped ? "true" : "false";
        }
        r.json = Json{{"seq", to_json(seq)}, {"status", membership_name(v.status)}, {"witness", witness}};
        r.csv = "status,shift,position,flipped\n" +
                csv_row({membership_name(v.status), shift, position, flipped});
        return r;
      };
    }

    {
      auto& c = add(&app_, "gap", "Orbit distance to the overlap gap, or the guaranteed gap for a lambda pair",
                    "gap");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,1)")->required();
      c.option("seq", o.seq, "Eventually periodic sequence PRE|PER");
      c.option("lambda2", o.lambda2, "Second ratio for the guaranteed gap (lambda < lambda2 < g)");
      c.action = [&o] {
        need(!o.seq.empty() || !std::isnan(o.lambda2), "gap needs --seq or --lambda2");
        Output r;
        std::vector<std::pair<std::string, std::string>> rows;
        if (!o.seq.empty()) {
          const auto seq = EPSequence::parse(o.seq);
          const double d = gap_distance(seq, o.lambda);
          r.json["seq"] = to_json(seq);
          r.json["gap_distance"] = d;
          rows.emplace_back("gap_distance", fr(d));
        }
        if (!std::isnan(o.lambda2)) {
          const double g = guaranteed_gap(o.lambda, o.lambda2);
          r.json["guaranteed_gap"] = g;
          rows.emplace_back("guaranteed_gap", fr(g));
        }
        r.csv = csv_kv(rows);
        return r;
      };
    }

    auto enclosure_output = [](const Enclosure& e) {
      Output r;
      r.json = Json{{"lo", e.lo}, {"hi", e.hi}};
      r.csv = "lo,hi\n" + csv_row({fr(e.lo), fr(e.hi)});
      return r;
    };

    {
      auto& c = add(&app_, "measure", "Certified enclosure of nu([a,b])", "measure");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("a", o.a, "Left endpoint")->required();
      c.option("b", o.b, "Right endpoint")->required();
      c.option("depth", o.depth, "Recursion depth")->capture_default_str();
      c.action = [&o, enclosure_output] {
        return enclosure_output(nu_enclosure(Params(o.lambda, o.p), Interval(o.a, o.b), o.depth));
      };
    }

    {
      auto& c = add(&app_, "ball", "Certified enclosure of nu(B(x,r))", "ball");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("x", o.x, "Center")->required();
      c.option("r", o.r, "Radius")->required();
      c.option("depth", o.depth, "Recursion depth")->capture_default_str();
      c.action = [&o, enclosure_output] {
        return enclosure_output(nu_ball(Params(o.lambda, o.p), o.x, o.r, o.depth));
      };
    }

    {
      auto& c = add(&app_, "localdim", "Local dimension regression at a unique-expansion point", "localdim");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("seq", o.seq, "Eventually periodic sequence PRE|PER")->required();
      c.option("nmin", o.nmin, "Smallest level n (radius delta*lambda^n)")->capture_default_str();
      c.option("nmax", o.nmax, "Largest level n")->capture_default_str();
      c.option("source", o.source, "symbolic bracket or numeric enclosure")
          ->check(CLI::IsMember({"symbolic", "enclosure"}))
          ->capture_default_str();
      c.option("depth", o.depth, "Enclosure depth (enclosure source)")->capture_default_str();
      c.action = [&o] {
        const auto seq = EPSequence::parse(o.seq);
        const auto est = local_dim_estimate(
            Params(o.lambda, o.p), seq, to_count(o.nmin, "nmin"), to_count(o.nmax, "nmax"),
            o.source == "symbolic" ? BracketSource::Symbolic : BracketSource::Enclosure, o.depth);
        Output r;
        Json pts = Json::array();
        for (const auto& s : est.points)
          pts.push_back(Json{{"n", s.n}, {"log_r", s.log_r}, {"log_lo", s.log_lo}, {"log_hi", s.log_hi}});
        r.json = Json{{"slope", est.slope},       {"intercept", est.intercept},
                      {"residual", est.residual}, {"predicted", est.predicted},
                      {"dropped", est.dropped},   {"points", std::move(pts)}};
        r.csv = csv_kv({{"slope", fr(est.slope)},
                        {"intercept", fr(est.intercept)},
                        {"residual", fr(est.residual)},
                        {"predicted", fr(est.predicted)},
                        {"dropped", std::to_string(est.dropped)}});
        return r;
      };
    }

    {
      auto& c = add(&app_, "mesh", "Enclosures of nu on the mesh [(2j-2)r, 2jr]", "mesh");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("r", o.r, "Mesh half-width")->required();
      c.option("depth", o.depth, "Recursion depth")->capture_default_str();
      c.option("threads", o.threads, "Worker threads (0 = machine parallelism)")->capture_default_str();
      c.action = [&o] {
        const auto profile = mesh_profile(Params(o.lambda, o.p), o.r, o.depth, o.threads);
        Output r;
        Json cells = Json::array();
        for (const auto& cell : profile.cells)
          cells.push_back(Json{{"j", cell.j}, {"center", cell.center}, {"lo", cell.mass.lo}, {"hi", cell.mass.hi}});
        const auto [lo, hi] = profile.totals();
        r.json = Json{{"cells", std::move(cells)}, {"total", Json{{"lo", lo}, {"hi", hi}}}};
        r.csv = to_csv(profile);
        return r;
      };
    }

    CLI::App* spectrum = app_.add_subcommand("spectrum", "Multifractal spectra");
    spectrum->require_subcommand(1)->fallthrough();

    {
      auto& c = add(spectrum, "exact", "Legendre spectrum of a strong-separation self-similar measure",
                    "spectrum exact");
      c.option("p", o.p, "Weights (p, 1-p) when --weights is omitted");
      c.option("weights", o.weights, "Comma-separated weights")->delimiter(',');
      c.option("rho", o.rho, "Common contraction ratio")->capture_default_str();
      c.action = [&o] {
        need(!std::isnan(o.p) || !o.weights.empty(), "spectrum exact needs --p or --weights");
        if (o.weights.empty()) {
          if (!(o.p > 0.0 && o.p < 1.0)) throw DomainError("p must lie in (0,1)");
          o.weights = {o.p, 1.0 - o.p};
        }
        const Eigen::Map<const Eigen::ArrayXd> w(o.weights.data(), static_cast<Eigen::Index>(o.weights.size()));
        const auto curve = spectrum_curve(w, o.rho, default_q_grid());
        Output r;
        r.json = Json{{"curve", to_json(curve)}};
        r.csv = to_csv(curve);
        return r;
      };
    }

    {
      auto& c = add(spectrum, "bounds", "Lower and upper bound curves with the exact lambda=1/2 curve",
                    "spectrum bounds");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,g)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("k", o.k, "Multinacci order for the lower bound (0 = largest admissible)")->capture_default_str();
      c.option("alpha-min", o.alpha_min, "Grid start (default: support minus 0.05)");
      c.option("alpha-max", o.alpha_max, "Grid end (default: support plus 0.05)");
      c.option("alpha-steps", o.alpha_steps, "Grid points")->capture_default_str();
      c.action = [&o] {
        if (!(o.p > 0.0 && o.p < 1.0)) throw DomainError("p must lie in (0,1)");
        const auto dflt = default_alpha_grid(o.p, 2);
        if (std::isnan(o.alpha_min)) o.alpha_min = dflt.front();
        if (std::isnan(o.alpha_max)) o.alpha_max = dflt.back();
        const auto grid = alpha_grid_from(o.alpha_min, o.alpha_max, o.alpha_steps);
        const auto b = spectrum_bounds(o.lambda, o.p, grid, o.k);
        Output r;
        r.json = Json{{"lower", to_json(b.lower)},
                      {"upper", to_json(b.upper)},
                      {"exact", to_json(b.exact)},
                      {"grid", Json{{"alpha", b.alpha},
                                    {"lower", b.lower_on_grid},
                                    {"upper", b.upper_on_grid},
                                    {"exact", b.exact_on_grid}}},
                      {"common_alpha", Json::array({b.common_min, b.common_max})},
                      {"gap", b.gap}};
        r.csv = "alpha,lower,upper,exact\n";
        for (std::size_t i = 0; i < b.alpha.size(); ++i)
          r.csv += csv_row({fr(b.alpha[i]), fr(b.lower_on_grid[i]), fr(b.upper_on_grid[i]),
                            fr(b.exact_on_grid[i])});
        return r;
      };
    }

    {
      auto& c = add(spectrum, "coarse", "Coarse (mesh-count) spectrum estimate", "spectrum coarse");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("r", o.r_list, "Comma-separated decreasing mesh half-widths")->delimiter(',')->required();
      c.option("eps", o.eps, "Threshold slack epsilon")->capture_default_str();
      c.option("depth", o.depth, "Recursion depth")->capture_default_str();
      c.option("alpha-min", o.alpha_min, "Grid start (default: symbolic range minus 0.05)");
      c.option("alpha-max", o.alpha_max, "Grid end (default: symbolic range plus 0.05)");
      c.option("alpha-steps", o.alpha_steps, "Grid points")->capture_default_str();
      c.option("count-mode", o.count_mode, "certified or midpoint counts")
          ->check(CLI::IsMember({"certified", "midpoint"}))
          ->capture_default_str();
      c.option("threads", o.threads, "Worker threads (0 = machine parallelism)")->capture_default_str();
      c.action = [&o] {
        const Params params(o.lambda, o.p);
        const double a0 = std::log(o.p) / std::log(o.lambda);
        const double a1 = std::log(1.0 - o.p) / std::log(o.lambda);
        if (std::isnan(o.alpha_min)) o.alpha_min = std::min(a0, a1) - 0.05;
        if (std::isnan(o.alpha_max)) o.alpha_max = std::max(a0, a1) + 0.05;
        const auto grid = alpha_grid_from(o.alpha_min, o.alpha_max, o.alpha_steps);
        const auto cs = coarse_spectrum(params, o.r_list, grid, o.eps, o.depth, o.threads,
                                        o.count_mode == "certified" ? CountMode::Certified
                                                                    : CountMode::Midpoint);
        Output r;
        Json table = Json::array();
        for (const auto& row : cs.table)
          table.push_back(Json{{"r", row.r}, {"alpha", row.alpha}, {"joint", row.joint}, {"value", row.value}});
        r.json = Json{{"curve", to_json(cs.curve)}, {"table", std::move(table)}};
        r.csv = to_csv(cs.curve);
        return r;
      };
    }

    {
      auto& c = add(&app_, "holder", "Uniform Hoelder exponent bound", "holder");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2,1)")->required();
      c.action = [&o] {
        const auto h = holder_bound(o.lambda);
        Output r;
        r.json = Json{{"delta", h.delta}, {"k_used", h.k_used}, {"boost", h.boost}};
        r.csv = "delta,k_used,boost\n" + csv_row({fr(h.delta), std::to_string(h.k_used), std::to_string(h.boost)});
        return r;
      };
    }

    {
      auto& c = add(&app_, "typical", "Typical local dimension prediction", "typical");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("q", o.q, "Sampling bias")->required();
      c.action = [&o] {
        const auto t = typical_dim(o.lambda, o.p, o.q);
        Output r;
        r.json = Json{{"H", t.entropy},
                      {"predicted", t.predicted},
                      {"J_interval", Json::array({t.j_lo, t.j_hi})},
                      {"regime", to_string(t.regime)},
                      {"alpha", t.alpha},
                      {"spectrum_lower", t.spectrum_lower}};
        r.csv = csv_kv({{"H", fr(t.entropy)},
                        {"predicted", fr(t.predicted)},
                        {"J_lo", fr(t.j_lo)},
                        {"J_hi", fr(t.j_hi)},
                        {"regime", to_string(t.regime)},
                        {"alpha", fr(t.alpha)},
                        {"spectrum_lower", fr(t.spectrum_lower)}});
        return r;
      };
    }

    {
      auto& c = add(&app_, "typical-mc", "Monte-Carlo local dimension diagnostic (not a certified check)",
                    "typical-mc");
      c.option("lambda", o.lambda, "Contraction ratio in (0,1)")->required();
      c.option("p", o.p, "Probability of digit 0")->required();
      c.option("q", o.q, "Sampling bias")->required();
      c.option("samples", o.samples, "Number of sample points")->capture_default_str();
      c.option("digits", o.digits, "Digits per sample point")->capture_default_str();
      c.option("nmin", o.mc_nmin, "Largest radius 2^-nmin")->capture_default_str();
      c.option("nmax", o.mc_nmax, "Smallest radius 2^-nmax")->capture_default_str();
      c.option("depth", o.depth, "Recursion depth")->capture_default_str();
      c.option("seed", o.seed, "RNG seed")->capture_default_str();
      c.action = [&o] {
        if (!(o.mc_nmin < o.mc_nmax)) throw DomainError("require nmin < nmax");
        std::vector<double> radii;
        for (int n = o.mc_nmin; n <= o.mc_nmax; ++n) radii.push_back(std::ldexp(1.0, -n));
        std::mt19937_64 rng(o.seed);
        const auto mc = typical_dim_mc(o.lambda, o.p, o.q, to_count(o.samples, "samples"),
                                       to_count(o.digits, "digits"), radii, o.depth, rng);
        const auto t = typical_dim(o.lambda, o.p, o.q);
        Output r;
        r.json = Json{{"mean_slope", mc.mean_slope},
                      {"sd", mc.sd},
                      {"predicted", t.predicted},
                      {"usable_samples", mc.slopes.size()},
                      {"diagnostic_only", mc.diagnostic_only},
                      {"slopes", mc.slopes}};
        r.csv = csv_kv({{"mean_slope", fr(mc.mean_slope)},
                        {"sd", fr(mc.sd)},
                        {"predicted", fr(t.predicted)},
                        {"usable_samples", std::to_string(mc.slopes.size())},
                        {"diagnostic_only", "true"}});
        return r;
      };
    }

    CLI::App* words = app_.add_subcommand("words", "Word constructions for unique expansions");
    words->require_subcommand(1)->fallthrough();

    {
      auto& c = add(words, "freq", "Frequency words u0, u1", "words freq");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2, 1/beta_1)")->required();
      c.action = [&o] {
        const auto w = freq_words(o.lambda);
        const double rl = r_lambda(o.lambda);
        Output r;
        r.json = Json{{"k", w.k},
                      {"u0", w.u0.str()},
                      {"u1", w.u1.str()},
                      {"freq_lo", to_json(w.freq_lo)},
                      {"freq_hi", to_json(w.freq_hi)},
                      {"r_lambda", rl}};
        r.csv = "k,u0,u1,freq_lo,freq_hi,r_lambda\n" +
                csv_row({std::to_string(w.k), w.u0.str(), w.u1.str(),
                         std::to_string(w.freq_lo.num) + "/" + std::to_string(w.freq_lo.den),
                         std::to_string(w.freq_hi.num) + "/" + std::to_string(w.freq_hi.den), fr(rl)});
        return r;
      };
    }

    {
      auto& c = add(words, "multinacci", "Multinacci words v0, v1", "words multinacci");
      c.option("lambda", o.lambda, "Contraction ratio in (1/2, g)")->required();
      c.action = [&o] {
        const auto w = multinacci_words(o.lambda);
        Output r;
        r.json = Json{{"k", w.k},
                      {"v0", w.v0.str()},
                      {"v1", w.v1.str()},
                      {"freq_lo", to_json(w.freq_lo)},
                      {"freq_hi", to_json(w.freq_hi)},
                      {"dim_bound", w.dim_bound}};
        r.csv = "k,v0,v1,freq_lo,freq_hi,dim_bound\n" +
                csv_row({std::to_string(w.k), w.v0.str(), w.v1.str(),
                         std::to_string(w.freq_lo.num) + "/" + std::to_string(w.freq_lo.den),
                         std::to_string(w.freq_hi.num) + "/" + std::to_string(w.freq_hi.den),
                         fr(w.dim_bound)});
        return r;
      };
    }
  }

  CLI::App app_;
  std::string format_ = "csv";
  std::string out_path_;
  Opts o_;
  std::vector<std::unique_ptr<Command>> commands_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Dispatcher d;
  return d.run(args, out, err);
}

}  // namespace bcmf::cli
