#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "euler_entropy/euler_entropy.hpp"

namespace euler_entropy::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 20240229;
inline constexpr const char* kBudgetEnv = "EULER_ENTROPY_BUDGET";

enum ExitCode : int { kOk = 0, kValidation = 1, kBudget = 2 };

struct RunConfig {
  std::string command;
  std::string graph;
  std::string file;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 100000;
  int lmax = 8;
  std::optional<int> k;
  std::optional<int> L;
  std::optional<double> C;
  double delta = 0.5;
  std::optional<double> M;
  std::optional<double> M0;
  int d = 0;
  std::string h;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::optional<std::uint64_t> budget;
  int edge_cap = OrientationOptions{}.edge_cap;
  int bootstrap = MCOptions{}.bootstrap_resamples;
  bool exact = true;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  Json body = Json::object();
  std::optional<Table> table;
  std::vector<std::string> notes;  // extra '#' lines in CSV output
};

namespace detail {

inline Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline Json big(const BigInt& x) { return x.get_str(); }

inline Json rat(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

inline Json ext_num(const ExtRational& x) { return x.infinite ? Json("1") : big(x.value.get_num()); }
inline Json ext_den(const ExtRational& x) { return x.infinite ? Json("0") : big(x.value.get_den()); }

inline Json opt_big(const std::optional<BigInt>& x) { return x ? big(*x) : Json(nullptr); }

inline std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::optional<std::uint64_t> parse_budget_env() {
  const char* raw = std::getenv(kBudgetEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw InputError(std::string(kBudgetEnv) + " must be a positive integer");
  }
  if (used != text.size() || value == 0 || text.front() == '-') {
    throw InputError(std::string(kBudgetEnv) + " must be a positive integer");
  }
  return value;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::int64_t> parse_h(const std::string& text) {
  if (text.empty()) throw InputError("--h is required");
  return euler_entropy::detail::parse_int_list(text, ',', "--h");
}

}  // namespace detail

class Runner {
 public:
  explicit Runner(RunConfig cfg, std::set<std::string> keys) : cfg_(std::move(cfg)), keys_(std::move(keys)) {
    budget_ = cfg_.budget ? cfg_.budget : detail::parse_budget_env();
  }

  Json config() const {
    Json c = Json::object();
    c["command"] = cfg_.command;
    auto want = [&](const char* key) { return keys_.count(key) != 0; };
    if (want("graph")) {
      c["graph"] = cfg_.graph.empty() ? Json(nullptr) : Json(cfg_.graph);
      c["file"] = cfg_.file.empty() ? Json(nullptr) : Json(cfg_.file);
    }
    if (want("seed")) c["seed"] = cfg_.seed;
    if (want("samples")) c["samples"] = cfg_.samples;
    if (want("bootstrap")) c["bootstrap"] = cfg_.bootstrap;
    if (want("lmax")) c["lmax"] = cfg_.lmax;
    if (want("k")) c["k"] = cfg_.k ? Json(*cfg_.k) : Json(nullptr);
    if (want("L")) c["L"] = cfg_.L ? Json(*cfg_.L) : Json(nullptr);
    if (want("C")) c["C"] = cfg_.C ? detail::num(*cfg_.C) : Json(nullptr);
    if (want("delta")) c["delta"] = detail::num(cfg_.delta);
    if (want("M")) c["M"] = cfg_.M ? detail::num(*cfg_.M) : Json(nullptr);
    if (want("M0")) c["M0"] = cfg_.M0 ? detail::num(*cfg_.M0) : Json(nullptr);
    if (want("d")) c["d"] = cfg_.d;
    if (want("h")) c["h"] = cfg_.h;
    if (want("exact")) c["exact"] = cfg_.exact;
    if (want("edge_cap")) c["edge_cap"] = cfg_.edge_cap;
    if (want("budget")) c["budget"] = budget_ ? Json(*budget_) : Json("default");
    if (want("threads")) c["threads"] = cfg_.threads;
    c["format"] = cfg_.format;
    c["out"] = cfg_.out.empty() ? Json(nullptr) : Json(cfg_.out);
    return c;
  }

  Report execute() {
    static const std::map<std::string, Report (Runner::*)()> handlers = {
        {"gen", &Runner::gen},
        {"eo", &Runner::eo},
        {"pauling", &Runner::pauling},
        {"mc", &Runner::mc},
        {"trails", &Runner::trails},
        {"spectrum", &Runner::spectrum},
        {"check-theorem", &Runner::check_theorem},
        {"check-spectral", &Runner::check_spectral},
        {"check-girth", &Runner::check_girth},
        {"check-product", &Runner::check_product},
        {"switchlab", &Runner::switchlab},
        {"identity", &Runner::identity},
        {"xlaw", &Runner::xlaw},
    };
    const auto it = handlers.find(cfg_.command);
    if (it == handlers.end()) throw InputError("unknown command: " + cfg_.command);
    return (this->*(it->second))();
  }

  std::string render(const Report& report) const {
    std::ostringstream os;
    if (cfg_.format == "json") {
      Json doc = Json::object();
      doc["tool"] = "euler-entropy";
      doc["version"] = kVersion;
      doc["config"] = config();
      for (const auto& [key, value] : report.body.items()) doc[key] = value;
      os << doc.dump(2) << '\n';
      return os.str();
    }
    os << "# " << "euler-entropy " << kVersion << '\n';
    os << "# " << "config " << config().dump() << '\n';
    for (const auto& note : report.notes) os << "# " << note << '\n';
    if (cfg_.format == "edgelist") {
      os << report.body.at("edge_list").get<std::string>();
      return os.str();
    }
    Table table;
    if (report.table) {
      table = *report.table;
    } else {
      std::vector<Json> row;
      for (const auto& [key, value] : report.body.items()) {
        if (value.is_structured()) continue;
        table.header.push_back(key);
        row.push_back(value);
      }
      table.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::cell(row[i]);
      os << '\n';
    }
    return os.str();
  }

 private:
  RunConfig cfg_;
  std::set<std::string> keys_;
  std::optional<std::uint64_t> budget_;

  MultiGraph load_graph() const {
    const bool has_graph = !cfg_.graph.empty();
    const bool has_file = !cfg_.file.empty();
    if (has_graph == has_file) throw InputError("exactly one of --graph or --file is required");
    if (has_graph) return generate(cfg_.graph);
    return parse_edge_list(detail::read_file(cfg_.file));
  }

  OrientationOptions orientation_options() const {
    OrientationOptions o;
    o.edge_cap = cfg_.edge_cap;
    o.threads = cfg_.threads;
    return o;
  }

  TrailSearchOptions trail_options() const {
    TrailSearchOptions o;
    if (budget_) o.budget = *budget_;
    o.threads = cfg_.threads;
    return o;
  }

  std::uint64_t partition_cap(std::uint64_t fallback) const { return budget_ ? *budget_ : fallback; }

  static Json graph_summary(const MultiGraph& g) {
    Json j = Json::object();
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    const auto d = g.regular_degree();
    j["d"] = d ? Json(*d) : Json(nullptr);
    return j;
  }

  Report gen() {
    const auto g = load_graph();
    Report r;
    r.body = graph_summary(g);
    if (cfg_.format == "edgelist") {
      r.body["edge_list"] = format_edge_list(g);
      return r;
    }
    Table t{{"u", "v"}, {}};
    Json edges = Json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edge(e);
      edges.push_back(Json::array({u, v}));
      t.rows.push_back({u, v});
    }
    r.body["edges"] = std::move(edges);
    r.table = std::move(t);
    return r;
  }

  Report eo() {
    const auto g = load_graph();
    const auto count = count_eulerian_orientations(g, orientation_options());
    Report r;
    r.body["n"] = count.n;
    r.body["m"] = count.m;
    r.body["eo_decimal_string"] = detail::big(count.eo);
    r.body["rho"] = detail::num(count.rho);
    const auto d = g.regular_degree();
    if (d && *d >= 2) {
      const auto lw = lieb_wu_check(g, orientation_options());
      r.body["d"] = lw.d;
      r.body["rho_hat"] = detail::num(lw.rho_hat);
      r.body["gap"] = detail::num(lw.gap);
      r.body["lieb_wu_pass"] = lw.pass;
    } else {
      r.body["d"] = nullptr;
      r.body["rho_hat"] = nullptr;
      r.body["gap"] = nullptr;
      r.body["lieb_wu_pass"] = nullptr;
    }
    return r;
  }

  Report pauling() {
    Report r;
    r.body["d"] = cfg_.d;
    r.body["rho_hat"] = detail::num(pauling_estimate(cfg_.d));
    return r;
  }

  Report mc() {
    const auto g = load_graph();
    MCOptions opts;
    opts.threads = cfg_.threads;
    opts.bootstrap_resamples = cfg_.bootstrap;
    const auto est = mc_estimate(g, cfg_.samples, cfg_.seed, opts);
    Report r;
    r.body["n"] = est.n;
    r.body["d"] = est.d;
    r.body["samples"] = est.samples;
    r.body["seed"] = est.seed;
    r.body["rho_hat"] = detail::num(est.rho_hat);
    r.body["rho_estimate"] = detail::num(est.rho_estimate);
    r.body["ci_low"] = detail::num(est.ci_low);
    r.body["ci_high"] = detail::num(est.ci_high);
    r.body["log_mean_2T"] = detail::num(est.log_mean_2T);
    r.body["log_mean_2T_boot_sd"] = detail::num(est.log_mean_2T_boot_sd);
    r.body["trail_histogram"] = est.trail_histogram;
    return r;
  }

  static Table trail_table(const Json& rows) {
    Table t{{"ell", "c_ell", "c_k_ell", "bound", "pass"}, {}};
    for (const auto& row : rows) t.rows.push_back({row["ell"], row["c_ell"], row["c_k_ell"], row["bound"], row["pass"]});
    return t;
  }

  Report trails() {
    const auto g = load_graph();
    const auto table = count_closed_trails(g, cfg_.lmax, trail_options());
    const auto d = g.regular_degree();
    std::optional<int> k = cfg_.k;
    if (!k && d && *d >= 2 && *d % 2 == 0) {
      const auto kl = compute_k_L(*d, cfg_.lmax);
      if (!kl.degenerate()) k = kl.k;
    }
    cfg_.k = k;
    std::optional<TrailCountTable> shorts;
    if (k) shorts = count_short_closed_trails(g, cfg_.lmax, *k, trail_options());
    const bool with_bound = cfg_.C && d;
    Report r;
    r.body["n"] = g.vertex_count();
    r.body["d"] = d ? Json(*d) : Json(nullptr);
    r.body["lmax"] = cfg_.lmax;
    r.body["k"] = k ? Json(*k) : Json(nullptr);
    Json rows = Json::array();
    for (int ell = 3; ell <= cfg_.lmax; ++ell) {
      Json row = Json::object();
      row["ell"] = ell;
      row["c_ell"] = detail::big(table.counts[ell]);
      row["c_k_ell"] = shorts ? detail::big(shorts->short_counts[ell]) : Json(nullptr);
      if (with_bound) {
        const double bound = trail_hypothesis_bound(*cfg_.C, ell, *d, g.vertex_count());
        row["bound"] = detail::num(bound);
        row["pass"] = table.counts[ell].get_d() <= bound;
      } else {
        row["bound"] = nullptr;
        row["pass"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    r.table = trail_table(rows);
    r.body["rows"] = std::move(rows);
    return r;
  }

  Report check_theorem() {
    const auto g = load_graph();
    if (!cfg_.C) cfg_.C = 1.0;
    const double C = *cfg_.C;
    const auto rep = check_theorem_hypothesis(g, C, cfg_.lmax, trail_options());
    Report r;
    r.body["n"] = rep.n;
    r.body["d"] = rep.d;
    r.body["C"] = detail::num(rep.C);
    r.body["lmax"] = rep.kl.lmax;
    r.body["k"] = rep.kl.k;
    r.body["L"] = rep.kl.L;
    r.body["k_clamped"] = rep.kl.clamped;
    r.body["short_trail_terms"] = !rep.kl.degenerate();
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      Json j = Json::object();
      j["ell"] = row.ell;
      j["c_ell"] = detail::opt_big(row.c_ell);
      j["c_k_ell"] = detail::opt_big(row.c_k_ell);
      j["bound"] = detail::num(row.bound);
      j["pass"] = row.pass;
      rows.push_back(std::move(j));
    }
    r.table = trail_table(rows);
    r.body["rows"] = std::move(rows);
    r.body["all_pass"] = rep.all_pass;
    r.body["minimal_C"] = detail::num(minimal_hypothesis_constant(rep));
    r.notes.push_back("all_pass=" + std::string(rep.all_pass ? "true" : "false"));
    return r;
  }

  Report spectrum() {
    const auto g = load_graph();
    const auto eig = eigenvalues(g);
    Report r;
    r.body["n"] = g.vertex_count();
    Table t{{"value", "multiplicity"}, {}};
    Json values = Json::array();
    for (const auto& v : eig.values) {
      Json j = Json::object();
      j["value"] = detail::num(v.value);
      j["multiplicity"] = detail::big(v.weight);
      t.rows.push_back({j["value"], j["multiplicity"]});
      values.push_back(std::move(j));
    }
    r.body["values"] = std::move(values);
    r.table = std::move(t);
    return r;
  }

  Report check_spectral() {
    const auto g = load_graph();
    auto rep = check_corollary_spectral(g, cfg_.delta);
    if (keys_.count("lmax")) attach_hypothesis_margin(rep, g, cfg_.lmax, trail_options());
    Report r;
    r.body["delta"] = detail::num(rep.delta);
    r.body["threshold"] = detail::num(rep.threshold);
    r.body["n"] = rep.n;
    r.body["d"] = rep.d;
    r.body["outliers"] = rep.outliers.get_si();
    r.body["fraction"] = detail::num(rep.fraction);
    r.body["f_implied"] = detail::num(rep.f_implied);
    r.body["C_constant"] = detail::num(rep.C_constant);
    r.body["ell_max_implied"] = detail::num(rep.ell_max_implied);
    Json margin = Json::array();
    for (const auto& m : rep.hypothesis_margin) {
      Json j = Json::object();
      j["ell"] = m.ell;
      j["c_ell"] = detail::big(m.c_ell);
      j["bound"] = detail::num(m.bound);
      j["pass"] = m.pass;
      margin.push_back(std::move(j));
    }
    r.body["hypothesis_margin"] = std::move(margin);
    return r;
  }

  Report check_girth() {
    const auto rep = check_corollary_girth(load_graph());
    Report r;
    r.body["n"] = rep.n;
    r.body["d"] = rep.d ? Json(*rep.d) : Json(nullptr);
    r.body["girth"] = rep.girth ? Json(*rep.girth) : Json("inf");
    return r;
  }

  Report check_product() {
    const auto h = detail::parse_h(cfg_.h);
    const auto rep = [&] {
      if (!cfg_.exact) return check_corollary_product(std::span<const std::int64_t>(h), cfg_.delta);
      const auto factors = complete_factors(h);
      return check_corollary_product(std::span<const MultiGraph>(factors), cfg_.delta);
    }();
    Report r;
    r.body["t"] = rep.h.size();
    r.body["d_t"] = rep.d_t;
    r.body["delta"] = detail::num(rep.delta);
    r.body["threshold"] = detail::num(rep.threshold);
    r.body["hoeffding"] = detail::num(rep.hoeffding);
    r.body["exact_tail"] = rep.exact_tail ? detail::num(*rep.exact_tail) : Json(nullptr);
    r.body["holds"] = rep.holds;
    r.body["h"] = rep.h;
    return r;
  }

  std::pair<int, int> switch_params(const MultiGraph& g) const {
    const int k = cfg_.k.value_or(g.vertex_count());
    const int L = cfg_.L.value_or(std::min(k * (k - 1) / 2, g.edge_count()));
    return {k, L};
  }

  Report switchlab() {
    const auto g = load_graph();
    const auto [k, L] = switch_params(g);
    cfg_.k = k;
    cfg_.L = L;
    if (!cfg_.C) cfg_.C = 1.0;
    const double C = *cfg_.C;
    SwitchingOptions sopts;
    sopts.partition_cap = partition_cap(sopts.partition_cap);
    if (budget_) sopts.switching_budget = *budget_;
    sopts.threads = cfg_.threads;
    const auto inst = build_switching_graph(g, k, L, C, sopts);

    Report r;
    Json params = Json::object();
    params["n"] = inst.n;
    params["d"] = inst.d;
    params["k"] = inst.k;
    params["L"] = inst.L;
    params["C"] = detail::num(inst.C);
    params["M0"] = detail::num(inst.M0);
    params["partitions"] = detail::big(inst.total);
    params["switchings"] = inst.switchings;
    r.body["params"] = std::move(params);

    Json vertices = Json::array();
    for (std::size_t v = 0; v < inst.classes.size(); ++v) {
      const auto& c = inst.classes[v];
      Json j = Json::object();
      j["id"] = v;
      j["m"] = c.m;
      j["norm"] = c.norm;
      j["N"] = detail::big(c.N);
      vertices.push_back(std::move(j));
    }
    r.body["vertices"] = std::move(vertices);

    Json edges = Json::array();
    for (const auto& e : inst.edges) {
      Json j = Json::object();
      j["from"] = e.from;
      j["to"] = e.to;
      j["m"] = inst.classes[e.from].m;
      j["m_prime"] = inst.classes[e.to].m;
      j["ell"] = e.colour;
      j["s_prime"] = e.s_prime;
      j["alpha_num"] = detail::ext_num(e.alpha);
      j["alpha_den"] = detail::ext_den(e.alpha);
      j["alpha_hat"] = detail::num(e.alpha_hat.to_double());
      edges.push_back(std::move(j));
    }
    r.body["edges"] = std::move(edges);

    const auto tail = tail_report(g, k, L, C, -1, sopts.partition_cap);
    Json tj = Json::object();
    tj["M0"] = detail::num(tail.M0);
    tj["lambda"] = detail::num(tail.lambda);
    Json hist = Json::array();
    for (const auto& x : tail.s_histogram) hist.push_back(detail::big(x));
    tj["s_histogram"] = std::move(hist);
    Table t{{"M", "exact_tail", "bound", "vacuous"}, {}};
    Json rows = Json::array();
    for (const auto& row : tail.rows) {
      Json j = Json::object();
      j["M"] = row.M;
      j["exact_tail"] = detail::rat(row.exact_tail);
      j["bound"] = detail::num(row.bound);
      j["vacuous"] = row.vacuous;
      j["holds"] = row.holds;
      t.rows.push_back({j["M"], j["exact_tail"], j["bound"], j["vacuous"]});
      rows.push_back(std::move(j));
    }
    tj["rows"] = std::move(rows);
    tj["mgf_exact"] = detail::num(tail.mgf_exact);
    tj["mgf_bound"] = detail::num(tail.mgf_bound);
    tj["mgf_holds"] = tail.mgf_holds;
    tj["mgf_vacuous"] = tail.mgf_vacuous;
    tj["all_hold"] = tail.all_hold;
    r.body["tail"] = std::move(tj);
    r.table = std::move(t);

    if (cfg_.M) {
      PathBoundOptions popts;
      if (budget_) popts.budget = *budget_;
      if (!cfg_.M0) cfg_.M0 = inst.M0;
      const double M0 = *cfg_.M0;
      const auto b = check_switching_bound(inst, M0, *cfg_.M, popts);
      Json bj = Json::object();
      bj["M0"] = detail::num(b.M0);
      bj["M"] = detail::num(b.M);
      bj["sum_Y"] = detail::big(b.sum_Y);
      bj["sum_Z"] = detail::big(b.sum_Z);
      bj["admissible"] = !b.violation.has_value();
      bj["violation"] = b.violation ? Json(*b.violation) : Json(nullptr);
      if (!b.violation) {
        bj["paths"] = b.paths.paths;
        bj["factor"] = detail::num(b.paths.factor.to_double());
        bj["bound"] = detail::num(b.bound.to_double());
        bj["holds"] = b.holds;
        bj["vacuous"] = b.vacuous;
        bj["closed_form"] = detail::num(b.closed_form);
        bj["closed_form_applies"] = b.closed_form_applies;
        bj["closed_form_holds"] = b.closed_form_holds;
      }
      r.body["bound_check"] = std::move(bj);
      r.notes.push_back("bound_check " + r.body["bound_check"].dump());
    }
    return r;
  }

  Report identity() {
    const auto g = load_graph();
    ExhaustiveOptions opts;
    opts.partition_cap = partition_cap(opts.partition_cap);
    opts.orientation = orientation_options();
    const auto id = exact_E2T(g, opts);
    Report r;
    r.body["n"] = id.n;
    r.body["d"] = id.d;
    r.body["partitions"] = detail::big(id.partitions);
    r.body["sum_2T"] = detail::big(id.sum_2T);
    r.body["mean_2T"] = detail::rat(id.mean_2T);
    r.body["eo"] = detail::big(id.eo);
    r.body["lhs"] = detail::big(id.lhs);
    r.body["rhs"] = detail::big(id.rhs);
    r.body["equal"] = id.equal;
    return r;
  }

  Report xlaw() {
    const auto theory = xi_pmf_theoretical(cfg_.d);
    std::optional<std::vector<Rational>> brute;
    if (cfg_.d <= 10) brute = xi_pmf_bruteforce(cfg_.d);
    Report r;
    r.body["d"] = cfg_.d;
    r.body["expected_X_per_vertex"] = detail::rat(expected_X(cfg_.d, 1));
    Table t{{"value", "prob_num", "prob_den"}, {}};
    Json values = Json::array();
    for (std::size_t x = 0; x < theory.size(); ++x) {
      Json j = Json::object();
      j["value"] = x;
      j["prob_num"] = detail::big(theory[x].get_num());
      j["prob_den"] = detail::big(theory[x].get_den());
      j["bruteforce_num"] = brute ? detail::big((*brute)[x].get_num()) : Json(nullptr);
      j["bruteforce_den"] = brute ? detail::big((*brute)[x].get_den()) : Json(nullptr);
      t.rows.push_back({j["value"], j["prob_num"], j["prob_den"]});
      values.push_back(std::move(j));
    }
    r.body["pmf"] = std::move(values);
    const Json equal = brute ? Json(*brute == theory) : Json(nullptr);
    r.body["equal"] = equal;
    r.notes.push_back("bruteforce_equal=" + detail::cell(equal.is_null() ? Json("skipped") : equal));
    r.table = std::move(t);
    return r;
  }
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual entropy of Eulerian graphs: exact counts, estimates and checks", "euler-entropy"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<std::string, std::set<std::string>> keys;

  struct Builder {
    CLI::App* sub;
    RunConfig& cfg;
    std::set<std::string>& keys;

    Builder& graph() {
      auto* g = sub->add_option("--graph", cfg.graph, "generator string, e.g. complete:5");
      auto* f = sub->add_option("--file", cfg.file, "edge-list file");
      g->excludes(f);
      keys.insert("graph");
      return *this;
    }
    Builder& add(const char* key, CLI::Option* opt) {
      keys.insert(key);
      (void)opt;
      return *this;
    }
    Builder& seed() { return add("seed", sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str()); }
    Builder& samples() {
      add("bootstrap", sub->add_option("--bootstrap", cfg.bootstrap, "bootstrap resamples")->capture_default_str());
      return add("samples", sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str());
    }
    Builder& lmax() { return add("lmax", sub->add_option("--lmax", cfg.lmax, "largest trail length")->capture_default_str()); }
    Builder& k() { return add("k", sub->add_option("--k", cfg.k, "short-trail vertex cap")); }
    Builder& L() { return add("L", sub->add_option("--L", cfg.L, "largest short-trail length")); }
    Builder& C(const char* text) { return add("C", sub->add_option("--C", cfg.C, text)); }
    Builder& delta() { return add("delta", sub->add_option("--delta", cfg.delta, "spectral exponent")->capture_default_str()); }
    Builder& M() {
      add("M0", sub->add_option("--M0", cfg.M0, "lower class threshold (default 2CnL^2/d)"));
      return add("M", sub->add_option("--M", cfg.M, "upper class threshold"));
    }
    Builder& d() { return add("d", sub->add_option("--d", cfg.d, "even degree")->required()); }
    Builder& h() {
      sub->set_help_flag("--help", "print this help message and exit");
      return add("h", sub->add_option("--h", cfg.h, "factor degrees, comma separated")->required());
    }
    Builder& exact() { return add("exact", sub->add_flag("!--no-exact", cfg.exact, "skip the exact product tail")); }
    Builder& edge_cap() {
      return add("edge_cap", sub->add_option("--edge-cap", cfg.edge_cap, "orientation edge cap")->capture_default_str());
    }
    Builder& budget() {
      return add("budget", sub->add_option("--budget", cfg.budget, "enumeration cap (overrides EULER_ENTROPY_BUDGET)"));
    }
    Builder& threads() {
      return add("threads", sub->add_option("--threads", cfg.threads, "worker cap")->capture_default_str()->check(CLI::Range(1u, 256u)));
    }
    Builder& output(const std::string& default_format, std::vector<std::string> formats) {
      sub->add_option("--out", cfg.out, "write the report to this path");
      sub->add_option("--format", cfg.format, "report format")
          ->default_str(default_format)
          ->check(CLI::IsMember(std::move(formats)));
      return *this;
    }
  };

  std::map<std::string, std::string> default_format;
  auto command = [&](const std::string& name, const std::string& text, const std::string& fmt,
                     std::vector<std::string> formats) {
    auto* sub = app.add_subcommand(name, text);
    default_format[name] = fmt;
    Builder b{sub, cfg, keys[name]};
    b.output(fmt, std::move(formats));
    return b;
  };
  const std::vector<std::string> json_csv = {"json", "csv"};

  command("gen", "generate a graph", "edgelist", {"edgelist", "json", "csv"}).graph();
  command("eo", "count Eulerian orientations", "json", json_csv).graph().edge_cap().threads();
  command("pauling", "Pauling estimate for degree d", "json", json_csv).d();
  command("mc", "Monte Carlo entropy estimate", "json", json_csv).graph().seed().samples().threads();
  command("trails", "closed-trail counts", "csv", json_csv).graph().lmax().k().C("constant for the bound column").budget().threads();
  command("spectrum", "adjacency eigenvalues", "json", json_csv).graph();
  command("check-theorem", "trail-count hypothesis", "json", json_csv)
      .graph().lmax().C("hypothesis constant (default 1)").budget().threads();
  command("check-spectral", "spectral outlier check", "json", json_csv).graph().delta().budget().threads();
  command("check-girth", "girth check", "json", json_csv).graph();
  command("check-product", "product-graph tail check", "json", json_csv).h().delta().exact();
  command("switchlab", "switching graph and tail law", "json", json_csv)
      .graph().k().L().C("constant in M0 (default 1)").M().budget().threads();
  command("identity", "exact orientation/partition identity", "json", json_csv).graph().edge_cap().threads();
  command("xlaw", "law of the trail count at one vertex", "json", json_csv).d();

  // check-spectral only counts trails when --lmax is given explicitly
  auto* spectral = app.get_subcommand("check-spectral");
  auto* spectral_lmax = spectral->add_option("--lmax", cfg.lmax, "attach trail-count margins up to this length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.format.empty()) cfg.format = default_format[cfg.command];
  auto active = keys[cfg.command];
  if (cfg.command == "check-spectral" && spectral_lmax->count() > 0) active.insert("lmax");

  try {
    Runner runner(cfg, active);
    const std::string text = runner.render(runner.execute());
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InputError("cannot write report: " + cfg.out);
      file << text;
      if (!file) throw InputError("cannot write report: " + cfg.out);
    }
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const ConvergenceError& e) {
    err << "did not converge: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace euler_entropy::cli
