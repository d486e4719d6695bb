#include "waring/cli.hpp"

#include "waring/eulermac.hpp"
#include "waring/expansion.hpp"
#include "waring/expsums.hpp"
#include "waring/numeric.hpp"
#include "waring/oracle.hpp"
#include "waring/series.hpp"
#include "waring/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace waring::cli {

namespace {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

void write_csv_table(const Table& t, const std::string& command, std::ostream& out) {
  out << "# waring " << kVersion << ' ' << command;
  for (const auto& [key, value] : t.metadata) out << ' ' << key << '=' << value;
  out << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json_table(const Table& t, const std::string& command, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["command"] = command;
  auto& meta = doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.metadata) meta[key] = value;
  doc["columns"] = t.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      std::visit([&](const auto& v) { r.push_back(v); }, c);
    }
    rows.push_back(std::move(r));
  }
  out << doc.dump(1) << '\n';
}

// Inclusive integer range "a..b" or a single value.
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto pos = text.find("..");
  try {
    if (pos == std::string::npos) {
      auto v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, pos)), std::stoll(text.substr(pos + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + text + "' (expected a or a..b)");
  }
}

unsigned default_threads() {
  const char* env = std::getenv("WARING_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw std::invalid_argument("WARING_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

struct Common {
  std::string output;
  bool json = false;
  unsigned threads = 1;
  std::string cache_dir;
};

void check_k(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
}

RepCountTable exact_counts(int k, int s, std::int64_t N, bool is_signed, const Common& common) {
  auto compute = [&] {
    return is_signed ? count_representations_signed(k, s, N) : count_representations(k, s, N);
  };
  if (common.cache_dir.empty()) return compute();
  namespace fs = std::filesystem;
  fs::create_directories(common.cache_dir);
  std::string name = "R_k" + std::to_string(k) + "_s" + std::to_string(s) + "_N" +
                     std::to_string(N) + (is_signed ? "_signed" : "") + ".wrc";
  fs::path path = fs::path(common.cache_dir) / name;
  if (fs::exists(path)) {
    auto table = read_binary_file(path.string());
    if (table.k == k && table.s == s && table.N == N && table.is_signed == is_signed) return table;
  }
  auto table = compute();
  write_binary_file(table, path.string());
  return table;
}

struct ExpsumArgs {
  int k = 3;
  std::int64_t q = 7;
  std::optional<std::int64_t> a;
};

Table run_expsum(const ExpsumArgs& p) {
  check_k(p.k);
  if (p.q < 1) throw std::invalid_argument("q must be >= 1");
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"q", std::to_string(p.q)}};
  t.columns = {"q", "a", "gcd", "S_re", "S_im", "T_re", "T_im"};
  auto add_row = [&](std::int64_t a, std::complex<double> S, std::complex<double> T) {
    t.rows.push_back({p.q, a, gcd64(a, p.q), S.real(), S.imag(), T.real(), T.imag()});
  };
  if (p.a) {
    std::int64_t a = *p.a;
    if (a < 0 || a >= p.q) throw std::invalid_argument("a must lie in [0, q)");
    add_row(a, complete_sum_S(p.q, a, p.k).value, weighted_sum_T(p.q, a, p.k).value);
  } else {
    auto sums = modulus_sums(p.q, p.k);
    for (std::int64_t a = 0; a < p.q; ++a) {
      auto i = static_cast<std::size_t>(a);
      add_row(a, sums.S[i], sums.T[i]);
    }
  }
  return t;
}

struct SeriesArgs {
  int k = 3;
  int s = 9;
  int j = 0;
  std::string n = "1";
  std::optional<std::int64_t> Q;
};

Table run_series(const SeriesArgs& p, const Common& c) {
  check_k(p.k);
  auto [lo, hi] = parse_range(p.n);
  if (lo < 1 || hi < lo) throw std::invalid_argument("n range must be non-empty and positive");
  std::int64_t Q = p.Q ? *p.Q : TruncationSpec::default_truncation(hi, p.k);
  TruncationSpec spec{p.k, p.s, p.j, lo, Q};
  spec.validate();
  TruncatedSeries series(p.k, p.s, p.j, Q, c.threads);
  auto values = series.evaluate_range(lo, hi, c.threads);
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"s", std::to_string(p.s)},
                {"j", std::to_string(p.j)}, {"n", p.n}, {"Q", std::to_string(Q)}};
  t.columns = {"n", "Q", "re", "im", "abs"};
  for (std::int64_t n = lo; n <= hi; ++n) {
    auto v = values[static_cast<std::size_t>(n - lo)];
    t.rows.push_back({n, Q, v.real(), v.imag(), std::abs(v)});
  }
  return t;
}

struct ExpansionArgs {
  int k = 2;
  int s = 9;
  int J = 1;
  std::string n = "1000";
  std::optional<std::int64_t> Q;
};

Table run_expansion(const ExpansionArgs& p, const Common& c) {
  check_k(p.k);
  auto [lo, hi] = parse_range(p.n);
  if (lo < 1 || hi < lo) throw std::invalid_argument("n range must be non-empty and positive");
  std::int64_t Q = p.Q ? *p.Q : TruncationSpec::default_truncation(hi, p.k);
  ExpansionModel model(p.k, p.s, p.J, Q, c.threads);
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"s", std::to_string(p.s)},
                {"J", std::to_string(p.J)}, {"n", p.n}, {"Q", std::to_string(Q)}};
  t.columns = {"n"};
  for (int j = 0; j <= p.J; ++j) t.columns.push_back("c" + std::to_string(j));
  t.columns.push_back("prediction");
  for (std::int64_t n = lo; n <= hi; ++n) {
    auto coeffs = model.coefficients(n);
    std::vector<Cell> row{n};
    for (const auto& term : coeffs.terms) row.emplace_back(term.value);
    row.emplace_back(evaluate_expansion(n, coeffs));
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct OracleArgs {
  int k = 2;
  int s = 4;
  std::int64_t N = 100;
  bool is_signed = false;
};

Table run_oracle(const OracleArgs& p, const Common& c) {
  check_k(p.k);
  auto table = exact_counts(p.k, p.s, p.N, p.is_signed, c);
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"s", std::to_string(p.s)},
                {"N", std::to_string(p.N)}, {"signed", p.is_signed ? "1" : "0"}};
  t.columns = {"n", "count"};
  for (std::int64_t n = 0; n <= p.N; ++n) t.rows.push_back({n, to_string(table[n])});
  return t;
}

struct ResidualArgs {
  int k = 2;
  int s = 9;
  int J = 1;
  std::int64_t n_min = 1;
  std::int64_t n_max = 1000;
  std::optional<std::int64_t> Q;
};

Table run_residuals(const ResidualArgs& p, const Common& c) {
  check_k(p.k);
  if (p.n_min < 1 || p.n_max < p.n_min) throw std::invalid_argument("need 1 <= n-min <= n-max");
  std::int64_t Q = p.Q ? *p.Q : TruncationSpec::default_truncation(p.n_max, p.k);
  auto exact = exact_counts(p.k, p.s, p.n_max, false, c);
  auto records = residual_table(exact, p.J, p.n_min, p.n_max, Q, c.threads);
  Table t;
  t.metadata = {{"k", std::to_string(p.k)},         {"s", std::to_string(p.s)},
                {"J", std::to_string(p.J)},         {"n_min", std::to_string(p.n_min)},
                {"n_max", std::to_string(p.n_max)}, {"Q", std::to_string(Q)}};
  t.columns = {"n", "exact"};
  for (int j = 0; j <= p.J; ++j) t.columns.push_back("pred" + std::to_string(j));
  for (int j = 0; j <= p.J; ++j) t.columns.push_back("E" + std::to_string(j));
  for (const auto& rec : records) {
    std::vector<Cell> row{rec.n, to_string(rec.exact)};
    for (double v : rec.predicted) row.emplace_back(v);
    for (double v : rec.residual) row.emplace_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct EmArgs {
  int k = 2;
  double theta = 2.5;
  std::int64_t q = 3;
  std::int64_t r = 1;
  int N = 2;
  std::string variant = "two-sided";
  std::vector<double> X{1e3, 1e4, 1e5};
};

Table run_em_verify(const EmArgs& p, const Common& c) {
  check_k(p.k);
  Variant variant;
  if (p.variant == "two-sided") {
    variant = Variant::two_sided;
  } else if (p.variant == "dagger") {
    variant = Variant::dagger;
  } else {
    throw std::invalid_argument("variant must be two-sided or dagger");
  }
  Table t;
  char theta_text[64];
  std::snprintf(theta_text, sizeof theta_text, "%.15g", p.theta);
  t.metadata = {{"k", std::to_string(p.k)}, {"theta", theta_text},
                {"q", std::to_string(p.q)}, {"r", std::to_string(p.r)},
                {"N", std::to_string(p.N)}, {"variant", p.variant}};
  t.columns = {"X", "direct", "main", "psi", "scaled_error"};
  for (double X : p.X) {
    LatticeSumSpec spec;
    spec.k = p.k;
    spec.theta = p.theta;
    spec.q = p.q;
    spec.r = {p.r};
    spec.N = p.N;
    spec.X = X;
    auto asym = upsilon_asymptotic(spec, variant);
    wide_real direct = upsilon_direct(spec, variant, c.threads);
    wide_real scaled = abs(direct - asym.main - asym.psi) / asym.error_scale;
    t.rows.push_back({X, static_cast<double>(direct), static_cast<double>(asym.main),
                      static_cast<double>(asym.psi), static_cast<double>(scaled)});
  }
  return t;
}

struct Thm14Args {
  int k = 3;
  int s = 8;
  std::string Q = "2..5";
  std::int64_t trunc = 200;
  std::int64_t m = 1;
};

Table run_thm14(const Thm14Args& p) {
  auto [lo, hi] = parse_range(p.Q);
  if (lo < 1 || hi < lo) throw std::invalid_argument("Q range must be non-empty and positive");
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"s", std::to_string(p.s)}, {"Q", p.Q},
                {"trunc", std::to_string(p.trunc)}, {"m", std::to_string(p.m)}};
  t.columns = {"Q", "n", "discrepancy"};
  for (std::int64_t Q = lo; Q <= hi; ++Q) {
    double d = theorem_1_4_discrepancy(p.s, p.k, Q, p.m, p.trunc);
    std::int64_t n = p.m;
    for (std::int64_t i = 2; i <= Q; ++i) n *= i;  // overflow already rejected above
    t.rows.push_back({Q, n, d});
  }
  return t;
}

struct Thm15Args {
  int k = 3;
  int s = 13;
  int j = 1;
  std::int64_t x = 2000;
  std::int64_t Q = 60;
  std::optional<double> C;
};

Table run_thm15(const Thm15Args& p, const Common& c) {
  check_k(p.k);
  double C = 0.0;
  if (p.C) {
    C = *p.C;
  } else {
    C = 0.5 * median(series_magnitudes(p.k, p.s, p.j, p.Q, p.x, c.threads));
  }
  auto census = nonvanishing_census(p.s, p.j, p.k, p.x, p.Q, C, c.threads);
  Table t;
  t.metadata = {{"k", std::to_string(p.k)}, {"s", std::to_string(p.s)},
                {"j", std::to_string(p.j)}, {"x", std::to_string(p.x)},
                {"Q", std::to_string(p.Q)}, {"C", format_double(C)}};
  t.columns = {"x", "Q", "C", "count", "fraction"};
  t.rows.push_back({p.x, p.Q, C, census.count, census.fraction});
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on asymptotic formulas in Waring's problem", "waring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read option values from a key = value file ([subcommand] sections)");

  Common common;
  try {
    common.threads = default_threads();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  app.add_option("-o,--output", common.output, "Write the table to this file instead of stdout");
  app.add_flag("--json", common.json, "Emit JSON instead of CSV");
  app.add_option("--threads", common.threads, "Worker threads (default: $WARING_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", common.cache_dir, "Directory for cached exact count tables");

  ExpsumArgs expsum;
  auto* c_expsum = app.add_subcommand("expsum", "Complete sums S(q,a) and weighted sums T(q,a)");
  c_expsum->add_option("--k", expsum.k, "Exponent")->required();
  c_expsum->add_option("--q", expsum.q, "Modulus")->required();
  c_expsum->add_option("--a", expsum.a, "Single residue (default: all residues)");

  SeriesArgs series;
  auto* c_series = app.add_subcommand("series", "Truncated singular series S_{s,j}(n;Q)");
  c_series->add_option("--k", series.k)->required();
  c_series->add_option("--s", series.s)->required();
  c_series->add_option("--j", series.j, "Number of weighted factors");
  c_series->add_option("--n", series.n, "n or a..b")->required();
  c_series->add_option("--Q", series.Q, "Truncation (default floor(n_max^(1/k)))");

  ExpansionArgs expansion;
  auto* c_expansion = app.add_subcommand("expansion", "Expansion coefficients c_0..c_J");
  c_expansion->add_option("--k", expansion.k)->required();
  c_expansion->add_option("--s", expansion.s)->required();
  c_expansion->add_option("--J", expansion.J);
  c_expansion->add_option("--n", expansion.n, "n or a..b")->required();
  c_expansion->add_option("--Q", expansion.Q);

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Exact representation counts R_s(n), n <= N");
  c_oracle->add_option("--k", oracle.k)->required();
  c_oracle->add_option("--s", oracle.s)->required();
  c_oracle->add_option("--N", oracle.N)->required();
  c_oracle->add_flag("--signed", oracle.is_signed, "Count over all integers (even k)");

  ResidualArgs residuals;
  auto* c_residuals = app.add_subcommand("residuals", "Exact counts against the expansion");
  c_residuals->add_option("--k", residuals.k)->required();
  c_residuals->add_option("--s", residuals.s)->required();
  c_residuals->add_option("--J", residuals.J);
  c_residuals->add_option("--n-min", residuals.n_min);
  c_residuals->add_option("--n-max", residuals.n_max)->required();
  c_residuals->add_option("--Q", residuals.Q);

  EmArgs em;
  auto* c_em = app.add_subcommand("em-verify", "Lattice sums against their asymptotics");
  c_em->add_option("--k", em.k);
  c_em->add_option("--theta", em.theta);
  c_em->add_option("--q", em.q);
  c_em->add_option("--r", em.r);
  c_em->add_option("--N", em.N);
  c_em->add_option("--variant", em.variant)->check(CLI::IsMember({"two-sided", "dagger"}));
  c_em->add_option("--X", em.X, "Values of X")->delimiter(',');

  Thm14Args thm14;
  auto* c_thm14 = app.add_subcommand("thm14", "Discrepancy S_{s,1}(n) + S_{s-1}(n)/2 at n = Q! m");
  c_thm14->add_option("--k", thm14.k);
  c_thm14->add_option("--s", thm14.s);
  c_thm14->add_option("--Q", thm14.Q, "Q or a..b");
  c_thm14->add_option("--trunc", thm14.trunc, "Series truncation");
  c_thm14->add_option("--m", thm14.m);

  Thm15Args thm15;
  auto* c_thm15 = app.add_subcommand("thm15", "Count n <= x with |S_{s,j}(n;Q)| >= C");
  c_thm15->add_option("--k", thm15.k);
  c_thm15->add_option("--s", thm15.s);
  c_thm15->add_option("--j", thm15.j);
  c_thm15->add_option("--x", thm15.x);
  c_thm15->add_option("--Q", thm15.Q);
  c_thm15->add_option("--C", thm15.C, "Threshold (default: half the median magnitude)");

  auto* c_selftest = app.add_subcommand("selftest", "Run the exact identity checks");

  std::vector<const char*> argv{"waring"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return 2;
  }

  try {
    if (c_selftest->parsed()) {
      bool all = true;
      for (const auto& id : criterion_ids()) {
        if (!criterion_is_exact(id)) continue;
        auto result = run_criterion(id, common.threads);
        all = all && result.passed;
        out << format_result(result) << '\n';
      }
      return all ? 0 : 1;
    }

    Table table;
    std::string command;
    if (c_expsum->parsed()) {
      command = "expsum";
      table = run_expsum(expsum);
    } else if (c_series->parsed()) {
      command = "series";
      table = run_series(series, common);
    } else if (c_expansion->parsed()) {
      command = "expansion";
      table = run_expansion(expansion, common);
    } else if (c_oracle->parsed()) {
      command = "oracle";
      table = run_oracle(oracle, common);
    } else if (c_residuals->parsed()) {
      command = "residuals";
      table = run_residuals(residuals, common);
    } else if (c_em->parsed()) {
      command = "em-verify";
      table = run_em_verify(em, common);
    } else if (c_thm14->parsed()) {
      command = "thm14";
      table = run_thm14(thm14);
    } else {
      command = "thm15";
      table = run_thm15(thm15, common);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!common.output.empty()) {
      file.open(common.output);
      if (!file) {
        err << "error: cannot open " << common.output << " for writing\n";
        return 2;
      }
      sink = &file;
    }
    if (common.json) {
      write_json_table(table, command, *sink);
    } else {
      write_csv_table(table, command, *sink);
    }
    sink->flush();
    if (!*sink) throw std::runtime_error("write failed");
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace waring::cli
