#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "xxzpath/correlations.hpp"
#include "xxzpath/errors.hpp"
#include "xxzpath/fluctuations.hpp"
#include "xxzpath/higher_dim.hpp"
#include "xxzpath/lattice_paths.hpp"
#include "xxzpath/model_parameters.hpp"
#include "xxzpath/partition_functions.hpp"
#include "xxzpath/sampler.hpp"
#include "xxzpath/serialization.hpp"
#include "xxzpath/verification.hpp"
#include "xxzpath/version.hpp"

namespace xxz::cli {

namespace {

using Row = std::vector<std::string>;

struct QArg {
  std::string text;
  bool float_mode = false;
  Rational exact;  // the exact binary value of a float q in float mode
  double value = 0.0;
};

QArg parse_q(const std::string& text, bool float_mode) {
  QArg q{text, float_mode, 0, 0.0};
  if (float_mode) {
    if (text.find('/') != std::string::npos) {
      q.value = parse_rational(text).get_d();
    } else {
      const char* end = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(text.data(), end, q.value);
      if (text.empty() || ec != std::errc{} || ptr != end) {
        throw PreconditionError("q '" + text + "' is not a number");
      }
    }
    make_parameters(QValue{q.value});
    q.exact = Rational(q.value);
  } else {
    if (text.find_first_of(".eE") != std::string::npos) {
      throw PreconditionError("exact q must be a rational such as 1/2; pass --float for "
                              "floating point");
    }
    q.exact = parse_rational(text);
    make_parameters(QValue{q.exact});
    q.value = q.exact.get_d();
  }
  return q;
}

const char* q_mode(const QArg& q) { return q.float_mode ? "float" : "exact"; }

Json parameters_json(const QArg& q) {
  const QValue value = q.float_mode ? QValue{q.value} : QValue{q.exact};
  const ParameterReport report = parameters_roundtrip(value);
  Json out{{"delta", report.parameters.delta},
           {"boundary_field", report.parameters.boundary_field},
           {"beta", report.parameters.beta},
           {"near_isotropic", report.near_isotropic}};
  if (report.parameters.delta_exact) out["delta_exact"] = report.parameters.delta_exact->get_str();
  return out;
}

Json envelope(const std::string& command, Json config, const std::string& mode,
              Json result) {
  config["command"] = command;
  return Json{{"config", std::move(config)},
              {"version", kVersion},
              {"q_mode", mode},
              {"result", std::move(result)}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  auto line = [&out](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string symbolic_text(const QRational& r) {
  return "(" + r.numerator().to_string() + ")/(" + r.denominator().to_string() + ")";
}

Json optional_text(const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); }

// partition ---------------------------------------------------------------

struct PartitionOptions {
  int n = 0;
  int m = 0;
  bool closed = false;
  bool recursive = false;
  bool oracle = false;
  std::string eval;
  bool use_float = false;
  std::string format = "json";
};

int run_partition(const PartitionOptions& o, std::ostream& out) {
  std::optional<QArg> q;
  if (!o.eval.empty()) q = parse_q(o.eval, o.use_float);
  const char* method = o.recursive ? "recursive" : o.oracle ? "oracle" : "closed";

  QPoly z;
  if (o.recursive) {
    ZCache cache;
    z = z_recursive(o.n, o.m, cache);
  } else if (o.oracle) {
    z = oracle_partition(BoxSpec{0, 0, o.n, o.m});
  } else {
    z = z_closed(o.n, o.m);
  }

  const Json config{{"n", o.n},         {"m", o.m},
                    {"method", method}, {"eval", optional_text(o.eval)},
                    {"float", o.use_float}, {"format", o.format}};
  if (!q) {
    if (o.format == "csv") {
      std::vector<Row> rows;
      for (const auto& t : z.terms()) {
        rows.push_back({std::to_string(t.exponent), t.coefficient.get_str()});
      }
      emit_csv(out, {"exponent", "coefficient"}, rows);
    } else {
      emit_json(out, envelope("partition", config, "symbolic", to_json(z)));
    }
    return kExitOk;
  }

  Json value;
  std::string value_text;
  if (q->float_mode) {
    const double v = evaluate(z, q->value);
    value = v;
    value_text = format_double(v);
  } else {
    value_text = evaluate(z, q->exact).get_str();
    value = value_text;
  }
  if (o.format == "csv") {
    emit_csv(out, {"q", "value"}, {{q->text, value_text}});
  } else {
    emit_json(out, envelope("partition", config, q_mode(*q),
                            Json{{"polynomial", to_json(z)},
                                 {"q", q->text},
                                 {"value", value}}));
  }
  return kExitOk;
}

// correlate ---------------------------------------------------------------

struct CorrelateOptions {
  int n = 0;
  int m = 0;
  std::string sites;
  std::string eval;
  bool exact = false;
  bool use_float = false;
  std::string format = "json";
};

enum class BoundKind { down, up, pair, exponential };

const char* bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::down: return "down";
    case BoundKind::up: return "up";
    case BoundKind::pair: return "pair";
    case BoundKind::exponential: return "exponential";
  }
  return "";
}

BoundKind bound_kind(const CorrelationQuery& query) {
  const auto& s = query.sites;
  if (s.size() == 1) return s[0].spin == Spin::down ? BoundKind::down : BoundKind::up;
  if (s.size() == 2 && s[0].spin == Spin::down && s[1].spin == Spin::up &&
      s[1].site == s[0].site + 1) {
    return BoundKind::pair;
  }
  return BoundKind::exponential;
}

bool in_regime(BoundKind kind, const CorrelationQuery& query) {
  const int n = query.sector.n;
  const int m = query.sector.m;
  const int x = query.sites.front().site;
  switch (kind) {
    case BoundKind::down: return down_bound_in_regime(n, m, x);
    case BoundKind::up: return up_bound_in_regime(n, m, x);
    case BoundKind::pair: return pair_bound_in_regime(n, m, x);
    case BoundKind::exponential: return exp_bound_in_regime(query);
  }
  return false;
}

QRational q_power(Exponent e) {
  return e >= 0 ? QRational(QPoly::monomial(e), QPoly(1))
                : QRational(QPoly(1), QPoly::monomial(-e));
}

QRational bound_function(BoundKind kind, const CorrelationQuery& query) {
  const Exponent n = query.sector.n;
  const Exponent m = query.sector.m;
  const Exponent x = query.sites.front().site;
  const Exponent len = n + m;
  switch (kind) {
    case BoundKind::down:
      return q_power(2 * (x - n)) *
             QRational(QPoly::one_minus_power(2 * n), QPoly::one_minus_power(2 * len));
    case BoundKind::up:
      return QRational(QPoly::one_minus_power(2 * m), QPoly::one_minus_power(2 * len));
    case BoundKind::pair:
      return q_power(2 * (x - n)) *
             QRational(QPoly::one_minus_power(2 * m) * QPoly::one_minus_power(2 * len),
                       QPoly::one_minus_power(2 * n) *
                           QPoly::one_minus_power(2 * (len - 1)));
    case BoundKind::exponential: return q_power(exp_bound_exponent(query));
  }
  return QRational(QPoly(0), QPoly(1));
}

template <class S>
S bound_value(BoundKind kind, const CorrelationQuery& query, const S& q) {
  const int n = query.sector.n;
  const int m = query.sector.m;
  const int x = query.sites.front().site;
  switch (kind) {
    case BoundKind::down: return bound_down(n, m, x, q);
    case BoundKind::up: return spin_up_bound(n, m, x, q);
    case BoundKind::pair: return pair_bound(n, m, x, q);
    case BoundKind::exponential: return exp_bound(query, q);
  }
  return S(0);
}

int run_correlate(const CorrelateOptions& o, std::ostream& out) {
  std::optional<QArg> q;
  if (!o.eval.empty()) q = parse_q(o.eval, o.use_float);
  if (o.use_float && !q) throw PreconditionError("--float needs --eval q");
  CorrelationQuery query{SectorSpec{o.n, o.m}, parse_sites(o.sites)};
  validate(query);

  ZCache cache;
  const QRational prob = multipoint_prob(query, cache);
  const BoundKind kind = bound_kind(query);
  const bool regime = in_regime(kind, query);

  const Json config{{"n", o.n},
                    {"m", o.m},
                    {"sites", format_sites(query.sites)},
                    {"eval", optional_text(o.eval)},
                    {"exact", o.exact || !q},
                    {"float", o.use_float},
                    {"format", o.format}};
  Json result{{"sites", format_sites(query.sites)},
              {"bound_kind", bound_name(kind)},
              {"in_regime", regime}};
  Row row{format_sites(query.sites), bound_name(kind), bool_text(regime)};
  std::string mode;

  if (!q) {
    mode = "symbolic";
    const QRational bound = bound_function(kind, query);
    Json checked = Json::array();
    Json violated = Json::array();
    for (const auto& g : default_q_grid()) {
      checked.push_back(g.get_str());
      if (evaluate(prob, g) > evaluate(bound, g)) violated.push_back(g.get_str());
    }
    const bool holds = violated.empty();
    result["probability"] = to_json(prob);
    result["bound"] = to_json(bound);
    result["bound_holds"] = holds;
    result["checked_on"] = checked;
    result["violated_at"] = violated;
    row.insert(row.end(), {symbolic_text(prob), symbolic_text(bound), bool_text(holds)});
  } else if (q->float_mode) {
    mode = "float";
    const double p = evaluate(prob, q->value);
    const double b = bound_value(kind, query, q->value);
    result["probability"] = p;
    result["bound"] = b;
    result["bound_holds"] = p <= b;
    result["q"] = q->text;
    result["parameters"] = parameters_json(*q);
    row.insert(row.end(), {format_double(p), format_double(b), bool_text(p <= b)});
  } else {
    mode = "exact";
    const Rational p = evaluate(prob, q->exact);
    const Rational b = bound_value(kind, query, q->exact);
    result["probability"] = p.get_str();
    result["bound"] = b.get_str();
    result["bound_holds"] = p <= b;
    result["q"] = q->text;
    result["parameters"] = parameters_json(*q);
    row.insert(row.end(), {p.get_str(), b.get_str(), bool_text(p <= b)});
  }

  if (o.format == "csv") {
    emit_csv(out, {"sites", "bound_kind", "in_regime", "probability", "bound", "bound_holds"},
             {row});
  } else {
    emit_json(out, envelope("correlate", config, mode, std::move(result)));
  }
  return kExitOk;
}

// fluctuations ------------------------------------------------------------

struct FluctuationOptions {
  int chain_length = 0;
  int window = 0;
  std::string q;
  bool use_float = false;
  std::string format = "json";
};

int run_fluctuations(const FluctuationOptions& o, std::ostream& out) {
  const QArg q = parse_q(o.q, o.use_float);
  const FluctuationQuery query{o.chain_length, o.window};
  validate(query);

  ZCache cache;
  const auto dist = fluctuation_distribution(query, cache);

  // All entries share one denominator, so the moment checks run on numerators.
  const QPoly& den = dist.begin()->second.denominator();
  QPoly total;
  QPoly first_moment;
  bool symmetric = true;
  for (const auto& [l, p] : dist) {
    total += p.numerator();
    first_moment += QPoly(l) * p.numerator();
    if (!(p.numerator() == dist.at(-l).numerator())) symmetric = false;
  }

  Json rows_json = Json::array();
  std::vector<Row> rows;
  for (const auto& [l, p] : dist) {
    Json entry{{"l", l}, {"tail_bound", nullptr}, {"within_bound", nullptr}};
    Row row{std::to_string(l)};
    std::string tail_text;
    std::string within_text;
    if (q.float_mode) {
      const double v = evaluate(p, q.value);
      entry["probability"] = v;
      row.push_back(format_double(v));
      if (l != 0) {
        const double t = tail_bound(q.value, o.window, std::abs(l));
        entry["tail_bound"] = t;
        entry["within_bound"] = v <= t;
        tail_text = format_double(t);
        within_text = bool_text(v <= t);
      }
    } else {
      const Rational v = evaluate(p, q.exact);
      entry["probability"] = v.get_str();
      row.push_back(v.get_str());
      if (l != 0) {
        const TailBound t = tail_bound(q.exact, o.window, std::abs(l));
        // Decided against the lower end of the certified enclosure.
        entry["tail_bound"] = t.estimate;
        entry["within_bound"] = v <= t.value.lo;
        tail_text = format_double(t.estimate);
        within_text = bool_text(v <= t.value.lo);
      }
    }
    row.push_back(tail_text);
    row.push_back(within_text);
    rows.push_back(std::move(row));
    rows_json.push_back(std::move(entry));
  }

  if (o.format == "csv") {
    emit_csv(out, {"l", "probability", "tail_bound", "within_bound"}, rows);
    return kExitOk;
  }
  const Json config{{"N", o.chain_length}, {"L", o.window},         {"q", o.q},
                    {"float", o.use_float}, {"format", o.format}};
  const Json result{{"N", o.chain_length},
                    {"L", o.window},
                    {"window_sites", Json::array({query.first_site(), query.last_site()})},
                    {"q", q.text},
                    {"parameters", parameters_json(q)},
                    {"normalized", total == den},
                    {"mean_zero", first_moment.is_zero()},
                    {"symmetric", symmetric},
                    {"distribution", std::move(rows_json)}};
  emit_json(out, envelope("fluctuations", config, q_mode(q), result));
  return kExitOk;
}

// sample ------------------------------------------------------------------

struct SampleOptions {
  int n = 0;
  int m = 0;
  std::string q;
  bool use_float = false;
  int count = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
};

int run_sample(const SampleOptions& o, std::ostream& out) {
  const QArg q = parse_q(o.q, o.use_float);
  PathSampler sampler(o.n, o.m, q.exact, o.seed);
  std::vector<Path> paths;
  paths.reserve(static_cast<std::size_t>(o.count));
  for (int i = 0; i < o.count; ++i) paths.push_back(sampler.draw());

  if (o.format == "text") {
    for (const auto& p : paths) out << p.to_string() << '\n';
  } else if (o.format == "csv") {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      rows.push_back({std::to_string(i), paths[i].to_string(),
                      std::to_string(path_area(paths[i]))});
    }
    emit_csv(out, {"index", "path", "area"}, rows);
  } else {
    Json list = Json::array();
    for (const auto& p : paths) {
      list.push_back(Json{{"path", p.to_string()}, {"area", path_area(p)}});
    }
    const Json config{{"n", o.n},         {"m", o.m},         {"q", o.q},
                      {"float", o.use_float}, {"count", o.count}, {"seed", o.seed},
                      {"format", o.format}};
    emit_json(out, envelope("sample", config, q_mode(q), Json{{"paths", std::move(list)}}));
  }
  return kExitOk;
}

// reduce2d ----------------------------------------------------------------

struct Reduce2dOptions {
  int sites = 0;
  int diagonals = 0;
  int k = -1;
  bool all = false;
  bool check = false;
  std::string format = "json";
};

int run_reduce2d(const Reduce2dOptions& o, std::ostream& out) {
  if (o.sites < 1 || o.diagonals < 1) {
    throw RangeError("two-dimensional system needs N >= 1 and M >= 1");
  }
  if (!o.all && o.k < 0) throw PreconditionError("one of --k or --all is required");
  std::vector<int> ks;
  if (o.all) {
    for (int k = 0; k <= o.sites * o.diagonals; ++k) ks.push_back(k);
  } else {
    ks.push_back(o.k);
  }

  ZCache cache;
  std::vector<QPoly> reduced;
  for (int k : ks) reduced.push_back(z2d_reduction(o.sites, o.diagonals, k, cache));

  Json entries = Json::array();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    Json parts = Json::array();
    Json weights = Json::array();
    for (const auto& c : compositions(o.sites, o.diagonals, ks[i])) {
      parts.push_back(c);
      weights.push_back(multinomial(c).get_str());
    }
    entries.push_back(Json{{"k", ks[i]},
                           {"compositions", std::move(parts)},
                           {"multinomials", std::move(weights)},
                           {"z2d", to_json(reduced[i])}});
    for (const auto& t : reduced[i].terms()) {
      rows.push_back({std::to_string(ks[i]), std::to_string(t.exponent),
                      t.coefficient.get_str()});
    }
  }

  int code = kExitOk;
  Json check = nullptr;
  if (o.check) {
    const auto product = z2d_product(o.sites, o.diagonals);
    Json records = Json::array();
    bool passed = true;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const QPoly& from_product = product[static_cast<std::size_t>(ks[i])];
      const bool a = reduced[i] == from_product;
      const bool b = from_product == z2d_oracle(o.sites, o.diagonals, ks[i]);
      passed = passed && a && b;
      records.push_back(Json{{"k", ks[i]},
                             {"reduction_equals_product", a},
                             {"product_equals_oracle", b}});
    }
    check = Json{{"passed", passed}, {"records", std::move(records)}};
    if (!passed) code = kExitVerificationFailed;
  }

  if (o.format == "csv") {
    emit_csv(out, {"k", "exponent", "coefficient"}, rows);
  } else {
    const Json config{{"N", o.sites},
                      {"M", o.diagonals},
                      {"k", o.all ? Json(nullptr) : Json(o.k)},
                      {"all", o.all},
                      {"check", o.check},
                      {"format", o.format}};
    emit_json(out, envelope("reduce2d", config, "symbolic",
                            Json{{"N", o.sites},
                                 {"M", o.diagonals},
                                 {"entries", std::move(entries)},
                                 {"check", std::move(check)}}));
  }
  return code;
}

// verify ------------------------------------------------------------------

struct VerifyOptions {
  std::string suite;
  int max_nm = 8;
  std::string grid = "1/5,1/2,4/5";
  std::string format = "json";
};

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational q = parse_rational(item);
    make_parameters(QValue{q});
    out.push_back(q);
  }
  if (out.empty()) throw PreconditionError("--q-grid needs at least one q value");
  return out;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  const auto grid = parse_grid(o.grid);
  ZCache cache;
  VerificationReport report;
  const bool all = o.suite == "all";
  if (all || o.suite == "identities") report.append(verify_identities(o.max_nm, cache));
  if (all || o.suite == "bounds") report.append(verify_bounds(o.max_nm, grid, cache));
  if (all || o.suite == "correlations") report.append(verify_correlations(o.max_nm, cache));
  if (all || o.suite == "reduce2d") report.append(verify_reduce2d(o.max_nm, cache));

  if (o.format == "csv") {
    std::vector<Row> rows;
    for (const auto& r : report.records) {
      rows.push_back({r.name, r.relation, r.scope, std::to_string(r.instances),
                      std::to_string(r.failures), bool_text(r.informational),
                      r.counterexample.value_or("")});
    }
    emit_csv(out,
             {"name", "relation", "scope", "instances", "failures", "informational",
              "counterexample"},
             rows);
  } else {
    const Json config{
        {"suite", o.suite}, {"max_nm", o.max_nm}, {"q_grid", o.grid}, {"format", o.format}};
    emit_json(out, envelope("verify", config, "exact", to_json(report)));
  }
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

// sweep -------------------------------------------------------------------

struct SweepOptions {
  std::string config;
  int jobs = 1;
};

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::pair<std::string, std::vector<SweepAxis>> read_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read sweep config '" + path + "'");
  std::string command;
  std::vector<SweepAxis> axes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("sweep config line " + std::to_string(line_no) +
                              ": expected 'key = value ...'");
    }
    SweepAxis axis{trim(line.substr(0, eq)), {}};
    std::istringstream values(line.substr(eq + 1));
    for (std::string v; values >> v;) axis.values.push_back(v);
    if (axis.key.empty() || axis.values.empty()) {
      throw PreconditionError("sweep config line " + std::to_string(line_no) +
                              ": key and at least one value required");
    }
    if (axis.key == "command") {
      if (axis.values.size() != 1) {
        throw PreconditionError("sweep config: command takes exactly one value");
      }
      command = axis.values.front();
      continue;
    }
    for (const auto& other : axes) {
      if (other.key == axis.key) {
        throw PreconditionError("sweep config: key '" + axis.key + "' given twice");
      }
    }
    axes.push_back(std::move(axis));
  }
  if (command.empty()) throw PreconditionError("sweep config needs 'command = <subcommand>'");
  if (command == "sweep") throw PreconditionError("sweep config cannot run sweep");
  return {command, axes};
}

int run_sweep(const SweepOptions& o, std::ostream& out) {
  const auto [command, axes] = read_sweep_config(o.config);

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();

  // Grid point i, first axis varying slowest.
  auto point = [&axes](std::size_t index) {
    std::vector<std::string> picked(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      picked[a] = axes[a].values[index % axes[a].values.size()];
      index /= axes[a].values.size();
    }
    return picked;
  };

  auto job = [&](std::size_t index) {
    const auto picked = point(index);
    std::vector<std::string> args{command};
    Json echo = Json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& key = axes[a].key;
      const auto& value = picked[a];
      echo[key] = value;
      if (key == "suite") {
        args.push_back(value);
      } else if (value == "true") {
        args.push_back("--" + key);
      } else if (value != "false") {
        args.push_back("--" + key);
        args.push_back(value);
      }
    }
    std::ostringstream job_out;
    std::ostringstream job_err;
    const int code = run(args, job_out, job_err);
    Json record{{"index", index}, {"point", echo}, {"exit_code", code}};
    Json parsed = Json::parse(job_out.str(), nullptr, false);
    record["output"] = parsed.is_discarded() ? Json(job_out.str()) : parsed;
    record["diagnostic"] = optional_text(trim(job_err.str()));
    return std::make_pair(code, record.dump());
  };

  std::vector<std::optional<std::pair<int, std::string>>> results(total);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      auto r = job(i);
      {
        std::lock_guard lock(mutex);
        results[i] = std::move(r);
      }
      ready.notify_all();
    }
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), total);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);

  // Single emitter: records leave in grid order, one line each.
  int code = kExitOk;
  for (std::size_t i = 0; i < total; ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return results[i].has_value(); });
    out << results[i]->second << '\n';
    code = std::max(code, results[i]->first);
  }
  return code;
}

void add_format(CLI::App* sub, std::string& target, std::vector<std::string> choices) {
  sub->add_option("--format", target, "Output format")
      ->check(CLI::IsMember(std::move(choices)))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact weighted lattice-path computations for the XXZ interface ground state",
               "xxzpath"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  PartitionOptions part;
  auto* partition = app.add_subcommand("partition", "Partition function Z(n,m)");
  partition->add_option("--n", part.n, "Down spins")->required()->check(CLI::NonNegativeNumber);
  partition->add_option("--m", part.m, "Up spins")->required()->check(CLI::NonNegativeNumber);
  auto* closed = partition->add_flag("--closed", part.closed, "Closed form (default)");
  auto* recursive = partition->add_flag("--recursive", part.recursive, "q-Pascal recursion");
  auto* oracle = partition->add_flag("--oracle", part.oracle, "Path enumeration");
  closed->excludes(recursive, oracle);
  recursive->excludes(oracle);
  partition->add_option("--eval", part.eval, "Evaluate at q, e.g. 1/2");
  partition->add_flag("--float", part.use_float, "Read q as a floating-point number");
  add_format(partition, part.format, {"json", "csv"});

  CorrelateOptions corr;
  auto* correlate = app.add_subcommand("correlate", "Joint spin probability and its bound");
  correlate->add_option("--n", corr.n, "Down spins")->required()->check(CLI::NonNegativeNumber);
  correlate->add_option("--m", corr.m, "Up spins")->required()->check(CLI::NonNegativeNumber);
  correlate->add_option("--sites", corr.sites, "Sites, e.g. 3:down,4:up")->required();
  auto* eval = correlate->add_option("--eval", corr.eval, "Evaluate at q, e.g. 1/2");
  correlate->add_flag("--exact", corr.exact, "Rational functions of q (default)")
      ->excludes(eval);
  correlate->add_flag("--float", corr.use_float, "Read q as a floating-point number");
  add_format(correlate, corr.format, {"json", "csv"});

  FluctuationOptions fluct;
  auto* fluctuations =
      app.add_subcommand("fluctuations", "Distribution of F_L with its tail bound");
  fluctuations->add_option("--N", fluct.chain_length, "Chain length (even)")->required();
  fluctuations->add_option("--L", fluct.window, "Window length (even)")->required();
  fluctuations->add_option("--q", fluct.q, "Anisotropy q, e.g. 1/2")->required();
  fluctuations->add_flag("--float", fluct.use_float, "Read q as a floating-point number");
  add_format(fluctuations, fluct.format, {"json", "csv"});

  SampleOptions samp;
  auto* sample = app.add_subcommand("sample", "Exact samples of weighted paths");
  sample->add_option("--n", samp.n, "Down spins")->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--m", samp.m, "Up spins")->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--q", samp.q, "Anisotropy q, e.g. 1/2")->required();
  sample->add_flag("--float", samp.use_float, "Read q as a floating-point number");
  sample->add_option("--count", samp.count, "Number of paths")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample->add_option("--seed", samp.seed, "Random seed")->capture_default_str();
  add_format(sample, samp.format, {"text", "json", "csv"});

  Reduce2dOptions red;
  auto* reduce2d = app.add_subcommand("reduce2d", "Two-dimensional partition functions");
  reduce2d->add_option("--N", red.sites, "Sites per diagonal")->required();
  reduce2d->add_option("--M", red.diagonals, "Number of diagonals")->required();
  auto* k = reduce2d->add_option("--k", red.k, "Number of down spins")
                ->check(CLI::NonNegativeNumber);
  reduce2d->add_flag("--all", red.all, "Every k from 0 to N*M")->excludes(k);
  reduce2d->add_flag("--check", red.check, "Compare with the product and the oracle");
  add_format(reduce2d, red.format, {"json", "csv"});

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", ver.suite, "identities|bounds|correlations|reduce2d|all")
      ->required()
      ->check(CLI::IsMember({"identities", "bounds", "correlations", "reduce2d", "all"}));
  verify->add_option("--max-nm", ver.max_nm, "Size limit of the checked instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--q-grid", ver.grid, "Exact q values for the bound suite")
      ->capture_default_str();
  add_format(verify, ver.format, {"json", "csv"});

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "Run a cartesian grid of commands");
  sweep->add_option("--config", sw.config, "Grid file of 'key = value ...' lines")
      ->required();
  sweep->add_option("--jobs", sw.jobs, "Concurrent grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (partition->parsed()) return run_partition(part, out);
    if (correlate->parsed()) return run_correlate(corr, out);
    if (fluctuations->parsed()) return run_fluctuations(fluct, out);
    if (sample->parsed()) return run_sample(samp, out);
    if (reduce2d->parsed()) return run_reduce2d(red, out);
    if (verify->parsed()) return run_verify(ver, out);
    if (sweep->parsed()) return run_sweep(sw, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace xxz::cli
