#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "hbe/hbe.hpp"

namespace hbe::cli {
namespace {

using nlohmann::json;
namespace jio = json_io;

struct Options {
  std::string json_path;
  std::string csv_path;
  std::string spec;
  std::string file;
  std::string exp;
  std::string functional;
  std::string z = "0,0";
  std::string hemisphere = "plus";
  std::string ordering = "split";
  std::optional<double> a;
  double xmax = 12.0;
  int npoints = 6144;
  double tol = osc::kIdentityTol;
  std::uint64_t seed = 1;
  std::optional<int> samples;
  int trials = 20;
  int K = 6;
  std::int64_t degree = 1;
  int n = 0;
  int modes = 64;
  int points = 1024;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct Context {
  Options o;
  json outputs = json::object();
  std::optional<Table> table;
};

/// Usage-level problem with the arguments themselves.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("JSON parse error: ") + e.what());
  }
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

/// The JSON document behind --spec (inline text) or --file (path).
std::optional<json> document(const Options& o) {
  if (!o.file.empty()) return parse_json_text(read_file(o.file));
  return std::nullopt;
}

IntSeq parse_seq(const std::string& text) {
  if (starts_with(text, "delta:")) return IntSeq::impulse(parse_int(text.substr(6)));
  if (starts_with(text, "const:")) return IntSeq::constant(parse_int(text.substr(6)));
  if (starts_with(text, "step:")) return IntSeq({1}, {}, parse_int(text.substr(5)) + 1, {0});
  if (starts_with(text, "iota:")) return iota_rep(parse_rational(text.substr(5)));
  if (text == "halfhalf") return IntSeq::two_tails(1, -1, 0);
  if (text == "alt") return IntSeq::periodic({1, -1}, 0);
  if (starts_with(text, "ep:")) return jio::decode_int_seq(parse_json_text(text.substr(3)));
  if (starts_with(text, "{")) return jio::decode_int_seq(parse_json_text(text));
  throw UsageError("unknown sequence spec '" + text + "'");
}

IntSeq seq_input(const Options& o) {
  if (auto doc = document(o)) return jio::decode_int_seq(*doc);
  if (o.spec.empty()) throw UsageError("a sequence is required (--spec or --file)");
  return parse_seq(o.spec);
}

EPBandOp parse_op(const std::string& text) {
  if (starts_with(text, "shift:")) return shift_op(parse_int(text.substr(6)));
  if (text == "identity") return identity_op();
  if (starts_with(text, "diag:")) return diagonal_op(jio::decode_complex_seq(parse_json_text(text.substr(5))));
  if (starts_with(text, "{")) return jio::decode_op(parse_json_text(text));
  throw UsageError("unknown operator spec '" + text + "'");
}

EPBandOp op_input(const Options& o) {
  if (auto doc = document(o)) return jio::decode_op(*doc);
  if (o.spec.empty()) throw UsageError("an operator is required (--spec or --file)");
  return parse_op(o.spec);
}

ExponentSpec parse_exp(const std::string& text) {
  if (starts_with(text, "linear:")) {
    const auto parts = split(text.substr(7), ',');
    if (parts.empty() || parts.size() > 2) throw UsageError("linear:s[,c] expected");
    return LinearExponents{parse_int(parts[0]), parts.size() == 2 ? parse_int(parts[1]) : 0};
  }
  return parse_seq(text);
}

Functional parse_functional(const std::string& text) {
  if (text.empty() || text == "halfhalf") return Functional::half_half_dual();
  if (text == "constant") return Functional::constant_dual();
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("functional must be 'c_minus,c_plus'");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

std::complex<double> parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw UsageError("complex value must be 're[,im]'");
  try {
    return {std::stod(parts[0]), parts.size() == 2 ? std::stod(parts[1]) : 0.0};
  } catch (const std::exception&) {
    throw UsageError("bad complex value '" + text + "'");
  }
}

osc::Hemisphere parse_hemisphere(const std::string& s) {
  if (s == "plus") return osc::Hemisphere::Plus;
  if (s == "minus") return osc::Hemisphere::Minus;
  throw UsageError("hemisphere must be plus or minus");
}

osc::Ordering parse_ordering(const std::string& s) {
  if (s == "split") return osc::Ordering::Split;
  if (s == "interleaved") return osc::Ordering::Interleaved;
  throw UsageError("ordering must be split or interleaved");
}

GridSpec grid(const Options& o) { return {o.xmax, o.npoints}; }

/// Cocycle from --file, or the pushforward of the universal cover.
EndCocycle cocycle_input(const Options& o) {
  if (auto doc = document(o)) return jio::decode_cocycle(*doc);
  if (!o.spec.empty()) return jio::decode_cocycle(parse_json_text(o.spec));
  return pushforward_universal_cover();
}

json class_json(const CoinvClass& c) { return jio::encode(c); }

// ---------------------------------------------------------------------------
// seq

void seq_class(Context& c) {
  const auto a = seq_input(c.o);
  c.outputs["class"] = class_json(coinv_class(a));
  c.outputs["trivial"] = is_trivial(a);
  c.outputs["canonical"] = jio::encode(canonicalize(a));
  if (is_two_sided_periodic(a)) c.outputs["cesaro"] = jio::encode(cesaro(a));
}

void seq_pair(Context& c) {
  const auto a = seq_input(c.o);
  const auto f = parse_functional(c.o.functional);
  c.outputs["class"] = class_json(coinv_class(a));
  c.outputs["functional"] = jio::encode(f);
  c.outputs["pair"] = jio::encode(pair(f, coinv_class(a)));
}

void seq_witness(Context& c) {
  const auto a = seq_input(c.o);
  const auto b = certificate_trivial(a);
  c.outputs["witness"] = jio::encode(b);
  c.outputs["verified"] = observationally_equal(delta(b), canonicalize(a));
}

// ---------------------------------------------------------------------------
// op

void op_index(Context& c) {
  const auto op = op_input(c.o);
  const Index window = 8 * op.band() + 32;
  c.outputs["unitarity_defect"] = unitarity_defect(op, window);
  c.outputs["corner_flow"] = corner_flow(op);
  c.outputs["index"] = fredholm_index(op);
}

void op_prop(Context& c) {
  const auto op = op_input(c.o);
  c.outputs["band"] = op.band();
  c.outputs["propagation"] = propagation(op);
}

void op_periodic(Context& c) {
  const auto op = op_input(c.o);
  if (c.o.n > 0) {
    c.outputs["n"] = c.o.n;
    c.outputs["periodic"] = is_periodic(op, c.o.n);
    return;
  }
  json smallest = nullptr;
  for (Index n = 1; n <= kMaxEndPeriod; ++n)
    if (is_periodic(op, n)) {
      smallest = n;
      break;
    }
  c.outputs["periodic"] = !smallest.is_null();
  c.outputs["smallest_period"] = smallest;
}

// ---------------------------------------------------------------------------
// bundle

void put_alpha1(Context& c, const EndCocycle& cocycle) {
  const auto& loop = cocycle.equator();
  const auto f = parse_functional(c.o.functional);
  c.outputs["class"] = class_json(coinv_class(loop.exponents));
  c.outputs["functional"] = jio::encode(f);
  c.outputs["equator_component"] = loop.shift_power;
  c.outputs["nonzero_component"] = loop.shift_power != 0;
  c.outputs["alpha1"] = jio::encode(alpha1(cocycle, f));
}

void bundle_esum(Context& c) {
  if (c.o.exp.empty()) throw UsageError("--exp is required");
  const auto cocycle = completed_sum_sphere(parse_exp(c.o.exp));
  c.outputs["cocycle"] = jio::encode(cocycle);
  c.outputs["cocycle_check"] = cocycle_check(cocycle);
  c.outputs["periodic_end"] = periodic_end_check(cocycle);
  put_alpha1(c, cocycle);
}

void put_circle(Context& c, const EndCocycle& cocycle) {
  c.outputs["cocycle"] = jio::encode(cocycle);
  c.outputs["cocycle_check"] = cocycle_check(cocycle);
  c.outputs["periodic_end"] = periodic_end_check(cocycle);
  c.outputs["beta1"] = beta1(cocycle);
}

void bundle_pushforward(Context& c) {
  const auto cocycle = pushforward_universal_cover();
  put_circle(c, cocycle);
  const auto& t = cocycle.circle_transitions();
  c.outputs["permutation_only"] = is_permutation_only(t.on_a) && is_permutation_only(t.on_b);
  c.outputs["propagation"] = std::max(propagation(t.on_a), propagation(t.on_b));
}

void bundle_pullback(Context& c) {
  const auto base = cocycle_input(c.o);
  const auto pulled = pullback_circle(base, c.o.degree);
  c.outputs["degree"] = c.o.degree;
  c.outputs["beta1_base"] = beta1(base);
  put_circle(c, pulled);
}

void bundle_alpha1(Context& c) {
  const auto cocycle = c.o.exp.empty() ? cocycle_input(c.o) : completed_sum_sphere(parse_exp(c.o.exp));
  put_alpha1(c, cocycle);
}

void bundle_beta1(Context& c) { put_circle(c, cocycle_input(c.o)); }

void bundle_hat(Context& c) {
  const auto cocycle = c.o.exp.empty() ? cocycle_input(c.o) : completed_sum_sphere(parse_exp(c.o.exp));
  c.outputs["base"] = to_string(cocycle.base());
  c.outputs["periodic_end"] = periodic_end_check(cocycle);
  if (cocycle.base() == BaseComplex::SphereTwoDisc)
    c.outputs["hat_alpha1"] = jio::encode(hat_alpha1(cocycle));
  else
    c.outputs["hat_beta1"] = hat_beta1(cocycle);
}

// ---------------------------------------------------------------------------
// fourier

void fourier_l1(Context& c) {
  const auto cocycle = fourier::l1_bundle();
  json comps = json::object();
  for (auto [comp, t] : {std::pair{fourier::OverlapComponent::A, fourier::kSampleTA},
                         std::pair{fourier::OverlapComponent::B, fourier::kSampleTB}}) {
    const auto w = fourier::circle_point(t);
    comps[comp == fourier::OverlapComponent::A ? "A" : "B"] = {
        {"t_sample", t},
        {"alias", fourier::printed_alias(comp)},
        {"jump", fourier::branch_jump(w)},
    };
  }
  c.outputs["components"] = comps;
  put_circle(c, cocycle);
}

void fourier_torus(Context& c) {
  const auto cocycle = fourier::l2_torus_bundle();
  c.outputs["cocycle"] = jio::encode(cocycle);
  c.outputs["cocycle_check"] = cocycle_check(cocycle, c.o.samples.value_or(64));
  try {
    periodic_end_check(cocycle);
  } catch (const Error& e) {
    c.outputs["invariants"] = to_string(e.code());
  }
}

void fourier_verify(Context& c) {
  const int samples = c.o.samples.value_or(1024);
  if (samples < 2) throw UsageError("--samples must be at least 2");
  Table table{{"t", "component", "branch1", "branch2", "jump"}, {}};
  double worst_integrality = 0.0;
  int count_a = 0, count_b = 0;
  for (int j = 0; j < samples; ++j) {
    // Alternate between the two overlap components, interior points only.
    const int half = (samples + 1) / 2;
    const double u = (j / 2 + 0.5) / half;
    const double t = j % 2 == 0 ? 0.5 + 0.25 * u : 0.25 * u;
    const auto w = fourier::circle_point(t);
    const double b1 = fourier::branch(fourier::Chart::One, w);
    const double b2 = fourier::branch(fourier::Chart::Two, w);
    const double diff = b2 - b1;
    worst_integrality = std::max(worst_integrality, std::abs(diff - std::round(diff)));
    const auto comp = fourier::overlap_component(w);
    (comp == fourier::OverlapComponent::A ? count_a : count_b)++;
    table.rows.push_back({t, comp == fourier::OverlapComponent::A ? "A" : "B", b1, b2,
                          fourier::branch_jump(w)});
  }
  double worst_dev = 0.0;
  for (int j = 0; j < 16; ++j) {
    const double u = (j / 2 + 0.5) / 8.0;
    const double t = j % 2 == 0 ? 0.5 + 0.25 * u : 0.25 * u;
    const auto w = fourier::circle_point(t);
    const auto num = fourier::transition_numeric(w, c.o.modes, c.o.points);
    const auto exact = fourier::transition_exact(w);
    for (int m = -c.o.modes; m <= c.o.modes; ++m)
      for (int n = -c.o.modes; n <= c.o.modes; ++n)
        worst_dev = std::max(worst_dev, std::abs(num(m + c.o.modes, n + c.o.modes) -
                                                 matrix_entry(exact, m, n)));
  }
  c.outputs["samples"] = samples;
  c.outputs["samples_per_component"] = {{"A", count_a}, {"B", count_b}};
  c.outputs["max_branch_nonintegrality"] = worst_integrality;
  c.outputs["modes"] = c.o.modes;
  c.outputs["points"] = c.o.points;
  c.outputs["max_transition_deviation"] = worst_dev;
  c.table = std::move(table);
  if (worst_integrality > 1e-9 || worst_dev > 1e-10)
    throw Error(ErrorCode::ToleranceExceeded, "Fourier transition check failed");
}

// ---------------------------------------------------------------------------
// osc

json identity_json(const osc::IdentityReport& rep) {
  json out = json::object();
  for (std::size_t k = 0; k < 5; ++k) out[std::string(rep.names[k])] = rep.max_residual[k];
  return out;
}

void osc_verify1d(Context& c) {
  const std::vector<double> as = c.o.a ? std::vector<double>{*c.o.a} : std::vector<double>{0.5, 1.0, 2.0};
  Table table{{"a", "trial", "r1", "r2", "r3", "r4", "r5"}, {}};
  json per_a = json::array();
  std::optional<Error> failure;
  for (double a : as) {
    const auto rep = osc::measure_identities_1d(a, c.o.trials, c.o.seed, grid(c.o));
    per_a.push_back({{"a", a}, {"max_residual", identity_json(rep)}});
    for (std::size_t t = 0; t < rep.rows.size(); ++t) {
      std::vector<json> row{a, t};
      for (double r : rep.rows[t]) row.push_back(r);
      table.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < 5 && !failure; ++k)
      if (!(rep.max_residual[k] <= c.o.tol))
        failure = Error(ErrorCode::ToleranceExceeded, std::string(rep.names[k]) + " fails at a = " +
                                                          json(a).dump());
  }
  c.outputs["tol"] = c.o.tol;
  c.outputs["trials"] = c.o.trials;
  c.outputs["results"] = per_a;
  c.table = std::move(table);
  if (failure) throw *failure;
}

void osc_verify2d(Context& c) {
  const int points = c.o.samples.value_or(20);
  std::mt19937_64 rng(c.o.seed);
  Table table{{"point", "trial", "r1", "r2", "r3", "r4", "r5"}, {}};
  std::array<double, 5> worst{};
  std::optional<Error> failure;
  osc::IdentityReport last;
  for (int p = 0; p < points; ++p) {
    const auto u = osc::random_sphere_point(rng);
    last = osc::measure_identities_2d(u, c.o.trials, c.o.seed + static_cast<std::uint64_t>(p) + 1,
                                      grid(c.o));
    for (std::size_t t = 0; t < last.rows.size(); ++t) {
      std::vector<json> row{p, t};
      for (double r : last.rows[t]) row.push_back(r);
      table.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < 5; ++k) worst[k] = std::max(worst[k], last.max_residual[k]);
  }
  last.max_residual = worst;
  for (std::size_t k = 0; k < 5 && !failure; ++k)
    if (!(worst[k] <= c.o.tol))
      failure = Error(ErrorCode::ToleranceExceeded, std::string(last.names[k]) + " fails");
  c.outputs["tol"] = c.o.tol;
  c.outputs["sphere_points"] = points;
  c.outputs["trials"] = c.o.trials;
  c.outputs["max_residual"] = identity_json(last);
  c.table = std::move(table);
  if (failure) throw *failure;
}

void osc_frame(Context& c) {
  const auto hemi = parse_hemisphere(c.o.hemisphere);
  const auto u = osc::u_point(parse_complex(c.o.z), hemi);
  const auto fr = osc::frame(u, hemi, c.o.K, parse_ordering(c.o.ordering), grid(c.o));
  c.outputs["hemisphere"] = osc::to_string(hemi);
  c.outputs["ordering"] = osc::to_string(fr.ordering);
  c.outputs["K"] = fr.K;
  c.outputs["labels"] = fr.labels;
  c.outputs["signed_levels"] = fr.signed_levels;
  c.outputs["gram_error"] = fr.gram_error;
  c.outputs["energy_residual"] = fr.energy_residual;
  c.outputs["relation_residual"] = fr.relation_residual;
}

void put_winding(Context& c, const osc::WindingResult& w) {
  c.outputs["labels"] = w.labels;
  c.outputs["windings"] = w.windings;
  c.outputs["winding_residual"] = w.max_residual;
  c.outputs["max_phase_step"] = w.max_step;
  c.outputs["max_off_pattern"] = w.max_off_pattern;
  c.outputs["max_unitarity_defect"] = w.max_unitarity_defect;
  Table table{{"label", "winding"}, {}};
  for (std::size_t k = 0; k < w.labels.size(); ++k) table.rows.push_back({w.labels[k], w.windings[k]});
  c.table = std::move(table);
}

void osc_bundle(Context& c) {
  const int samples = c.o.samples.value_or(64);
  const auto tower = osc::hermite_tower(1.0, c.o.K, grid(c.o));
  c.outputs["K"] = c.o.K;
  c.outputs["samples"] = samples;
  if (parse_ordering(c.o.ordering) == osc::Ordering::Interleaved) {
    const auto res = osc::interleaved_class(c.o.K, samples, tower);
    put_winding(c, res.winding);
    c.outputs["ordering"] = "interleaved";
    c.outputs["extension"] = jio::encode(res.extension);
    c.outputs["class"] = class_json(res.cls);
    c.outputs["witness"] = jio::encode(certificate_trivial(res.extension));
    return;
  }
  const auto b = osc::oscillator_bundle(c.o.K, samples, tower);
  put_winding(c, b.winding);
  c.outputs["ordering"] = "split";
  c.outputs["cocycle"] = jio::encode(b.cocycle);
  c.outputs["periodic_end"] = periodic_end_check(b.cocycle);
  put_alpha1(c, b.cocycle);
}

using Handler = std::function<void(Context&)>;

const std::map<std::string, std::map<std::string, Handler>>& handlers() {
  static const std::map<std::string, std::map<std::string, Handler>> table{
      {"seq", {{"class", seq_class}, {"pair", seq_pair}, {"witness", seq_witness}}},
      {"op", {{"index", op_index}, {"prop", op_prop}, {"periodic", op_periodic}}},
      {"bundle",
       {{"esum", bundle_esum},
        {"pushforward", bundle_pushforward},
        {"pullback", bundle_pullback},
        {"alpha1", bundle_alpha1},
        {"beta1", bundle_beta1},
        {"hat", bundle_hat}}},
      {"fourier", {{"l1", fourier_l1}, {"torus", fourier_torus}, {"verify", fourier_verify}}},
      {"osc",
       {{"verify1d", osc_verify1d},
        {"verify2d", osc_verify2d},
        {"frame", osc_frame},
        {"bundle", osc_bundle}}},
  };
  return table;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-propagation unitaries, coinvariant classes and bundles with ends"};
  app.name("hbe_cli");
  app.require_subcommand(1);
  Options o;
  app.add_option("--json", o.json_path, "Write the report to PATH");
  app.add_option("--csv", o.csv_path, "Write the residual or sample table to PATH");
  app.add_option("--spec", o.spec, "Inline sequence, operator or cocycle spec");
  app.add_option("--file", o.file, "JSON spec file");
  app.add_option("--exp", o.exp, "Exponent spec: linear:s[,c] or a sequence spec");
  app.add_option("--functional", o.functional, "c_minus,c_plus (rationals), constant or halfhalf");
  app.add_option("--z", o.z, "Point of the closed unit disc as re,im");
  app.add_option("--hemisphere", o.hemisphere, "plus or minus");
  app.add_option("--ordering", o.ordering, "split or interleaved");
  app.add_option("--a", o.a, "Oscillator frequency");
  app.add_option("--xmax", o.xmax, "Grid half-width");
  app.add_option("--npoints", o.npoints, "Grid points");
  app.add_option("--tol", o.tol, "Relative residual tolerance");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--samples", o.samples, "Sample count");
  app.add_option("--trials", o.trials, "Random fields per parameter");
  app.add_option("--K", o.K, "Frame cutoff");
  app.add_option("--degree", o.degree, "Degree of the circle map");
  app.add_option("--n", o.n, "Period to test");
  app.add_option("--modes", o.modes, "Fourier modes");
  app.add_option("--points", o.points, "Quadrature points");

  for (const auto& [group, leaves] : handlers()) {
    static const std::map<std::string, std::string> about{
        {"seq", "Eventually periodic integer sequences: class, pair, witness"},
        {"op", "Band operators: index, prop, periodic"},
        {"bundle", "Bundles with ends: esum, pushforward, pullback, alpha1, beta1, hat"},
        {"fourier", "Fourier bundle over the circle: l1, torus, verify"},
        {"osc", "Harmonic-oscillator bundle: verify1d, verify2d, frame, bundle"},
    };
    auto* g = app.add_subcommand(group, about.at(group));
    g->require_subcommand(1);
    g->fallthrough();
    for (const auto& [leaf, fn] : leaves) g->add_subcommand(leaf)->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const auto* group = app.get_subcommands().front();
  const auto* leaf = group->get_subcommands().front();
  const std::string command = group->get_name() + " " + leaf->get_name();

  json inputs = json::object();
  for (const auto* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto name = opt->get_name().substr(2);
    if (name == "json" || name == "csv") continue;
    inputs[name] = opt->as<std::string>();
  }

  Context ctx{o, json::object(), std::nullopt};
  json report{{"command", command}, {"inputs", inputs}, {"digest", hex(fnv1a(inputs.dump()))}};
  int code = kOk;
  try {
    handlers().at(group->get_name()).at(leaf->get_name())(ctx);
    report["status"] = "ok";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (e.code() == ErrorCode::InvalidInput)
      code = kUsage;
    else
      code = is_tolerance_failure(e.code()) ? kToleranceFailure : kDomainError;
  }
  report["outputs"] = ctx.outputs;

  const std::string text = report.dump(2) + "\n";
  out << text;
  try {
    if (!o.json_path.empty()) write_text(o.json_path, text);
    if (!o.csv_path.empty()) {
      if (!ctx.table) {
        err << "usage error: command '" << command << "' has no table for --csv\n";
        return kUsage;
      }
      std::ostringstream csv;
      for (std::size_t k = 0; k < ctx.table->header.size(); ++k)
        csv << (k ? "," : "") << ctx.table->header[k];
      csv << "\n";
      for (const auto& row : ctx.table->rows) {
        for (std::size_t k = 0; k < row.size(); ++k) csv << (k ? "," : "") << csv_cell(row[k]);
        csv << "\n";
      }
      write_text(o.csv_path, csv.str());
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  }
  if (code != kOk) err << report["error"]["message"].get<std::string>() << "\n";
  return code;
}

}  // namespace hbe::cli
