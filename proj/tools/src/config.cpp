#include "twisted_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace twisted::cli {

namespace {

using json = nlohmann::json;

std::string field(const std::string& path, const std::string& key) { return path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& need(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  if (!obj.contains(key)) throw ConfigError(field(path, key), "required field missing");
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ConfigError(path, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d < 0x1p63 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  }
  throw ConfigError(path, "expected a nonnegative integer");
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

std::vector<double> numbers(const json& v, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(v, path).size(); ++i) out.push_back(number(v[i], item(path, i)));
  return out;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
  return obj.contains(key) ? number(obj.at(key), field(path, key)) : fallback;
}

// Library constructors validate their own arguments; report those failures
// against the config field that produced them.
template <typename F>
auto build(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

IndexRange index_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [first, last]");
  const IndexRange r{count(v[0], item(path, 0)), count(v[1], item(path, 1))};
  if (r.first < 1 || r.last < r.first) throw ConfigError(path, "need 1 <= first <= last");
  return r;
}

SequenceSpec parse_sequence(const json& v, const std::string& path) {
  const std::string family = text(need(v, "family", path), field(path, "family"));
  return build(path, [&] {
    if (family == "polynomial") {
      const double degree = number(need(v, "degree", path), field(path, "degree"));
      if (degree < 1 || std::floor(degree) != degree) throw ConfigError(field(path, "degree"), "expected a positive integer");
      return SequenceSpec::polynomial(number_or(v, "c", 1.0, path), static_cast<unsigned>(degree));
    }
    if (family == "geometric") {
      return SequenceSpec::geometric(number_or(v, "q", 1.0, path), number(need(v, "r", path), field(path, "r")));
    }
    if (family == "table") {
      const auto& values = array(need(v, "values", path), field(path, "values"));
      std::vector<std::uint64_t> out;
      for (std::size_t i = 0; i < values.size(); ++i) out.push_back(count(values[i], item(field(path, "values"), i)));
      return SequenceSpec::table(std::move(out));
    }
    throw ConfigError(field(path, "family"), "unknown sequence family '" + family + "'");
  });
}

ApproxFunction parse_psi(const json& v, const std::string& path) {
  const std::string family = text(need(v, "family", path), field(path, "family"));
  return build(path, [&] {
    if (family == "power") return ApproxFunction::power(number(need(v, "sigma", path), field(path, "sigma")));
    if (family == "power_log") {
      return ApproxFunction::power_log(number(need(v, "sigma", path), field(path, "sigma")),
                                       number(need(v, "beta", path), field(path, "beta")));
    }
    if (family == "exponential") return ApproxFunction::exponential(number(need(v, "rate", path), field(path, "rate")));
    if (family == "table") {
      std::optional<double> tail;
      if (v.contains("tail_sigma")) tail = number(v.at("tail_sigma"), field(path, "tail_sigma"));
      return ApproxFunction::table(numbers(need(v, "values", path), field(path, "values")), tail);
    }
    if (family == "zero") return ApproxFunction::zero();
    throw ConfigError(field(path, "family"), "unknown psi family '" + family + "'");
  });
}

DimensionFunction parse_dimension(const json& v, const std::string& path) {
  const std::string family = text(need(v, "family", path), field(path, "family"));
  return build(path, [&] {
    if (family == "identity") return DimensionFunction::identity();
    if (family == "power") return DimensionFunction::power(number(need(v, "s", path), field(path, "s")));
    if (family == "table") {
      return DimensionFunction::table(numbers(need(v, "x", path), field(path, "x")),
                                      numbers(need(v, "y", path), field(path, "y")));
    }
    throw ConfigError(field(path, "family"), "unknown dimension-function family '" + family + "'");
  });
}

MeasureSpec parse_measure(const json& v, const std::string& path) {
  const std::string type = text(need(v, "type", path), field(path, "type"));
  return build(path, [&] {
    if (type == "lebesgue") return MeasureSpec::lebesgue();
    if (type == "cantor") return MeasureSpec::cantor();
    if (type == "self_similar") {
      const double base = number(need(v, "base", path), field(path, "base"));
      std::vector<unsigned> digits;
      const auto dpath = field(path, "digits");
      const auto& d = array(need(v, "digits", path), dpath);
      for (std::size_t i = 0; i < d.size(); ++i) digits.push_back(static_cast<unsigned>(count(d[i], item(dpath, i))));
      if (base < 2 || base > 1e6 || std::floor(base) != base) throw ConfigError(field(path, "base"), "expected an integer >= 2");
      return MeasureSpec::self_similar(static_cast<unsigned>(base), std::move(digits));
    }
    if (type == "atomic") {
      return MeasureSpec::atomic(numbers(need(v, "points", path), field(path, "points")),
                                 numbers(need(v, "weights", path), field(path, "weights")));
    }
    if (type == "density") {
      const auto ppath = field(path, "pieces");
      const auto& pieces = array(need(v, "pieces", path), ppath);
      std::vector<DensityPiece> out;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto ip = item(ppath, i);
        out.push_back({number(need(pieces[i], "lo", ip), field(ip, "lo")), number(need(pieces[i], "hi", ip), field(ip, "hi")),
                       numbers(need(pieces[i], "coeffs", ip), field(ip, "coeffs"))});
      }
      return MeasureSpec::density(std::move(out));
    }
    throw ConfigError(field(path, "type"), "unknown measure type '" + type + "'");
  });
}

unsigned bits_field(const json& v, unsigned fallback, const std::string& path) {
  if (!v.contains("bits")) return fallback;
  const auto b = count(v.at("bits"), field(path, "bits"));
  if (b < 64 || b > (1u << 20)) throw ConfigError(field(path, "bits"), "expected 64 <= bits <= 2^20");
  return static_cast<unsigned>(b);
}

std::vector<RealRep> parse_alpha(const json& v, std::uint64_t seed, const std::string& path) {
  const std::string source = text(need(v, "source", path), field(path, "source"));
  return build(path, [&]() -> std::vector<RealRep> {
    if (source == "rational") {
      const auto p = number(need(v, "p", path), field(path, "p"));
      const auto q = number(need(v, "q", path), field(path, "q"));
      if (std::floor(p) != p || std::floor(q) != q || std::fabs(p) >= 0x1p62 || std::fabs(q) >= 0x1p62) {
        throw ConfigError(path, "p and q must be integers below 2^62 in magnitude");
      }
      return {RealRep::rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q))};
    }
    if (source == "constant") {
      const std::string name = text(need(v, "name", path), field(path, "name"));
      const unsigned bits = bits_field(v, 256, path);
      if (name == "sqrt2-1") return {RealRep::constant(Constant::Sqrt2Minus1, bits)};
      if (name == "golden") return {RealRep::constant(Constant::GoldenFraction, bits)};
      if (name == "e-2") return {RealRep::constant(Constant::EMinus2, bits)};
      throw ConfigError(field(path, "name"), "unknown constant '" + name + "' (sqrt2-1, golden, e-2)");
    }
    if (source == "double") {
      return {RealRep::from_double(number(need(v, "value", path), field(path, "value")), bits_field(v, 64, path))};
    }
    if (source == "fixed") {
      const unsigned bits = bits_field(v, 64, path);
      mpz_class mantissa;
      const std::string hex = text(need(v, "mantissa_hex", path), field(path, "mantissa_hex"));
      if (hex.empty() || mantissa.set_str(hex, 16) != 0) throw ConfigError(field(path, "mantissa_hex"), "expected hexadecimal digits");
      const auto ulps = v.contains("error_ulps") ? count(v.at("error_ulps"), field(path, "error_ulps")) : 0;
      return {RealRep::fixed(bits, mantissa, static_cast<unsigned>(ulps))};
    }
    if (source == "sampled") {
      const auto mu = parse_measure(need(v, "measure", path), field(path, "measure"));
      const auto n = count(need(v, "count", path), field(path, "count"));
      if (n < 1 || n > 1000000) throw ConfigError(field(path, "count"), "expected 1 <= count <= 10^6");
      return sample_alpha(mu, n, seed, bits_field(v, 256, path));
    }
    throw ConfigError(field(path, "source"), "unknown alpha source '" + source + "'");
  });
}

BlockScheme parse_blocks(const json& v, const std::string& path) {
  std::vector<unsigned> exps;
  if (v.contains("exponents")) {
    const auto epath = field(path, "exponents");
    const auto& e = array(v.at("exponents"), epath);
    for (std::size_t i = 0; i < e.size(); ++i) exps.push_back(static_cast<unsigned>(std::min<std::uint64_t>(count(e[i], item(epath, i)), 1000)));
  } else {
    const auto first = count(need(v, "first", path), field(path, "first"));
    const auto n = count(need(v, "count", path), field(path, "count"));
    if (n < 1) throw ConfigError(field(path, "count"), "expected at least one block");
    if (first + n > 1000) throw ConfigError(path, "block exponents out of range");
    for (std::uint64_t k = first; k <= first + n; ++k) exps.push_back(static_cast<unsigned>(k));
  }
  if (!exps.empty() && exps.back() > 62) throw ConfigError(path, "block boundaries must stay below 2^62");
  return build(path, [&] { return BlockScheme(exps); });
}

std::vector<Window> parse_windows(const json& v, const std::string& path) {
  std::vector<Window> out;
  auto label = [](double lo, double hi) { return "[" + json(lo).dump() + "," + json(hi).dump() + ")"; };
  auto add_grid = [&](int parts) {
    for (int k = 0; k < parts; ++k) {
      const double lo = static_cast<double>(k) / parts, hi = static_cast<double>(k + 1) / parts;
      out.push_back({label(lo, hi), ArcSet::from_intervals({{lo, hi}})});
    }
  };
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "eighths") add_grid(8);
    else if (name == "quarters") add_grid(4);
    else if (name == "full") out.push_back({"full", ArcSet::full()});
    else throw ConfigError(path, "unknown window set '" + name + "' (eighths, quarters, full)");
    return out;
  }
  const auto& list = array(v, path);
  if (list.empty()) throw ConfigError(path, "expected at least one window");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto ip = item(path, i);
    if (!list[i].is_array() || list[i].size() != 2) throw ConfigError(ip, "expected [lo, hi]");
    const double lo = number(list[i][0], item(ip, 0)), hi = number(list[i][1], item(ip, 1));
    if (!(lo >= 0 && lo < hi && hi <= 1)) throw ConfigError(ip, "need 0 <= lo < hi <= 1");
    out.push_back({label(lo, hi), ArcSet::from_intervals({{lo, hi}})});
  }
  return out;
}

struct Needs {
  bool sequence = false, psi = false, alpha = false, range = false, blocks = false, schedule = false, measure = false;
};

Needs needs_for(const std::string& kind) {
  Needs n;
  if (kind == "orbit" || kind == "discrepancy") n = {true, false, true, true};
  else if (kind == "independence") n = {true, true};
  else if (kind == "chung-erdos" || kind == "moments" || kind == "equid-ratio") n = {true, true, true, false, true};
  else if (kind == "tail-union" || kind == "hit-count" || kind == "local-density") n = {true, true, true, true};
  else if (kind == "limsup-profile") n = {true, true, true, false, false, true};
  else if (kind == "separation") n = {true, false, false, true};
  else if (kind == "fourier-decay") n.measure = true;
  return n;
}

// Largest index whose orbit point the experiment will touch.
std::uint64_t max_index(const ExperimentConfig& c) {
  std::uint64_t m = 0;
  if (c.range) m = std::max(m, c.range->last);
  for (const auto& r : c.schedule) m = std::max(m, r.last);
  if (c.blocks) m = std::max(m, c.blocks->block(c.blocks->num_blocks() - 1).end - 1);
  return m;
}

}  // namespace

const std::vector<std::string>& known_kinds() {
  static const std::vector<std::string> kinds{
      "orbit",     "discrepancy",   "independence", "chung-erdos", "moments",           "tail-union", "limsup-profile",
      "hit-count", "local-density", "equid-ratio",  "critical-exponent", "separation", "fourier-decay", "jarnik-table"};
  return kinds;
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string body = buffer.str();
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("$", "empty config");
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
}

ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override) {
  const std::string root = "$";
  if (doc.is_null() || (doc.is_object() && doc.empty())) throw ConfigError(root, "empty config");
  if (!doc.is_object()) throw ConfigError(root, "expected an object");

  ExperimentConfig c;
  c.echo = doc;
  if (doc.contains("schema_version")) {
    const auto version = count(doc.at("schema_version"), "$.schema_version");
    if (version != kSchemaVersion) throw ConfigError("$.schema_version", "unsupported version " + std::to_string(version));
  }
  c.kind = text(need(doc, "kind", root), "$.kind");
  const auto& kinds = known_kinds();
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) throw ConfigError("$.kind", "unknown kind '" + c.kind + "'");
  c.id = doc.contains("id") ? text(doc.at("id"), "$.id") : c.kind;
  c.seed = doc.contains("seed") ? count(doc.at("seed"), "$.seed") : 0;
  if (seed_override) {
    c.seed = *seed_override;
    c.echo["seed"] = c.seed;
  }

  if (doc.contains("sequence")) c.sequence = parse_sequence(doc.at("sequence"), "$.sequence");
  if (doc.contains("psi")) c.psi = parse_psi(doc.at("psi"), "$.psi");
  if (doc.contains("dimension_function")) c.f = parse_dimension(doc.at("dimension_function"), "$.dimension_function");
  if (doc.contains("alpha")) c.alphas = parse_alpha(doc.at("alpha"), c.seed, "$.alpha");
  if (doc.contains("measure")) c.measure = parse_measure(doc.at("measure"), "$.measure");
  if (doc.contains("blocks")) c.blocks = parse_blocks(doc.at("blocks"), "$.blocks");
  c.windows = parse_windows(doc.contains("windows") ? doc.at("windows") : json("eighths"), "$.windows");
  if (doc.contains("schedule")) {
    const auto& s = array(doc.at("schedule"), "$.schedule");
    for (std::size_t i = 0; i < s.size(); ++i) c.schedule.push_back(index_pair(s[i], item("$.schedule", i)));
  }
  if (doc.contains("range")) c.range = index_pair(doc.at("range"), "$.range");
  if (doc.contains("tolerance")) {
    c.tolerance = number(doc.at("tolerance"), "$.tolerance");
    if (!(*c.tolerance >= 0)) throw ConfigError("$.tolerance", "expected a nonnegative number");
  }
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw ConfigError("$.params", "expected an object");
    c.params = doc.at("params");
  }

  const Needs n = needs_for(c.kind);
  if (n.sequence && !c.sequence) throw ConfigError("$.sequence", "required for kind '" + c.kind + "'");
  if (n.psi && !c.psi) throw ConfigError("$.psi", "required for kind '" + c.kind + "'");
  if (n.alpha && c.alphas.empty()) throw ConfigError("$.alpha", "required for kind '" + c.kind + "'");
  if (n.range && !c.range) throw ConfigError("$.range", "required for kind '" + c.kind + "'");
  if (n.blocks && !c.blocks) throw ConfigError("$.blocks", "required for kind '" + c.kind + "'");
  if (n.schedule && c.schedule.empty()) throw ConfigError("$.schedule", "required for kind '" + c.kind + "'");
  if (n.measure && !c.measure) throw ConfigError("$.measure", "required for kind '" + c.kind + "'");

  // Every orbit point must be certifiable before any work starts.
  if (c.sequence && !c.alphas.empty()) {
    const std::uint64_t m = max_index(c);
    if (m > 0) {
      const std::uint64_t a_max = build("$.sequence", [&] { return c.sequence->value(m); });
      for (std::size_t i = 0; i < c.alphas.size(); ++i) {
        try {
          check_precision(c.alphas[i], a_max);
        } catch (const PrecisionError& e) {
          throw ConfigError("$.alpha.bits", "precision infeasible for a_n up to " + std::to_string(a_max) +
                                                ": required " + std::to_string(e.required_bits()) +
                                                " fractional bits, available " + std::to_string(e.available_bits()));
        }
      }
    }
  }
  return c;
}

}  // namespace twisted::cli
