#include "twisted_cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <ostream>

#include "twisted_cli/config.hpp"
#include "twisted_cli/runner.hpp"

namespace twisted::cli {

namespace {

using json = nlohmann::json;

struct Common {
  std::uint64_t seed = 0;
  std::string out_dir = "twisted-out";
  unsigned threads = 1;
  bool assert_verdicts = false;
};

struct InlineFlags {
  std::string id, alpha, seq, psi, f, range, blocks, windows, schedule, measure;
  unsigned bits = 0;
  std::uint64_t samples = 1;
  double tolerance = 0.0;
  std::vector<std::string> params;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

double to_number(const std::string& s, const std::string& flag) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ConfigError(flag, "'" + s + "' is not a number");
  return v;
}

std::uint64_t to_count(const std::string& s, const std::string& flag) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    // Accept integral scientific notation such as 1e5.
    const double d = to_number(s, flag);
    if (!(d >= 0 && d < 0x1p63 && d == static_cast<double>(static_cast<std::uint64_t>(d)))) {
      throw ConfigError(flag, "'" + s + "' is not a nonnegative integer");
    }
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

std::vector<double> number_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_number(p, flag));
  return out;
}

json pair_flag(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError(flag, "expected first:last, got '" + s + "'");
  return json::array({to_count(parts[0], flag), to_count(parts[1], flag)});
}

json sequence_flag(const std::string& s) {
  const auto p = split(s, ':');
  if (p[0] == "poly" && p.size() == 3) return {{"family", "polynomial"}, {"c", to_number(p[1], "--seq")}, {"degree", to_count(p[2], "--seq")}};
  if (p[0] == "geom" && p.size() == 3) return {{"family", "geometric"}, {"q", to_number(p[1], "--seq")}, {"r", to_number(p[2], "--seq")}};
  if (p[0] == "table" && p.size() == 2) {
    json values = json::array();
    for (const auto& v : split(p[1], ',')) values.push_back(to_count(v, "--seq"));
    return {{"family", "table"}, {"values", values}};
  }
  throw ConfigError("--seq", "expected poly:c:d, geom:q:r or table:v1,v2,...; got '" + s + "'");
}

json psi_flag(const std::string& s) {
  const auto p = split(s, ':');
  if (p[0] == "power" && p.size() == 2) return {{"family", "power"}, {"sigma", to_number(p[1], "--psi")}};
  if (p[0] == "power-log" && p.size() == 3) {
    return {{"family", "power_log"}, {"sigma", to_number(p[1], "--psi")}, {"beta", to_number(p[2], "--psi")}};
  }
  if (p[0] == "exp" && p.size() == 2) return {{"family", "exponential"}, {"rate", to_number(p[1], "--psi")}};
  if (p[0] == "zero" && p.size() == 1) return {{"family", "zero"}};
  if (p[0] == "table" && p.size() == 2) return {{"family", "table"}, {"values", number_list(p[1], "--psi")}};
  throw ConfigError("--psi", "expected power:s, power-log:s:b, exp:r, zero or table:v1,...; got '" + s + "'");
}

json dimension_flag(const std::string& s) {
  const auto p = split(s, ':');
  if (p[0] == "identity" && p.size() == 1) return {{"family", "identity"}};
  if (p[0] == "power" && p.size() == 2) return {{"family", "power"}, {"s", to_number(p[1], "--f")}};
  throw ConfigError("--f", "expected identity or power:s; got '" + s + "'");
}

json measure_flag(const std::string& s) {
  const auto p = split(s, ':');
  if (p[0] == "lebesgue" && p.size() == 1) return {{"type", "lebesgue"}};
  if (p[0] == "cantor" && p.size() == 1) return {{"type", "cantor"}};
  if (p[0] == "atomic" && p.size() == 2) return {{"type", "atomic"}, {"points", json::array({to_number(p[1], "--measure")})}, {"weights", json::array({1.0})}};
  if (p[0] == "self-similar" && p.size() == 3) {
    json digits = json::array();
    for (const auto& d : split(p[2], ',')) digits.push_back(to_count(d, "--measure"));
    return {{"type", "self_similar"}, {"base", to_count(p[1], "--measure")}, {"digits", digits}};
  }
  throw ConfigError("--measure", "expected lebesgue, cantor, atomic:x or self-similar:base:d1,d2; got '" + s + "'");
}

json alpha_flag(const InlineFlags& in) {
  const std::string& s = in.alpha;
  json a;
  if (s == "sqrt2-1" || s == "golden" || s == "e-2") {
    a = {{"source", "constant"}, {"name", s}};
  } else if (s == "sample") {
    a = {{"source", "sampled"}, {"measure", measure_flag(in.measure.empty() ? "lebesgue" : in.measure)}, {"count", in.samples}};
  } else if (s.find('/') != std::string::npos) {
    const auto p = split(s, '/');
    if (p.size() != 2) throw ConfigError("--alpha", "expected p/q; got '" + s + "'");
    a = {{"source", "rational"}, {"p", to_number(p[0], "--alpha")}, {"q", to_number(p[1], "--alpha")}};
  } else {
    a = {{"source", "double"}, {"value", to_number(s, "--alpha")}};
  }
  if (in.bits != 0 && a["source"] != "rational") a["bits"] = in.bits;
  return a;
}

json inline_config(const std::string& kind, const InlineFlags& in, const CLI::App& sub) {
  json doc = {{"schema_version", kSchemaVersion}, {"kind", kind}};
  if (!in.id.empty()) doc["id"] = in.id;
  if (!in.seq.empty()) doc["sequence"] = sequence_flag(in.seq);
  if (!in.psi.empty()) doc["psi"] = psi_flag(in.psi);
  if (!in.f.empty()) doc["dimension_function"] = dimension_flag(in.f);
  if (!in.alpha.empty()) doc["alpha"] = alpha_flag(in);
  if (!in.measure.empty() && kind == "fourier-decay") doc["measure"] = measure_flag(in.measure);
  if (!in.range.empty()) doc["range"] = pair_flag(in.range, "--range");
  if (!in.blocks.empty()) {
    const auto b = pair_flag(in.blocks, "--blocks");
    const auto first = b[0].get<std::uint64_t>(), last = b[1].get<std::uint64_t>();
    if (last < first) throw ConfigError("--blocks", "expected first:last with first <= last");
    doc["blocks"] = {{"first", first}, {"count", last - first + 1}};
  }
  if (!in.windows.empty()) doc["windows"] = in.windows;
  if (!in.schedule.empty()) {
    json s = json::array();
    for (const auto& w : split(in.schedule, ',')) s.push_back(pair_flag(w, "--schedule"));
    doc["schedule"] = s;
  }
  if (sub.count("--tolerance") > 0) doc["tolerance"] = in.tolerance;
  json params = json::object();
  for (const auto& kv : in.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param", "expected key=value; got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    const json parsed = json::parse(value, nullptr, false);
    params[kv.substr(0, eq)] = parsed.is_discarded() ? json(value) : parsed;
  }
  if (!params.empty()) doc["params"] = params;
  return doc;
}

void add_common(CLI::App& sub, Common& common) {
  sub.add_option("--seed", common.seed, "Seed for every random stream (overrides the config)");
  sub.add_option("--out", common.out_dir, "Output directory for report.json and CSV tables")->capture_default_str();
  sub.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  sub.add_flag("--assert", common.assert_verdicts, "Exit with status 3 when any verdict fails");
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shrinking-target experiments on the circle", "twisted-targets"};
  app.require_subcommand(1);
  Common common;
  InlineFlags flags;
  std::string config_path;

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  add_common(*run_cmd, common);

  std::vector<std::pair<std::string, CLI::App*>> kind_cmds;
  for (const auto& kind : known_kinds()) {
    auto* sub = app.add_subcommand(kind, "Run a '" + kind + "' experiment from inline flags");
    add_common(*sub, common);
    sub->add_option("--id", flags.id, "Experiment id");
    sub->add_option("--alpha", flags.alpha, "p/q, sqrt2-1, golden, e-2, a decimal, or 'sample'");
    sub->add_option("--bits", flags.bits, "Fractional bits for alpha");
    sub->add_option("--samples", flags.samples, "Number of sampled alphas");
    sub->add_option("--measure", flags.measure, "lebesgue, cantor, atomic:x, self-similar:base:d1,d2");
    sub->add_option("--seq", flags.seq, "poly:c:d, geom:q:r, table:v1,v2,...");
    sub->add_option("--psi", flags.psi, "power:s, power-log:s:b, exp:r, zero, table:v1,...");
    sub->add_option("--f", flags.f, "Dimension function: identity or power:s");
    sub->add_option("--range", flags.range, "Index range first:last");
    sub->add_option("--blocks", flags.blocks, "Dyadic block exponents first:last");
    sub->add_option("--windows", flags.windows, "eighths, quarters or full");
    sub->add_option("--schedule", flags.schedule, "Windows N:M,N:M,...");
    sub->add_option("--tolerance", flags.tolerance, "Verdict tolerance");
    sub->add_option("--param", flags.params, "Kind-specific key=value (value parsed as JSON when possible)");
    kind_cmds.emplace_back(kind, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfig;
  }

  try {
    json doc;
    if (run_cmd->parsed()) {
      doc = load_config_file(config_path);
    } else {
      const auto it = std::find_if(kind_cmds.begin(), kind_cmds.end(), [](const auto& k) { return k.second->parsed(); });
      doc = inline_config(it->first, flags, *it->second);
    }
    std::optional<std::uint64_t> seed;
    for (auto* sub : app.get_subcommands()) {
      if (sub->count("--seed") > 0) seed = common.seed;
    }
    const auto config = parse_config(doc, seed);
    const auto report = run(config, common.threads);
    write_outputs(report, common.out_dir);
    for (const auto& v : report.verdicts) out << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
    out << "wrote " << (std::filesystem::path(common.out_dir) / "report.json").string() << '\n';
    if (common.assert_verdicts && !report.all_pass()) return kVerdict;
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace twisted::cli
