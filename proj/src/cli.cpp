#include "zetatail/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "zetatail/discovery.hpp"
#include "zetatail/parallel.hpp"
#include "zetatail/serialize.hpp"

namespace zetatail::cli {

using json::Json;

FloorCache::FloorCache(std::filesystem::path path, std::string policy_digest)
    : path_(std::move(path)), digest_(std::move(policy_digest)) {
  std::ifstream in(path_, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    needs_newline_ = in.eof();
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      if (j.at("policy").get<std::string>() != digest_) continue;
      entries_[{j.at("s").get<long>(), j.at("n").get<long>()}] = json::parse_integer(j.at("floor"));
    } catch (const std::exception&) {
      ++skipped_;
    }
  }
}

std::optional<Integer> FloorCache::lookup(long s, long n) const {
  std::lock_guard guard(lock_);
  auto it = entries_.find({s, n});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FloorCache::store(long s, long n, const Integer& floor) {
  Json line{{"s", s}, {"n", n}, {"policy", digest_}, {"floor", json::integer(floor)}};
  std::lock_guard guard(lock_);
  if (!entries_.emplace(std::pair{s, n}, floor).second) return;
  std::ofstream outfile(path_, std::ios::app);
  if (!outfile) throw Error("cannot append to cache " + path_.string());
  if (needs_newline_) outfile << '\n';
  needs_newline_ = false;
  outfile << line.dump() << '\n';
  outfile.flush();
}

FloorOracle FloorCache::wrap(FloorOracle inner) {
  return [this, inner = std::move(inner)](long s, long n) {
    if (auto hit = lookup(s, n)) {
      ++hits_;
      return *hit;
    }
    ++misses_;
    Integer v = inner(s, n);
    store(s, n, v);
    return v;
  };
}

namespace {

struct Globals {
  bool json = false;
  std::string cache_path;
  std::string record_path;
  std::string policy_spec;
  unsigned threads = 0;
};

struct Outcome {
  int code = ExitCode::ok;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::string text;
  /// Payload written by --out, when the command has one.
  std::optional<Json> file_payload;
  Json sidecar = Json::object();
};

struct Context {
  Globals globals;
  PrecisionPolicy policy;
  std::unique_ptr<FloorCache> cache;
  FloorOracle oracle;
};

void write_file(const std::string& path, const Json& payload) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << payload.dump(2) << '\n';
}

IntPolynomial parse_descending(const std::string& text) {
  std::vector<Integer> coefficients;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) coefficients.push_back(parse_integer(item));
  if (coefficients.empty()) throw InvalidArgument("--poly needs comma-separated coefficients");
  return IntPolynomial::from_descending(std::move(coefficients));
}

std::string class_label(long M, long b) {
  if (M == 1) return "all n";
  return "n = " + std::to_string(M) + "m + " + std::to_string(b);
}

std::string describe(const Certificate& cert) {
  const auto& cand = cert.candidate;
  std::ostringstream s;
  s << class_label(cand.modulus, cand.residue) << ": certified for m >= " << cand.k0 << " (n >= " << cand.first_n()
    << "), c = " << to_string(cand.c) << ", g by " << to_string(cert.g_sign.method) << ", h by "
    << to_string(cert.h_sign.method);
  return s.str();
}

std::string describe(long M, long b, const CertificationFailure& f) {
  std::ostringstream s;
  s << class_label(M, b) << ": FAILED at " << to_string(f.stage) << ": " << f.detail;
  if (f.witness) s << "; witness x = " << to_string(*f.witness);
  if (f.advised_k0) s << "; retry with k0 = " << *f.advised_k0;
  return s.str();
}

// floor ---------------------------------------------------------------------

struct FloorArgs {
  long s = 0;
  long n = 0;
};

Outcome cmd_floor(Context& ctx, const FloorArgs& a) {
  Outcome o;
  o.inputs = Json{{"s", a.s}, {"n", a.n}};
  TailQuery{a.s, a.n}.validate();
  const long hits_before = ctx.cache ? ctx.cache->hits() : 0;
  Integer f = ctx.oracle(a.s, a.n);
  const bool cached = ctx.cache && ctx.cache->hits() > hits_before;
  o.outputs = Json{{"floor", json::integer(f)}};
  o.sidecar["cached"] = cached;
  o.text = to_string(f) + "\n";
  return o;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  long s = 0;
  long from = 1;
  long to = 1;
};

Outcome cmd_verify(Context& ctx, const VerifyArgs& a) {
  Outcome o;
  o.inputs = Json{{"s", a.s}, {"from", a.from}, {"to", a.to}};
  VerificationReport r = verify_range(a.s, a.from, a.to, ctx.oracle, ctx.globals.threads);
  o.outputs = json::verification(r);
  std::ostringstream t;
  t << "s = " << a.s << ", n in [" << a.from << ", " << a.to << "]: " << r.mismatches.size() << " mismatches\n";
  for (const auto& m : r.mismatches) {
    t << "  n = " << m.n << ": formula " << to_string(m.formula) << ", oracle " << to_string(m.oracle) << "\n";
  }
  if (r.agreement_from) t << "agreement from n = " << *r.agreement_from << " to " << a.to << "\n";
  o.text = t.str();
  o.code = r.clean() ? ExitCode::ok : ExitCode::failed;
  return o;
}

// certify -------------------------------------------------------------------

struct CertifyArgs {
  long s = 0;
  std::optional<long> modulus;
  std::optional<long> residue;
  std::string poly;
  std::string c;
  std::optional<long> k0;
  bool search = false;
  std::string out;
};

Outcome cmd_certify(Context& ctx, const CertifyArgs& a) {
  Outcome o;
  o.inputs = Json{{"s", a.s},
                  {"modulus", a.modulus ? Json(*a.modulus) : Json(nullptr)},
                  {"residue", a.residue ? Json(*a.residue) : Json(nullptr)},
                  {"poly", a.poly.empty() ? Json(nullptr) : Json(a.poly)},
                  {"c", a.c.empty() ? Json(nullptr) : Json(a.c)},
                  {"k0", a.k0 ? Json(*a.k0) : Json(nullptr)},
                  {"search", a.search}};

  std::vector<TelescopeCandidate> candidates;
  long M = 1;
  if (!a.poly.empty()) {
    M = a.modulus.value_or(1);
    TelescopeCandidate cand{a.s, M, a.residue.value_or(0), parse_descending(a.poly),
                            a.c.empty() ? Rational(9, 10) : parse_rational(a.c), a.k0.value_or(1)};
    candidates.push_back(std::move(cand));
  } else {
    M = a.modulus.value_or(closed_form(a.s).natural_period);
    for (const auto& f : expand_to_residue_classes(a.s, M)) {
      if (a.residue && f.residue != *a.residue) continue;
      TelescopeCandidate cand = make_candidate(f);
      if (!a.c.empty()) cand.c = parse_rational(a.c);
      if (a.k0) cand.k0 = *a.k0;
      candidates.push_back(std::move(cand));
    }
    if (candidates.empty()) throw InvalidArgument("--residue must lie in [0, modulus)");
  }

  auto results = parallel_map(candidates.size(), ctx.globals.threads, [&](std::size_t i) {
    const auto& cand = candidates[i];
    CertificationOutcome outcome =
        a.search ? search_certificate(cand.s, cand.modulus, cand.residue, cand.p, cand.k0) : certify(cand);
    return ClassCertification{cand.residue, std::move(outcome)};
  });

  std::ostringstream t;
  long certified = 0;
  for (const auto& r : results) {
    if (const auto* cert = std::get_if<Certificate>(&r.outcome)) {
      ++certified;
      t << describe(*cert) << "\n";
    } else {
      t << describe(M, r.residue, std::get<CertificationFailure>(r.outcome)) << "\n";
    }
  }
  t << certified << "/" << results.size() << " classes certified\n";
  o.text = t.str();
  o.outputs = json::class_certifications(a.s, M, results);
  o.file_payload = o.outputs;
  o.code = certified == static_cast<long>(results.size()) ? ExitCode::ok : ExitCode::failed;
  return o;
}

// discover ------------------------------------------------------------------

struct DiscoverArgs {
  long s = 0;
  long l_max = 4;
  long samples = 0;
  long m_start = 20;
  long spot_checks = 100;
  bool any_modulus = false;
};

Outcome cmd_discover(Context& ctx, const DiscoverArgs& a) {
  Outcome o;
  o.inputs = Json{{"s", a.s},           {"l_max", a.l_max},           {"samples", a.samples},
                  {"m_start", a.m_start}, {"spot_checks", a.spot_checks}, {"any_modulus", a.any_modulus}};
  DiscoveryConfig cfg;
  cfg.s = a.s;
  cfg.l_max = a.l_max;
  cfg.m_samples = a.samples;
  cfg.m_start = a.m_start;
  cfg.spot_checks = a.spot_checks;
  cfg.any_modulus = a.any_modulus;
  cfg.policy = ctx.policy;
  cfg.threads = ctx.globals.threads;
  cfg.oracle = ctx.oracle;

  std::ostringstream t;
  try {
    DiscoveryResult r = discover(cfg);
    o.outputs = json::discovery(r);
    t << "s = " << r.s << ": M = " << r.modulus << ", " << r.classes.size() << "/" << r.modulus
      << " classes certified\n";
    for (const auto& c : r.classes) {
      t << "  " << class_label(r.modulus, c.formula.residue) << ": " << to_string(c.formula.polynomial, "m")
        << "  (m >= " << c.formula.k0 << ", c = " << to_string(c.formula.c) << ")\n";
    }
    for (const auto& f : r.failures) {
      t << "  " << describe(r.modulus, f.residue, f.failure) << "\n";
      t << "    fitted " << to_string(f.polynomial, "m") << "\n";
    }
    if (r.failures.empty()) {
      t << "certified for n >= " << r.certified_from_n << ", oracle agreement from n = " << r.verified_from_n << "\n";
      t << "spot checks: " << (r.spot_checks_run - static_cast<long>(r.spot_check_failures.size())) << "/"
        << r.spot_checks_run << "\n";
    }
    for (const auto& at : r.attempts) {
      if (at.certified) continue;
      t << "  M = " << at.modulus << " rejected";
      if (at.residue) t << " at residue " << *at.residue;
      t << ": " << at.detail << "\n";
    }
    o.code = r.complete() ? ExitCode::ok : ExitCode::failed;
  } catch (const NoModulusFound& e) {
    Json attempts = Json::array();
    for (const auto& at : e.attempts()) attempts.push_back(json::modulus_attempt(at));
    o.outputs = Json{{"schema", "zetatail.discovery/" + std::to_string(json::kSchemaVersion)},
                     {"s", a.s},
                     {"no_modulus_found", true},
                     {"attempts", attempts}};
    t << e.what() << "\n";
    for (const auto& at : e.attempts()) {
      t << "  M = " << at.modulus << " rejected at residue " << at.residue.value_or(-1) << ": " << at.detail << "\n";
    }
    o.code = ExitCode::failed;
  }
  o.text = t.str();
  o.file_payload = o.outputs;
  return o;
}

// expand / export -----------------------------------------------------------

struct ExpandArgs {
  long s = 0;
  std::optional<long> modulus;
};

Outcome cmd_expand(const ExpandArgs& a) {
  Outcome o;
  const long M = a.modulus.value_or(closed_form(a.s).natural_period);
  o.inputs = Json{{"s", a.s}, {"modulus", M}};
  std::ostringstream t;
  try {
    auto classes = expand_to_residue_classes(a.s, M);
    o.outputs = json::residue_classes(a.s, M, classes);
    for (const auto& c : classes) {
      t << class_label(M, c.residue) << ": " << to_string(c.polynomial, "m") << "  (m >= " << c.k0 << ")\n";
    }
  } catch (const PeriodMismatch& e) {
    o.outputs = Json{{"schema", "zetatail.expansion/" + std::to_string(json::kSchemaVersion)},
                     {"s", a.s},
                     {"modulus", M},
                     {"period_mismatch", Json{{"residue", e.residue()}, {"detail", e.what()}}}};
    t << e.what() << "\n";
    o.code = ExitCode::failed;
  }
  o.text = t.str();
  o.file_payload = o.outputs;
  return o;
}

Outcome cmd_export(std::optional<long> s) {
  Outcome o;
  o.inputs = Json{{"s", s ? Json(*s) : Json(nullptr)}};
  if (s) {
    o.outputs = Json{{"schema", "zetatail.catalog/" + std::to_string(json::kSchemaVersion)},
                     {"forms", Json::array({json::closed_form(closed_form(*s))})}};
  } else {
    o.outputs = json::catalog();
  }
  o.text = o.outputs.dump(2) + "\n";
  o.file_payload = o.outputs;
  return o;
}

// recheck -------------------------------------------------------------------

Outcome cmd_recheck(const std::string& path) {
  Outcome o;
  o.inputs = Json{{"in", path}};
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + " is not JSON: " + e.what());
  }
  std::vector<Json> items;
  if (doc.contains("candidate")) {
    items.push_back(doc);
  } else if (doc.contains("certificates")) {
    for (const auto& c : doc.at("certificates")) items.push_back(c);
  } else if (doc.contains("classes")) {
    for (const auto& c : doc.at("classes")) items.push_back(c);
  } else {
    throw InvalidArgument(path + " holds no certificates");
  }
  Json problems = Json::array();
  std::ostringstream t;
  for (const auto& item : items) {
    Certificate cert = json::parse_certificate(item);
    if (auto problem = recheck(cert)) {
      problems.push_back(Json{{"residue", cert.candidate.residue}, {"problem", *problem}});
      t << class_label(cert.candidate.modulus, cert.candidate.residue) << ": " << *problem << "\n";
    }
  }
  t << (items.size() - problems.size()) << "/" << items.size() << " certificates hold\n";
  o.outputs = Json{{"checked", items.size()}, {"problems", problems}};
  o.text = t.str();
  o.code = problems.empty() ? ExitCode::ok : ExitCode::failed;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact floors of reciprocal zeta tails, with certified closed forms"};
  app.name("zetatail");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON run record instead of text");
  app.add_option("--cache", g.cache_path, "Line-delimited JSON floor cache (created if missing)");
  app.add_option("--record", g.record_path, "Append the run record and timing as one JSON line");
  app.add_option("--policy", g.policy_spec, "Precision policy, e.g. em_order=6,max_cut=5000");
  app.add_option("--threads", g.threads, "Worker threads (0: one per core)");
  app.set_version_flag("--version", std::string(ZETATAIL_VERSION));

  FloorArgs floor_args;
  auto* floor_cmd = app.add_subcommand("floor", "floor(1/sum_{k>=n} k^-s)");
  floor_cmd->add_option("--s", floor_args.s, "Exponent s >= 2")->required();
  floor_cmd->add_option("--n", floor_args.n, "Start of the tail, n >= 1")->required();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Compare a catalog closed form with the oracle over a range");
  verify_cmd->add_option("--s", verify_args.s, "Exponent in the catalog (2..6)")->required();
  verify_cmd->add_option("--from", verify_args.from, "First n")->required();
  verify_cmd->add_option("--to", verify_args.to, "Last n")->required();

  CertifyArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Certify residue-class formulas by telescoping");
  certify_cmd->add_option("--s", certify_args.s, "Exponent s")->required();
  certify_cmd->add_option("--modulus", certify_args.modulus, "Modulus M (default: the closed form's period)");
  certify_cmd->add_option("--residue", certify_args.residue, "Only this residue class");
  certify_cmd->add_option("--poly", certify_args.poly, "Candidate p, coefficients highest degree first, comma separated");
  certify_cmd->add_option("--c", certify_args.c, "Comparison constant, e.g. 9/10 or 0.99");
  certify_cmd->add_option("--k0", certify_args.k0, "First m of the ray");
  certify_cmd->add_flag("--search", certify_args.search, "Search the c ladder and raise k0 on failure");
  certify_cmd->add_option("--out", certify_args.out, "Write the certificates as JSON");

  DiscoverArgs discover_args;
  std::string discover_out;
  auto* discover_cmd = app.add_subcommand("discover", "Search moduli M = l(s-2) for certified class polynomials");
  discover_cmd->add_option("--s", discover_args.s, "Exponent s")->required();
  discover_cmd->add_option("--l-max", discover_args.l_max, "Largest multiplier l")->capture_default_str();
  discover_cmd->add_option("--samples", discover_args.samples, "Samples per class (0: max(2s, s+3))");
  discover_cmd->add_option("--m-start", discover_args.m_start, "First sampled m")->capture_default_str();
  discover_cmd->add_option("--spot-checks", discover_args.spot_checks, "Random oracle checks")->capture_default_str();
  discover_cmd->add_flag("--any-modulus", discover_args.any_modulus, "Try every M <= l-max, not only multiples of s-2");
  discover_cmd->add_option("--out", discover_out, "Write the result as JSON");

  ExpandArgs expand_args;
  std::string expand_out;
  auto* expand_cmd = app.add_subcommand("expand", "Rewrite a catalog closed form as one polynomial per residue class");
  expand_cmd->add_option("--s", expand_args.s, "Exponent in the catalog")->required();
  expand_cmd->add_option("--modulus", expand_args.modulus, "Modulus M (default: the closed form's period)");
  expand_cmd->add_option("--out", expand_out, "Write the classes as JSON");

  std::optional<long> export_s;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export", "Print the closed-form catalog as JSON");
  export_cmd->add_option("--s", export_s, "Only this exponent");
  export_cmd->add_option("--out", export_out, "Write to a file instead of stdout");

  std::string recheck_in;
  auto* recheck_cmd = app.add_subcommand("recheck", "Re-verify certificates from a JSON file");
  recheck_cmd->add_option("--in", recheck_in, "Certificate, certify or discover output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  const auto started = std::chrono::steady_clock::now();
  Context ctx;
  ctx.globals = g;
  Outcome o;
  std::string out_path;
  try {
    ctx.policy = PrecisionPolicy::parse(g.policy_spec, PrecisionPolicy::from_environment());
    ctx.oracle = direct_oracle(ctx.policy);
    if (!g.cache_path.empty()) {
      ctx.cache = std::make_unique<FloorCache>(g.cache_path, ctx.policy.digest());
      ctx.oracle = ctx.cache->wrap(ctx.oracle);
    }
    if (*floor_cmd) {
      o = cmd_floor(ctx, floor_args);
    } else if (*verify_cmd) {
      o = cmd_verify(ctx, verify_args);
    } else if (*certify_cmd) {
      o = cmd_certify(ctx, certify_args);
      out_path = certify_args.out;
    } else if (*discover_cmd) {
      o = cmd_discover(ctx, discover_args);
      out_path = discover_out;
    } else if (*expand_cmd) {
      o = cmd_expand(expand_args);
      out_path = expand_out;
    } else if (*export_cmd) {
      o = cmd_export(export_s);
      out_path = export_out;
      if (!out_path.empty()) o.text.clear();
    } else if (*recheck_cmd) {
      o = cmd_recheck(recheck_in);
    }
    if (!out_path.empty() && o.file_payload) write_file(out_path, *o.file_payload);
  } catch (const AmbiguousFloor& e) {
    err << "zetatail: " << e.what() << "\n";
    return ExitCode::ambiguous;
  } catch (const InvalidArgument& e) {
    err << "zetatail: " << e.what() << "\n";
    return ExitCode::usage;
  } catch (const std::exception& e) {
    err << "zetatail: " << e.what() << "\n";
    return ExitCode::failed;
  }

  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  Json sidecar = o.sidecar;
  sidecar["elapsed_ms"] = elapsed_ms;
  if (ctx.cache) {
    sidecar["cache"] = Json{{"path", ctx.cache->path().string()},
                            {"hits", ctx.cache->hits()},
                            {"misses", ctx.cache->misses()},
                            {"skipped_lines", ctx.cache->skipped_lines()}};
  }
  o.inputs["policy"] = ctx.policy.canonical();
  Json record{{"schema", "zetatail.run/" + std::to_string(json::kSchemaVersion)},
              {"version", ZETATAIL_VERSION},
              {"command", args},
              {"inputs", o.inputs},
              {"outputs", o.outputs},
              {"exit_code", o.code}};

  if (g.json) {
    out << record.dump(2) << "\n";
    err << Json{{"sidecar", sidecar}}.dump() << "\n";
  } else {
    out << o.text;
    if (sidecar.value("cached", false)) err << "(cached)\n";
  }
  if (!g.record_path.empty()) {
    std::ofstream rec(g.record_path, std::ios::app);
    if (!rec) {
      err << "zetatail: cannot append to " << g.record_path << "\n";
      return ExitCode::failed;
    }
    rec << Json{{"record", record}, {"sidecar", sidecar}}.dump() << "\n";
  }
  return o.code;
}

}  // namespace zetatail::cli
