#include "padic_beta/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

namespace padic_beta::cli {

using nlohmann::json;

namespace {

constexpr int kDecided = 0;
constexpr int kInputError = 1;
constexpr int kUndecided = 2;

struct Report {
  json body;
  int exit_code = kDecided;
};

// Integers become JSON numbers when they fit a long, strings otherwise.
json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return to_string(x);
}

json rationals_json(const std::vector<QRational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json int_vec_json(const IntVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

json int_vecs_json(const std::vector<IntVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(int_vec_json(v));
  return out;
}

// Field accessors on an inputs block; type errors surface as input errors.
const json& field(const json& in, const char* key) {
  if (!in.contains(key)) {
    throw std::invalid_argument(std::string("inputs: missing field \"") + key +
                                "\"");
  }
  return in.at(key);
}

std::vector<QRational> rational_list(const json& in, const char* key) {
  const json& v = field(in, key);
  if (!v.is_array()) {
    throw std::invalid_argument(std::string("inputs: \"") + key +
                                "\" must be an array of rational strings");
  }
  std::vector<QRational> out;
  for (const auto& x : v) {
    if (!x.is_string()) {
      throw std::invalid_argument(std::string("inputs: \"") + key +
                                  "\" entries must be strings");
    }
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

IntVec integer_list(const json& in, const char* key) {
  IntVec out;
  for (const QRational& q : rational_list(in, key)) {
    if (q.get_den() != 1) {
      throw std::invalid_argument(std::string("\"") + key +
                                  "\" entries must be integers, got " +
                                  to_string(q));
    }
    out.push_back(q.get_num());
  }
  return out;
}

std::size_t count(const json& in, const char* key) {
  const json& v = field(in, key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    throw std::invalid_argument(std::string("inputs: \"") + key +
                                "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

Prime prime(const json& in) {
  const json& v = field(in, "p");
  if (!v.is_number_unsigned()) {
    throw std::invalid_argument("p must be a positive integer");
  }
  return Prime(v.get<std::uint64_t>());
}

MinPoly minpoly(const json& in) {
  return MinPoly(prime(in), rational_list(in, "a"));
}

// ---------------------------------------------------------------- jobs --

Report job_np(const json& in) {
  const ValuatedPolynomial f{prime(in), rational_list(in, "coeffs")};
  const NewtonPolygon poly = newton_polygon(f);
  Report r;
  r.body["segments"] = json::array();
  for (const auto& s : poly.segments) {
    r.body["segments"].push_back(
        {{"slope", to_string(s.slope)}, {"length", s.length}});
  }
  r.body["vertices"] = json::array();
  for (const auto& v : poly.vertices) r.body["vertices"].push_back({v.x, v.y});
  r.body["root_valuations"] = json::array();
  for (const auto& rv : root_valuations(f)) {
    r.body["root_valuations"].push_back(
        {{"valuation", to_string(rv.valuation)},
         {"multiplicity", rv.multiplicity}});
  }
  return r;
}

Report job_classify(const json& in) {
  const MinPoly m = minpoly(in);
  const PcVerdict v = classify(m);
  Report r;
  r.body["class"] = to_string(v.cls);
  r.body["vp_beta"] = v.vp_beta ? json(*v.vp_beta) : json(nullptr);
  r.body["digit_set_size"] =
      v.cls == PcClass::neither || !v.vp_beta
          ? json(nullptr)
          : integer_json(m.prime().power(static_cast<unsigned long>(-*v.vp_beta)));
  r.body["region"] = to_string(v.region);
  r.body["certified"] = v.certified;
  r.body["irreducibility"] = v.irreducibility;
  r.body["notes"] = v.notes;
  return r;
}

Report job_digits(const json& in) {
  const MinPoly m = minpoly(in);
  const std::size_t precision = count(in, "precision");
  const auto M = static_cast<long>(precision);
  const QRational b = beta_digits(m, M);
  const long lo = std::min(-1L, vp(b, m.prime()).value());
  Report r;
  r.body["digits"] = format_digit_window(padic_digits(b, m.prime(), lo, M - 1), lo);
  r.body["value"] = to_string(b);
  r.body["lowest_position"] = lo;
  return r;
}

Report job_expand(const json& in) {
  const ContextPtr ctx = BetaContext::create(minpoly(in));
  const BetaElement z =
      BetaElement::from_coords(ctx, rational_list(in, "element"));
  const std::size_t steps = count(in, "max_steps");
  const ExpansionRecord rec = expand(z, steps);
  Report r;
  r.body["verdict"] = to_string(rec.verdict);
  r.body["preperiod"] = rec.preperiod;
  r.body["period"] = rec.period;
  r.body["digits"] = rationals_json(rec.digits);
  r.body["prepoint_digits"] = rationals_json(rec.prepoint_digits);
  r.body["steps"] = rec.steps;
  r.body["scale"] = rec.scale;
  if (ctx->base_class() == PcClass::sc) {
    r.body["notes"] = {"SC base: termination is not guaranteed"};
  }
  const json& k = field(in, "verify");
  if (!k.is_number_unsigned()) {
    throw std::invalid_argument("inputs: \"verify\" must be a nonnegative integer");
  }
  if (k.get<std::size_t>() > 0) {
    const VerifyResult vr = verify_expansion(z, rec, k.get<std::size_t>());
    r.body["verify"] = {{"ok", vr.ok},
                        {"failing_k", vr.failing_k ? json(*vr.failing_k)
                                                   : json(nullptr)}};
    if (!vr.ok) {
      throw std::logic_error("expansion failed verification at k = " +
                             std::to_string(*vr.failing_k));
    }
  }
  if (rec.verdict == ExpansionVerdict::budget_exceeded) r.exit_code = kUndecided;
  return r;
}

Report job_srs_orbit(const json& in) {
  const SrsParameter rr = rational_list(in, "r");
  const IntVec z = integer_list(in, "z");
  const std::string map = field(in, "map").get<std::string>();
  if (map != "tilde" && map != "ceil") {
    throw std::invalid_argument("map must be tilde or ceil, got " + map);
  }
  const OrbitResult o = orbit(map == "tilde" ? SrsMap::tilde : SrsMap::ceil, rr,
                              z, count(in, "cap"));
  Report r;
  r.body["result"] = to_string(o.kind);
  r.body["steps"] = o.steps;
  r.body["cycle_length"] = o.cycle_length;
  r.body["cycle"] = int_vecs_json(o.cycle);
  if (o.kind == OrbitResult::Kind::cap_exceeded) r.exit_code = kUndecided;
  return r;
}

json srs_json(const SrsVerdict& v) {
  json out;
  out["status"] = to_string(v.status);
  out["witness_set_size"] = v.witness_set_size;
  out["max_orbit_length"] = v.max_orbit_length;
  if (v.witness) {
    out["witness"] = int_vecs_json(v.witness->states);
    out["witness_kind"] =
        v.witness->kind == SrsWitness::Kind::cycle ? "cycle" : "escape";
    out["witness_start"] = int_vec_json(v.witness->start);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Report job_srs_d0(const json& in) {
  const SrsVerdict v = d0_test(rational_list(in, "r"), count(in, "witness_cap"),
                               count(in, "orbit_cap"));
  Report r;
  r.body = srs_json(v);
  if (v.status == SrsStatus::unknown) r.exit_code = kUndecided;
  return r;
}

Report job_fin_check(const json& in) {
  Caps caps;
  caps.orbit = count(in, "orbit_cap");
  caps.witness = count(in, "witness_cap");
  const FinVerdict v = fin_certify(minpoly(in), caps);
  Report r;
  r.body["status"] = to_string(v.status);
  r.body["reason"] = v.reason.empty() ? json(nullptr) : json(v.reason);
  r.body["class"] = to_string(v.classification.cls);
  r.body["witness"] =
      v.witness_element ? rationals_json(*v.witness_element) : json(nullptr);
  r.body["srs"] = v.srs ? srs_json(*v.srs) : json(nullptr);
  if (v.status == FinStatus::unknown) r.exit_code = kUndecided;
  return r;
}

Report job_raster(const json& in, std::size_t threads) {
  const std::vector<QRational> b = rational_list(in, "box");
  if (b.size() != 4) throw std::invalid_argument("box needs x0,x1,y0,y1");
  const RasterBox box{b[0], b[1], b[2], b[3]};
  const std::size_t w = count(in, "width");
  const std::size_t h = count(in, "height");
  const auto grid = raster_d20(box, w, h, count(in, "witness_cap"),
                               count(in, "orbit_cap"), threads);
  write_pgm(field(in, "out").get<std::string>(), grid, w, h);
  std::size_t counts[3] = {0, 0, 0};
  for (SrsStatus s : grid) ++counts[static_cast<int>(s)];
  Report r;
  r.body["member"] = counts[static_cast<int>(SrsStatus::member)];
  r.body["non_member"] = counts[static_cast<int>(SrsStatus::non_member)];
  r.body["unknown"] = counts[static_cast<int>(SrsStatus::unknown)];
  return r;
}

Report run_job(const json& in, std::size_t threads) {
  if (!in.is_object()) throw std::invalid_argument("inputs must be an object");
  const std::string cmd = field(in, "command").get<std::string>();
  Report r;
  if (cmd == "np") {
    r = job_np(in);
  } else if (cmd == "classify") {
    r = job_classify(in);
  } else if (cmd == "digits") {
    r = job_digits(in);
  } else if (cmd == "expand") {
    r = job_expand(in);
  } else if (cmd == "srs-orbit") {
    r = job_srs_orbit(in);
  } else if (cmd == "srs-d0") {
    r = job_srs_d0(in);
  } else if (cmd == "fin-check") {
    r = job_fin_check(in);
  } else if (cmd == "raster") {
    r = job_raster(in, threads);
  } else {
    throw std::invalid_argument("unknown command " + cmd);
  }
  r.body["inputs"] = in;
  return r;
}

int emit(const json& in, std::size_t threads, std::ostream& out,
         std::ostream& err) {
  try {
    const Report r = run_job(in, threads);
    out << r.body.dump(2) << "\n";
    return r.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: malformed inputs: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
  }
  return kInputError;
}

// Canonical string list for the inputs block: "a/b" in lowest terms.
json canonical_list(const std::string& text) {
  return rationals_json(parse_rational_list(text));
}

std::size_t parse_count(const std::string& s, std::size_t& pos_out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("PADIC_BETA_DEFAULT_CAPS: not a positive integer: \"" +
                                s + "\"");
  }
  pos_out = std::stoull(s);
  if (pos_out == 0) {
    throw std::invalid_argument("PADIC_BETA_DEFAULT_CAPS: caps must be positive");
  }
  return pos_out;
}

}  // namespace

Caps default_caps() {
  Caps caps;
  const char* env = std::getenv("PADIC_BETA_DEFAULT_CAPS");
  if (env == nullptr || *env == '\0') return caps;
  std::vector<std::string> parts;
  std::stringstream ss(env);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) {
    throw std::invalid_argument(
        "PADIC_BETA_DEFAULT_CAPS must be \"orbit,witness,steps\"");
  }
  parse_count(parts[0], caps.orbit);
  parse_count(parts[1], caps.witness);
  parse_count(parts[2], caps.steps);
  return caps;
}

int replay(const std::string& json_text, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    err << "error: cannot parse JSON: " << e.what() << "\n";
    return kInputError;
  }
  if (doc.is_object() && doc.contains("inputs")) doc = doc["inputs"];
  return emit(doc, 0, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Caps caps;
  try {
    caps = default_caps();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"p-adic beta-expansions, PC classification and SRS tests",
               "padic-beta"};
  app.require_subcommand(1);

  std::uint64_t p = 0;
  std::string coeffs, a, element, r_text, z_text, map = "tilde", out_path,
                                                  box = "-1,1,-2,2";
  std::size_t precision = 0, max_steps = caps.steps, verify = 0,
              cap = caps.orbit, witness_cap = caps.witness,
              orbit_cap = caps.orbit, width = 201, height = 201, threads = 0;
  std::string replay_file;
  json inputs;

  auto* np = app.add_subcommand("np", "Newton polygon of c0 + c1 x + ... + cm x^m");
  np->add_option("--p", p, "prime")->required();
  np->add_option("--coeffs", coeffs, "c0,...,cm")->required();

  const char* a_help =
      "a1,...,an for x^n - a1 x^(n-1) - ... - an (note the signs)";
  auto* cls = app.add_subcommand("classify", "PC / SC / neither");
  cls->add_option("--p", p, "prime")->required();
  cls->add_option("--a", a, a_help)->required();

  auto* dig = app.add_subcommand("digits", "p-adic digits of the dominant root");
  dig->add_option("--p", p, "prime")->required();
  dig->add_option("--a", a, a_help)->required();
  dig->add_option("--precision", precision, "digits above the point")->required();

  auto* exp = app.add_subcommand("expand", "beta-expansion of an element");
  exp->add_option("--p", p, "prime")->required();
  exp->add_option("--a", a, a_help)->required();
  exp->add_option("--element", element, "c0,...,c(n-1) in the power basis")
      ->required();
  exp->add_option("--max-steps", max_steps, "step budget");
  exp->add_option("--verify", verify, "check residuals up to K digits");

  auto* orb = app.add_subcommand("srs-orbit", "orbit of a shift radix system");
  orb->add_option("--r", r_text, "r1,...,rn")->required();
  orb->add_option("--z", z_text, "z1,...,zn")->required();
  orb->add_option("--map", map, "tilde or ceil")
      ->check(CLI::IsMember({"tilde", "ceil"}));
  orb->add_option("--cap", cap, "step cap");

  auto* d0 = app.add_subcommand("srs-d0", "do all orbits reach zero");
  d0->add_option("--r", r_text, "r1,...,rn")->required();
  d0->add_option("--witness-cap", witness_cap, "witness set size cap");
  d0->add_option("--orbit-cap", orbit_cap, "orbit length cap");

  auto* fin = app.add_subcommand("fin-check", "finiteness property");
  fin->add_option("--p", p, "prime")->required();
  fin->add_option("--a", a, a_help)->required();
  fin->add_option("--witness-cap", witness_cap, "witness set size cap");
  fin->add_option("--orbit-cap", orbit_cap, "orbit length cap");

  auto* ras = app.add_subcommand("raster", "PGM picture of the zero-orbit region");
  ras->add_option("--out", out_path, "output .pgm")->required();
  ras->add_option("--width", width, "pixels");
  ras->add_option("--height", height, "pixels");
  ras->add_option("--box", box, "x0,x1,y0,y1");
  ras->add_option("--witness-cap", witness_cap, "witness set size cap");
  ras->add_option("--orbit-cap", orbit_cap, "orbit length cap");
  ras->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* rep = app.add_subcommand("replay", "re-run a report's inputs block");
  rep->add_option("file", replay_file, "JSON file, - for stdin")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kDecided;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (rep->parsed()) {
    std::string text;
    if (replay_file == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream f(replay_file);
      if (!f) {
        err << "error: cannot open " << replay_file << "\n";
        return kInputError;
      }
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    return replay(text, out, err);
  }

  try {
    if (np->parsed()) {
      inputs = {{"command", "np"}, {"p", p}, {"coeffs", canonical_list(coeffs)}};
    } else if (cls->parsed()) {
      inputs = {{"command", "classify"}, {"p", p}, {"a", canonical_list(a)}};
    } else if (dig->parsed()) {
      inputs = {{"command", "digits"},
                {"p", p},
                {"a", canonical_list(a)},
                {"precision", precision}};
    } else if (exp->parsed()) {
      inputs = {{"command", "expand"},        {"p", p},
                {"a", canonical_list(a)},     {"element", canonical_list(element)},
                {"max_steps", max_steps},     {"verify", verify}};
    } else if (orb->parsed()) {
      inputs = {{"command", "srs-orbit"}, {"r", canonical_list(r_text)},
                {"z", canonical_list(z_text)}, {"map", map}, {"cap", cap}};
    } else if (d0->parsed()) {
      inputs = {{"command", "srs-d0"},
                {"r", canonical_list(r_text)},
                {"witness_cap", witness_cap},
                {"orbit_cap", orbit_cap}};
    } else if (fin->parsed()) {
      inputs = {{"command", "fin-check"},   {"p", p},
                {"a", canonical_list(a)},   {"witness_cap", witness_cap},
                {"orbit_cap", orbit_cap}};
    } else if (ras->parsed()) {
      inputs = {{"command", "raster"},       {"out", out_path},
                {"width", width},            {"height", height},
                {"box", canonical_list(box)}, {"witness_cap", witness_cap},
                {"orbit_cap", orbit_cap}};
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return emit(inputs, threads, out, err);
}

}  // namespace padic_beta::cli
