#include "sumrace/certificate.hpp"

#include <fstream>
#include <sstream>

namespace sumrace {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw ParseError("certificate: " + what);
}

Elem get_int(const json& o, const char* key) {
  if (!o.contains(key) || !o[key].is_number_integer()) {
    bad(std::string("missing or non-integer field \"") + key + "\"");
  }
  return o[key].get<Elem>();
}

std::string get_str(const json& o, const char* key) {
  if (!o.contains(key) || !o[key].is_string()) {
    bad(std::string("missing or non-string field \"") + key + "\"");
  }
  return o[key].get<std::string>();
}

json set_to_json(const IntSet& s) { return json(s.elements()); }

IntSet set_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) bad(std::string(what) + " must be a nonempty array");
  std::vector<Elem> elems;
  for (const auto& x : v) {
    if (!x.is_number_integer()) bad(std::string(what) + " holds a non-integer");
    elems.push_back(x.get<Elem>());
  }
  try {
    return IntSet::from_sorted(std::move(elems));
  } catch (const Error& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

std::string mpz_str(const mpz_class& v) { return v.get_str(); }

mpz_class mpz_from(const std::string& text, const char* what) {
  if (text.empty()) bad(std::string(what) + " is empty");
  std::size_t i = text[0] == '-' ? 1 : 0;
  if (i == text.size()) bad(std::string(what) + " is not a decimal integer");
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      bad(std::string(what) + " is not a decimal integer: \"" + text + "\"");
    }
  }
  return mpz_class(text, 10);
}

json box_to_json(const BoxExpr& e) {
  json o = json::object();
  if (e.is_leaf()) {
    o["elements"] = set_to_json(*e.elements);
    return o;
  }
  o["base"] = box_to_json(*e.base);
  o["index"] = set_to_json(*e.index);
  o["tau"] = e.tau;
  if (e.elements) o["elements"] = set_to_json(*e.elements);
  return o;
}

BoxExpr box_from_json(const json& o) {
  if (!o.is_object()) bad("set recipe must be an object");
  BoxExpr e;
  if (o.contains("base")) {
    e.base = std::make_shared<const BoxExpr>(box_from_json(o["base"]));
    if (!o.contains("index")) bad("box without \"index\"");
    e.index = set_from_json(o["index"], "box index");
    e.tau = get_int(o, "tau");
    if (o.contains("elements")) {
      e.elements = set_from_json(o["elements"], "box elements");
    }
  } else {
    if (!o.contains("elements")) bad("leaf without \"elements\"");
    e.elements = set_from_json(o["elements"], "leaf elements");
  }
  return e;
}

const char* kind_name(StepRecord::Kind kind) {
  switch (kind) {
    case StepRecord::Kind::base:
      return "base";
    case StepRecord::Kind::free_diameter_extend:
      return "free-diameter-extend";
    case StepRecord::Kind::equal_diameter_extend:
      return "equal-diameter-extend";
  }
  return "?";
}

json step_to_json(const StepRecord& rec) {
  json o = json::object();
  o["kind"] = kind_name(rec.kind);
  o["h_new"] = rec.h_new;
  o["n"] = rec.n;
  switch (rec.kind) {
    case StepRecord::Kind::base:
      break;
    case StepRecord::Kind::free_diameter_extend:
      o["alpha"] = rec.alpha;
      o["beta"] = rec.beta;
      o["r"] = rec.r;
      break;
    case StepRecord::Kind::equal_diameter_extend:
      o["H"] = rec.scale_h;
      o["tau"] = rec.tau;
      o["index_i_to"] = rec.index_i_to_a ? "a" : "b";
      break;
  }
  if (rec.kind != StepRecord::Kind::base) {
    o["delta_a"] = rec.delta_a;
    o["delta_b"] = rec.delta_b;
    o["gamma_a"] = rec.gamma_a;
    o["gamma_b"] = rec.gamma_b;
    o["h0_a"] = rec.h0_a;
    o["h0_b"] = rec.h0_b;
  }
  return o;
}

StepRecord step_from_json(const json& o) {
  if (!o.is_object()) bad("trace entry must be an object");
  StepRecord rec;
  const std::string kind = get_str(o, "kind");
  rec.h_new = get_int(o, "h_new");
  rec.n = get_int(o, "n");
  if (kind == "base") {
    rec.kind = StepRecord::Kind::base;
    return rec;
  }
  rec.delta_a = get_int(o, "delta_a");
  rec.delta_b = get_int(o, "delta_b");
  rec.gamma_a = get_int(o, "gamma_a");
  rec.gamma_b = get_int(o, "gamma_b");
  rec.h0_a = get_int(o, "h0_a");
  rec.h0_b = get_int(o, "h0_b");
  if (kind == "free-diameter-extend") {
    rec.kind = StepRecord::Kind::free_diameter_extend;
    rec.alpha = get_int(o, "alpha");
    rec.beta = get_int(o, "beta");
    rec.r = get_int(o, "r");
    return rec;
  }
  if (kind == "equal-diameter-extend") {
    rec.kind = StepRecord::Kind::equal_diameter_extend;
    rec.scale_h = get_int(o, "H");
    rec.tau = get_int(o, "tau");
    const std::string owner = get_str(o, "index_i_to");
    if (owner != "a" && owner != "b") bad("index_i_to must be \"a\" or \"b\"");
    rec.index_i_to_a = owner == "a";
    return rec;
  }
  bad("unknown step kind \"" + kind + "\"");
}

}  // namespace

json certificate_to_json(const RaceCertificate& cert) {
  json o = json::object();
  o["version"] = cert.version;
  o["mode"] = to_string(cert.mode);
  o["m"] = cert.m;
  o["a"] = box_to_json(cert.a);
  o["b"] = box_to_json(cert.b);
  json cps = json::array();
  for (const auto& cp : cert.checkpoints) {
    json c = json::object();
    c["h"] = cp.h;
    c["size_a"] = mpz_str(cp.size_a);
    c["size_b"] = mpz_str(cp.size_b);
    c["sign"] = cp.sign;
    cps.push_back(std::move(c));
  }
  o["checkpoints"] = std::move(cps);
  json trace = json::array();
  for (const auto& rec : cert.trace) trace.push_back(step_to_json(rec));
  o["trace"] = std::move(trace);
  if (cert.failure) {
    json f = json::object();
    f["at_m"] = cert.failure->failed_m;
    f["error"] = cert.failure->error;
    o["failure"] = std::move(f);
  }
  return o;
}

RaceCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) bad("document is not an object");
  RaceCertificate cert;
  cert.version = static_cast<int>(get_int(doc, "version"));
  if (cert.version != 1) bad("unsupported version");
  cert.mode = mode_from_string(get_str(doc, "mode"));
  cert.m = get_int(doc, "m");
  if (!doc.contains("a") || !doc.contains("b")) bad("missing set recipes");
  cert.a = box_from_json(doc["a"]);
  cert.b = box_from_json(doc["b"]);
  if (!doc.contains("checkpoints") || !doc["checkpoints"].is_array()) {
    bad("missing checkpoint array");
  }
  for (const auto& c : doc["checkpoints"]) {
    if (!c.is_object()) bad("checkpoint must be an object");
    CheckpointClaim cp{get_int(c, "h"), mpz_from(get_str(c, "size_a"), "size_a"),
                       mpz_from(get_str(c, "size_b"), "size_b"),
                       static_cast<int>(get_int(c, "sign"))};
    cert.checkpoints.push_back(std::move(cp));
  }
  if (!doc.contains("trace") || !doc["trace"].is_array()) bad("missing trace");
  for (const auto& t : doc["trace"]) cert.trace.push_back(step_from_json(t));
  if (doc.contains("failure")) {
    const auto& f = doc["failure"];
    cert.failure = RaceFailure{get_int(f, "at_m"), get_str(f, "error")};
  }
  return cert;
}

std::string dump_certificate(const RaceCertificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

RaceCertificate parse_certificate(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: invalid JSON: ") + e.what());
  }
  return certificate_from_json(doc);
}

RaceCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read certificate file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

void write_certificate_file(const RaceCertificate& cert,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write certificate file " + path);
  out << dump_certificate(cert);
}

}  // namespace sumrace
