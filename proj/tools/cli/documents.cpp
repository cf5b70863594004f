#include "documents.hpp"

namespace onion::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

enum class Encoding { Unknown, Number, String };

struct RawAmplitudes {
  Format format;
  Encoding encoding = Encoding::Unknown;
  std::vector<std::pair<json, json>> values;
};

RawAmplitudes read_raw(const json& doc) {
  if (!doc.is_object()) fail("state document must be a JSON object");
  if (!doc.contains("format") || !doc["format"].is_array()) fail("state document needs a \"format\" array");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) fail("state document needs an \"amplitudes\" array");
  RawAmplitudes raw;
  for (const auto& d : doc["format"]) {
    if (!d.is_number_integer()) fail("format entries must be integers");
    const auto v = d.get<long long>();
    if (v < 0 || v > 1 << 20) throw Error(ErrorCode::BadDimension, "party dimension out of range");
    raw.format.push_back(static_cast<int>(v));
  }
  for (const auto& a : doc["amplitudes"]) {
    if (!a.is_array() || a.size() != 2) fail("each amplitude must be a two-element [re, im] array");
    for (const auto& part : a) {
      Encoding e = Encoding::Unknown;
      if (part.is_number()) {
        e = Encoding::Number;
      } else if (part.is_string()) {
        e = Encoding::String;
      } else {
        fail("amplitude parts must be numbers or \"p/q\" strings");
      }
      if (raw.encoding != Encoding::Unknown && raw.encoding != e)
        fail("amplitudes mix numeric and string encodings");
      raw.encoding = e;
    }
    raw.values.emplace_back(a[0], a[1]);
  }
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) fail("\"mode\" must be a string");
    const Mode declared = parse_mode(doc["mode"].get<std::string>());
    const bool consistent = raw.encoding == Encoding::Unknown ||
                            (declared == Mode::Exact) == (raw.encoding == Encoding::String);
    if (!consistent) fail("\"mode\" disagrees with the amplitude encoding");
  }
  return raw;
}

double finite_number(const json& v) {
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("amplitudes must be finite");
  return d;
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  fail("mode must be \"exact\" or \"float\", got \"" + text + "\"");
}

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

AnyTensor parse_state(const json& doc, std::optional<Mode> forced) {
  const RawAmplitudes raw = read_raw(doc);
  validate_format(raw.format);
  if (raw.values.size() != format_volume(raw.format)) {
    throw Error(ErrorCode::FormatMismatch, std::to_string(raw.values.size()) + " amplitudes for format " +
                                               format_to_string(raw.format));
  }
  const Mode native = raw.encoding == Encoding::String ? Mode::Exact : Mode::Float;
  const Mode mode = forced.value_or(native);
  if (native == Mode::Exact) {
    std::vector<Exact> amps;
    for (const auto& [re, im] : raw.values)
      amps.emplace_back(rational_from_string(re.get<std::string>()), rational_from_string(im.get<std::string>()));
    ExactTensor t(raw.format, std::move(amps));
    if (mode == Mode::Exact) return t;
    return tensor_cast<Float>(t);
  }
  std::vector<Float> amps;
  for (const auto& [re, im] : raw.values) amps.emplace_back(finite_number(re), finite_number(im));
  FloatTensor t(raw.format, std::move(amps));
  if (mode == Mode::Float) return t;
  return tensor_cast<Exact>(t);
}

AnyEnsemble parse_ensemble(const json& doc, std::optional<Mode> forced, Tolerance tol) {
  if (!doc.is_object() || !doc.contains("members") || !doc["members"].is_array())
    fail("ensemble document needs a \"members\" array");
  if (doc["members"].empty()) throw Error(ErrorCode::EmptyEnsemble, "ensemble has no members");
  std::optional<Mode> mode = forced;
  std::vector<std::pair<json, AnyTensor>> parsed;
  for (const auto& m : doc["members"]) {
    if (!m.is_object() || !m.contains("weight") || !m.contains("state")) fail("members need \"weight\" and \"state\"");
    AnyTensor t = parse_state(m["state"], mode);
    if (!mode) mode = std::holds_alternative<ExactTensor>(t) ? Mode::Exact : Mode::Float;
    parsed.emplace_back(m["weight"], std::move(t));
  }
  if (*mode == Mode::Exact) {
    std::vector<Ensemble<Exact>::Member> members;
    for (auto& [w, t] : parsed) {
      mpq_class weight;
      if (w.is_string()) {
        weight = rational_from_string(w.get<std::string>());
      } else if (w.is_number()) {
        weight = GaussianRational::from_complex({finite_number(w), 0.0}).real();
      } else {
        fail("weights must be numbers or \"p/q\" strings");
      }
      members.push_back({weight, std::get<ExactTensor>(std::move(t))});
    }
    return Ensemble<Exact>(std::move(members), tol);
  }
  std::vector<Ensemble<Float>::Member> members;
  for (auto& [w, t] : parsed) {
    double weight = 0.0;
    if (w.is_string()) {
      weight = rational_from_string(w.get<std::string>()).get_d();
    } else if (w.is_number()) {
      weight = finite_number(w);
    } else {
      fail("weights must be numbers or \"p/q\" strings");
    }
    members.push_back({weight, std::get<FloatTensor>(std::move(t))});
  }
  return Ensemble<Float>(std::move(members), tol);
}

json scalar_json(const Exact& v) {
  if (sgn(v.imag()) == 0) return rational_to_string(v.real());
  return json::array({rational_to_string(v.real()), rational_to_string(v.imag())});
}

json scalar_json(const Float& v) {
  if (v.imag() == 0.0) return v.real();
  return json::array({v.real(), v.imag()});
}

json scalar_json(const QuadraticExtension& v) {
  if (!v.radicand()) return scalar_json(v.rational_part());
  return to_string(v);
}

json state_json(const ExactTensor& t) {
  json amps = json::array();
  for (const auto& a : t.amplitudes())
    amps.push_back(json::array({rational_to_string(a.real()), rational_to_string(a.imag())}));
  return json{{"format", t.format()}, {"amplitudes", std::move(amps)}, {"mode", "exact"}};
}

json state_json(const FloatTensor& t) {
  json amps = json::array();
  for (const auto& a : t.amplitudes()) amps.push_back(json::array({a.real(), a.imag()}));
  return json{{"format", t.format()}, {"amplitudes", std::move(amps)}, {"mode", "float"}};
}

json label_json(const ClassLabel& label) {
  json out{{"name", label.name_string()},
           {"family", onion::to_string(label.family)},
           {"onion_level", label.onion_level},
           {"local_ranks", label.local_ranks},
           {"format", label.format},
           {"boundary_warning", label.boundary_warning}};
  if (label.family == Family::Bipartite) out["schmidt_rank"] = label.schmidt_rank;
  json diag = json::object();
  for (const auto& [k, v] : label.diagnostics) diag[k] = v;
  out["diagnostics"] = std::move(diag);
  return out;
}

json partition_json(const Partition& p) {
  json out = json::array();
  for (const auto& block : p) {
    json b = json::array();
    for (int party : block) b.push_back(party + 1);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace onion::cli
