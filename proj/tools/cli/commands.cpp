#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "onion/selftest.hpp"

namespace onion::cli {

namespace {

constexpr double kDet4FloatWarning = 1e-6;

Tolerance tolerance(const GlobalOptions& g) { return Tolerance{g.tol}; }

std::uint64_t resolve_seed(const GlobalOptions& g) {
  if (g.seed) return *g.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

template <Field S>
bool value_is_zero(const S& v, const BasicTensor<S>& t, int degree, Tolerance tol) {
  return FieldTraits<S>::is_zero(v, std::pow(t.norm(), static_cast<double>(degree)), tol);
}

template <Field S>
json hyperdet_json(const BasicTensor<S>& t, Tolerance tol) {
  json out;
  HyperdetResult<S> r;
  try {
    r = hyperdet(t, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedFormat) throw;
    out["defined"] = true;
    out["available"] = false;
    out["format"] = t.format();
    return out;
  }
  out["defined"] = r.defined;
  out["value"] = r.defined ? scalar_json(r.value) : json(nullptr);
  out["degree"] = r.degree;
  out["format"] = r.format;
  if (r.defined) out["vanishes"] = value_is_zero(r.value, t, r.degree, tol);
  if (r.degenerate_pencil) out["degenerate_pencil"] = true;
  if constexpr (std::is_same_v<S, Float>) {
    if (r.defined && t.format() == Format{2, 2, 2, 2} && std::abs(r.value) < kDet4FloatWarning) {
      out["warning"] = "float det4 below 1e-6 is ill-conditioned; rerun with --mode exact";
    }
  }
  return out;
}

std::string cut_name(const PartySet& cut, int parties) {
  std::string a;
  std::string b;
  for (int p = 0; p < parties; ++p) {
    const bool in = std::find(cut.begin(), cut.end(), p) != cut.end();
    (in ? a : b) += std::to_string(p + 1);
  }
  return a + "|" + b;
}

template <Field S>
json cut_ranks_json(const BasicTensor<S>& t, Tolerance tol) {
  json out = json::object();
  const int n = t.parties();
  // Cuts containing party 1 cover every bipartition once.
  for (unsigned mask = 1; mask + 1 < (1u << n); mask += 2) {
    PartySet cut;
    for (int p = 0; p < n; ++p)
      if (mask & (1u << p)) cut.push_back(p);
    out[cut_name(cut, n)] = cut_rank(t, cut, tol);
  }
  return out;
}

json measures_json(const ExactTensor& t) {
  json out = json::object();
  if (t.format() == Format{2, 2}) out["concurrence_squared"] = rational_to_string(concurrence_squared(t));
  if (t.format() == Format{2, 2, 2}) out["tangle3_squared"] = rational_to_string(tangle3_squared(t));
  return out;
}

json measures_json(const FloatTensor& t) {
  json out = json::object();
  if (t.format() == Format{2, 2}) out["concurrence"] = concurrence(t);
  if (t.format() == Format{2, 2, 2}) out["tangle3"] = tangle3(t);
  return out;
}

json schmidt_json(const ExactTensor& t) {
  const auto s = squared_schmidt_spectrum(t);
  json poly = json::array();
  for (const auto& c : s.characteristic_polynomial) poly.push_back(rational_to_string(c));
  json out{{"characteristic_polynomial", std::move(poly)}, {"squared_approximate", s.approximate}};
  if (s.exact) {
    json ex = json::array();
    for (const auto& v : *s.exact) ex.push_back(rational_to_string(v));
    out["squared_exact"] = std::move(ex);
  } else {
    out["squared_exact"] = nullptr;
  }
  return out;
}

json schmidt_json(const FloatTensor& t) { return json{{"coefficients", schmidt_coefficients(t)}}; }

template <Field S>
json singularity_json(const BasicTensor<S>& t, Tolerance tol) {
  const auto r = singularity_report(t, tol);
  json flags = json::object();
  for (const auto& [node, flag] : r.node_flags) flags[std::to_string(node)] = flag;
  json out{{"in_dual", r.in_dual}, {"node_flags", std::move(flags)}};
  if (t.format() == Format{2, 2, 2}) out["cusp_flag"] = r.cusp_flag;
  if (r.hessian_det) out["hessian_det"] = scalar_json(*r.hessian_det);
  return out;
}

template <typename F>
json with_state(const json& doc, const GlobalOptions& g, F&& f) {
  return std::visit([&](const auto& t) { return f(t); }, parse_state(doc, g.mode));
}

template <Field S>
constexpr const char* mode_name() {
  return std::is_same_v<S, Exact> ? "exact" : "float";
}

void flatten_text(const json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object() && !node.empty()) {
    for (const auto& [k, v] : node.items()) flatten_text(v, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  rows.emplace_back(prefix, node.is_string() ? node.get<std::string>() : node.dump());
}

json error_json(std::string_view code, const std::string& message) {
  return json{{"error", std::string(code)}, {"message", message}};
}

}  // namespace

json cmd_classify(const json& doc, const GlobalOptions& g) {
  return with_state(doc, g, [&](const auto& t) {
    json out = label_json(classify(t, tolerance(g)));
    out["mode"] = mode_name<typename std::decay_t<decltype(t)>::value_type>();
    return out;
  });
}

json cmd_hyperdet(const json& doc, const GlobalOptions& g) {
  return with_state(doc, g, [&](const auto& t) { return hyperdet_json(t, tolerance(g)); });
}

json cmd_invariants(const json& doc, const GlobalOptions& g) {
  return with_state(doc, g, [&](const auto& t) {
    using S = typename std::decay_t<decltype(t)>::value_type;
    const Tolerance tol = tolerance(g);
    json out{{"format", t.format()},
             {"mode", mode_name<S>()},
             {"local_ranks", local_ranks(t, tol)},
             {"cut_ranks", cut_ranks_json(t, tol)},
             {"separability_pattern", partition_json(separability_pattern(t, tol))},
             {"hyperdet", hyperdet_json(t, tol)}};
    json measures = measures_json(t);
    if (!measures.empty()) out["measures"] = std::move(measures);
    if (t.parties() == 2) out["schmidt"] = schmidt_json(t);
    if (t.format() == Format{2, 2, 2} || t.format() == Format{3, 2, 2}) out["singularity"] = singularity_json(t, tol);
    return out;
  });
}

json cmd_canonicalize(const json& doc, const GlobalOptions& g) {
  return with_state(doc, g, [&](const auto& t) {
    using S = typename std::decay_t<decltype(t)>::value_type;
    const auto form = canonicalize_3qubit(t, tolerance(g));
    json ops = json::array();
    for (const auto& m : form.operators.operators()) ops.push_back(matrix_json(m));
    return json{{"label", label_json(form.label)},
                {"mode", mode_name<S>()},
                {"operators", std::move(ops)},
                {"representative", state_json(representative(form.label))}};
  });
}

json cmd_reachable(const std::string& from, const std::string& to) {
  const ClassLabel a = label_from_name(from);
  const ClassLabel b = label_from_name(to);
  return json{{"from", a.name_string()}, {"to", b.name_string()}, {"reachable", reachable(a, b)}};
}

json cmd_oracle(const json& doc, const GlobalOptions& g) {
  const AnyTensor parsed = parse_state(doc, g.mode);
  const FloatTensor ft = std::visit([](const auto& t) { return tensor_cast<Float>(t); }, parsed);
  OracleOptions opts;
  opts.restarts = g.restarts;
  opts.seed = resolve_seed(g);
  opts.threads = 0;
  const auto r = degenerate_oracle(ft, opts);
  json point = nullptr;
  if (r.witness) {
    point = json::array();
    for (const auto& factor : r.witness->factors()) {
      json f = json::array();
      for (const auto& c : factor) f.push_back(json::array({c.real(), c.imag()}));
      point.push_back(std::move(f));
    }
  }
  const json formula = std::visit([&](const auto& t) { return hyperdet_json(t, tolerance(g)); }, parsed);
  return json{{"verdict", r.found ? "FOUND" : "NOT-FOUND"},
              {"found", r.found},
              {"residual", r.residual},
              {"oracle_tol", opts.tol},
              {"restarts_used", r.restarts_used},
              {"seed", opts.seed},
              {r.found ? "witness" : "best_point", std::move(point)},
              {"formula", formula}};
}

json cmd_random(const Format& format, const GlobalOptions& g) {
  const std::uint64_t seed = resolve_seed(g);
  const FloatTensor t = random_state(format, seed);
  json out = g.mode == Mode::Exact ? state_json(tensor_cast<Exact>(t)) : state_json(t);
  out["seed"] = seed;
  return out;
}

json cmd_mixed(const json& doc, const GlobalOptions& g) {
  return std::visit(
      [&](const auto& e) {
        const auto r = ensemble_upper_class(e, tolerance(g));
        json labels = json::array();
        for (const auto& l : r.member_labels) labels.push_back(l.name_string());
        return json{{"ladder", onion::to_string(r.ladder)}, {"bound_kind", r.bound_kind}, {"members", labels}};
      },
      parse_ensemble(doc, g.mode, tolerance(g)));
}

std::string render_text(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_text(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperdeterminants and SLOCC classes of small multipartite states", "onion"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string mode_text;
  std::string output = "json";
  std::string input;
  std::uint64_t seed = 0;
  app.add_option("--mode", mode_text, "Arithmetic: exact or float (default: from the document)")
      ->check(CLI::IsMember({"exact", "float"}))
      ->envname("ONION_MODE");
  app.add_option("--tol", g.tol, "Relative zero-test tolerance for float decisions")
      ->check(CLI::PositiveNumber)
      ->envname("ONION_TOL");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands")->envname("ONION_SEED");
  app.add_option("--restarts", g.restarts, "Oracle restarts")->check(CLI::PositiveNumber)->envname("ONION_RESTARTS");
  app.add_option("--output", output, "Output style: json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->envname("ONION_OUTPUT");
  app.add_option("--input", input, "Input JSON file (default: stdin)")->check(CLI::ExistingFile);

  for (const char* name : {"classify", "hyperdet", "invariants", "canonicalize", "oracle"}) {
    app.add_subcommand(name, std::string("Run ") + name + " on a state document");
  }
  app.get_subcommand("classify")->description("Classify a state into its onion class");
  app.get_subcommand("hyperdet")->description("Evaluate the hyperdeterminant");
  app.get_subcommand("invariants")->description("Ranks, hyperdeterminant, measures and singularity data");
  app.get_subcommand("canonicalize")->description("Local operators taking a 2x2x2 state to its representative");
  app.get_subcommand("oracle")->description("Numerical search for a critical point of the multilinear form");

  auto* reach = app.add_subcommand("reachable", "Whether class FROM degenerates to class TO");
  std::string from;
  std::string to;
  reach->add_option("from", from, "Source class name")->required();
  reach->add_option("to", to, "Target class name")->required();

  auto* random = app.add_subcommand("random", "Seeded random unit-norm state document");
  std::string format_text;
  random->add_option("--format", format_text, "Comma-separated party dimensions, e.g. 2,2,2")->required();

  app.add_subcommand("mixed", "Upper-bound ladder class of a 3-qubit ensemble");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  std::string level = "quick";
  selftest->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  auto emit_error = [&](std::string_view code, const std::string& message, int status) {
    if (output == "text") {
      err << "error: " << code << ": " << message << '\n';
    } else {
      out << error_json(code, message).dump() << '\n';
    }
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return emit_error("UsageError", e.what(), 2);
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    if (!mode_text.empty()) g.mode = parse_mode(mode_text);
    if (seed_opt->count() > 0 || std::getenv("ONION_SEED") != nullptr) g.seed = seed;

    if (command == "selftest") {
      selftest::Options opts;
      opts.level = level == "full" ? selftest::Level::Full : selftest::Level::Quick;
      if (g.seed) opts.seed = *g.seed;
      std::size_t passed = 0;
      json criteria = json::array();
      const auto results = selftest::run(opts, [&](const selftest::CriterionResult& r) {
        if (output == "text") out << selftest::format_line(r) << std::endl;
      });
      for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        criteria.push_back(json{{"id", r.id},
                                {"title", r.title},
                                {"passed", r.passed},
                                {"detail", r.detail},
                                {"seconds", r.seconds}});
      }
      if (output == "text") {
        out << passed << " of " << results.size() << " criteria passed\n";
      } else {
        out << json{{"level", level}, {"seed", opts.seed}, {"passed", passed}, {"total", results.size()},
                    {"criteria", criteria}}
                   .dump(2)
            << '\n';
      }
      return passed == results.size() ? 0 : 1;
    }

    json report;
    if (command == "reachable") {
      report = cmd_reachable(from, to);
    } else if (command == "random") {
      Format format;
      std::stringstream ss(format_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          format.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::ParseError, "bad format entry '" + item + "'");
        }
      }
      report = cmd_random(format, g);
    } else {
      json doc;
      if (input.empty()) {
        doc = json::parse(in);
      } else {
        std::ifstream file(input);
        doc = json::parse(file);
      }
      if (command == "classify") {
        report = cmd_classify(doc, g);
      } else if (command == "hyperdet") {
        report = cmd_hyperdet(doc, g);
      } else if (command == "invariants") {
        report = cmd_invariants(doc, g);
      } else if (command == "canonicalize") {
        report = cmd_canonicalize(doc, g);
      } else if (command == "oracle") {
        report = cmd_oracle(doc, g);
      } else {
        report = cmd_mixed(doc, g);
      }
    }

    for (const json* node : {&report, report.contains("hyperdet") ? &report["hyperdet"] : nullptr,
                             report.contains("formula") ? &report["formula"] : nullptr}) {
      if (node && node->contains("warning")) err << "warning: " << (*node)["warning"].get<std::string>() << '\n';
    }
    if (output == "text") {
      out << render_text(report);
    } else {
      out << report.dump() << '\n';
    }
    return 0;
  } catch (const Error& e) {
    return emit_error(to_string(e.code()), e.what(), e.code() == ErrorCode::UnsupportedFormat ? 3 : 2);
  } catch (const json::exception& e) {
    return emit_error("ParseError", e.what(), 2);
  }
}

}  // namespace onion::cli
