#include "onion/classify.hpp"

#include <algorithm>
#include <set>

namespace onion {

std::string to_string(Family family) {
  switch (family) {
    case Family::Bipartite: return "bipartite";
    case Family::Qubit3: return "qubit3";
    case Family::Format322: return "format322";
    case Family::Qubit4: return "qubit4";
  }
  return "unknown";
}

namespace {

struct NameInfo {
  ClassName name;
  const char* text;
};

constexpr NameInfo kNames[] = {
    {ClassName::GHZ, "GHZ"},       {ClassName::W, "W"},           {ClassName::B1, "B1"},
    {ClassName::B2, "B2"},         {ClassName::B3, "B3"},         {ClassName::S, "S"},
    {ClassName::GEN322, "GEN322"}, {ClassName::DEG322, "DEG322"}, {ClassName::GENERIC4, "GENERIC4"},
    {ClassName::DEGENERATE4, "DEGENERATE4"},
};

std::vector<int> tripartite_ranks(ClassName name) {
  switch (name) {
    case ClassName::GEN322:
    case ClassName::DEG322: return {3, 2, 2};
    case ClassName::GHZ:
    case ClassName::W: return {2, 2, 2};
    case ClassName::B1: return {1, 2, 2};
    case ClassName::B2: return {2, 1, 2};
    case ClassName::B3: return {2, 2, 1};
    case ClassName::S: return {1, 1, 1};
    default: return {};
  }
}

int qubit3_level(ClassName name) {
  switch (name) {
    case ClassName::GHZ: return 0;
    case ClassName::W: return 1;
    case ClassName::B1:
    case ClassName::B2:
    case ClassName::B3: return 2;
    case ClassName::S: return 3;
    default: throw Error(ErrorCode::FamilyMismatch, "class does not belong to the 3-qubit family");
  }
}

// Strata order of the 3x2x2 onion; B1 sits one stratum below B2/B3.
int format322_level(ClassName name) {
  switch (name) {
    case ClassName::GEN322: return 0;
    case ClassName::DEG322: return 1;
    case ClassName::GHZ: return 2;
    case ClassName::W: return 3;
    case ClassName::B2:
    case ClassName::B3: return 4;
    case ClassName::B1: return 5;
    case ClassName::S: return 6;
    default: throw Error(ErrorCode::FamilyMismatch, "class does not belong to the 3x2x2 family");
  }
}

}  // namespace

std::string ClassLabel::name_string() const {
  if (name == ClassName::SchmidtRank) return "S_" + std::to_string(schmidt_rank);
  for (const auto& n : kNames)
    if (n.name == name) return n.text;
  return "unknown";
}

std::optional<ClassName> parse_class_name(const std::string& text) {
  for (const auto& n : kNames)
    if (text == n.text) return n.name;
  if (text.size() > 2 && text.rfind("S_", 0) == 0) return ClassName::SchmidtRank;
  return std::nullopt;
}

ClassLabel make_label(Family family, ClassName name) {
  ClassLabel label;
  label.family = family;
  label.name = name;
  switch (family) {
    case Family::Qubit3:
      label.onion_level = qubit3_level(name);
      label.local_ranks = tripartite_ranks(name);
      label.format = {2, 2, 2};
      break;
    case Family::Format322:
      label.onion_level = format322_level(name);
      label.local_ranks = tripartite_ranks(name);
      label.format = {3, 2, 2};
      break;
    case Family::Qubit4:
      if (name == ClassName::GENERIC4) {
        label.onion_level = 0;
      } else if (name == ClassName::DEGENERATE4) {
        label.onion_level = 1;
      } else {
        throw Error(ErrorCode::FamilyMismatch, "class does not belong to the 4-qubit family");
      }
      label.format = {2, 2, 2, 2};
      break;
    case Family::Bipartite:
      throw Error(ErrorCode::FamilyMismatch, "bipartite labels need a format and rank");
  }
  return label;
}

ClassLabel make_bipartite_label(const Format& format, int schmidt_rank) {
  if (format.size() != 2) throw Error(ErrorCode::NotBipartite, "bipartite label needs two parties");
  const int max_rank = std::min(format[0], format[1]);
  if (schmidt_rank < 1 || schmidt_rank > max_rank) throw Error(ErrorCode::FamilyMismatch, "Schmidt rank out of range");
  ClassLabel label;
  label.family = Family::Bipartite;
  label.name = ClassName::SchmidtRank;
  label.schmidt_rank = schmidt_rank;
  label.format = format;
  label.local_ranks = {schmidt_rank, schmidt_rank};
  label.onion_level = max_rank - schmidt_rank;
  return label;
}

ClassLabel label_from_name(const std::string& text) {
  const auto name = parse_class_name(text);
  if (!name) throw Error(ErrorCode::ParseError, "unknown class name '" + text + "'");
  switch (*name) {
    case ClassName::GEN322:
    case ClassName::DEG322: return make_label(Family::Format322, *name);
    case ClassName::GENERIC4:
    case ClassName::DEGENERATE4: return make_label(Family::Qubit4, *name);
    case ClassName::SchmidtRank: {
      int r = 0;
      try {
        r = std::stoi(text.substr(2));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad Schmidt rank in '" + text + "'");
      }
      if (r < 1) throw Error(ErrorCode::ParseError, "bad Schmidt rank in '" + text + "'");
      // Smallest square format that holds the rank.
      return make_bipartite_label({std::max(r, 2), std::max(r, 2)}, r);
    }
    default: return make_label(Family::Qubit3, *name);
  }
}

ExactTensor representative(const ClassLabel& label) {
  switch (label.family) {
    case Family::Bipartite: {
      const Format& f = label.format;
      std::vector<Exact> amps(format_volume(f));
      for (int i = 0; i < label.schmidt_rank; ++i) amps[static_cast<std::size_t>(i * f[1] + i)] = 1;
      return ExactTensor(f, std::move(amps));
    }
    case Family::Qubit3:
    case Family::Format322: {
      const Format f = label.family == Family::Qubit3 ? Format{2, 2, 2} : Format{3, 2, 2};
      switch (label.name) {
        case ClassName::GEN322: return kets<Exact>(f, {"000", "101", "110", "211"});
        case ClassName::DEG322: return kets<Exact>(f, {"000", "101", "211"});
        case ClassName::GHZ: return kets<Exact>(f, {"000", "111"});
        case ClassName::W: return kets<Exact>(f, {"001", "010", "100"});
        case ClassName::B1: return kets<Exact>(f, {"001", "010"});
        case ClassName::B2: return kets<Exact>(f, {"001", "100"});
        case ClassName::B3: return kets<Exact>(f, {"010", "100"});
        case ClassName::S: return kets<Exact>(f, {"000"});
        default: break;
      }
      break;
    }
    case Family::Qubit4:
      throw Error(ErrorCode::NoCanonicalRepresentative,
                  "four-qubit classes carry continuous parameters; no single representative");
  }
  throw Error(ErrorCode::FamilyMismatch, "label does not match its family");
}

ReachabilityDag reachability_dag(Family family) {
  using C = ClassName;
  ReachabilityDag dag{family, {}, {}};
  switch (family) {
    case Family::Format322:
      dag.nodes = {C::GEN322, C::DEG322};
      for (C outer : {C::GEN322, C::DEG322})
        for (C inner : {C::GHZ, C::W}) dag.edges.emplace_back(outer, inner);
      [[fallthrough]];
    case Family::Qubit3:
      for (C n : {C::GHZ, C::W, C::B1, C::B2, C::B3, C::S}) dag.nodes.push_back(n);
      for (C outer : {C::GHZ, C::W})
        for (C inner : {C::B1, C::B2, C::B3}) dag.edges.emplace_back(outer, inner);
      for (C b : {C::B1, C::B2, C::B3}) dag.edges.emplace_back(b, C::S);
      break;
    case Family::Qubit4:
      dag.nodes = {C::GENERIC4, C::DEGENERATE4};
      dag.edges = {{C::GENERIC4, C::DEGENERATE4}};
      break;
    case Family::Bipartite:
      dag.nodes = {C::SchmidtRank};
      break;
  }
  return dag;
}

namespace {

bool dag_reaches(const ReachabilityDag& dag, ClassName from, ClassName to) {
  if (from == to) return true;
  std::set<ClassName> seen{from};
  std::vector<ClassName> stack{from};
  while (!stack.empty()) {
    const ClassName cur = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : dag.edges) {
      if (a != cur || seen.count(b)) continue;
      if (b == to) return true;
      seen.insert(b);
      stack.push_back(b);
    }
  }
  return false;
}

bool tripartite(Family f) { return f == Family::Qubit3 || f == Family::Format322; }

}  // namespace

bool reachable(const ClassLabel& from, const ClassLabel& to) {
  if (from.family == Family::Bipartite && to.family == Family::Bipartite) {
    return from.schmidt_rank >= to.schmidt_rank;
  }
  if (tripartite(from.family) && tripartite(to.family)) {
    const Family family =
        (from.family == Family::Format322 || to.family == Family::Format322) ? Family::Format322 : Family::Qubit3;
    return dag_reaches(reachability_dag(family), from.name, to.name);
  }
  if (from.family == Family::Qubit4 && to.family == Family::Qubit4) {
    return dag_reaches(reachability_dag(Family::Qubit4), from.name, to.name);
  }
  throw Error(ErrorCode::FamilyMismatch, "labels from families " + to_string(from.family) + " and " +
                                             to_string(to.family) + " are not comparable");
}

std::vector<CatalogEntry> class_catalog() {
  std::vector<CatalogEntry> out;
  for (Family family : {Family::Qubit3, Family::Format322}) {
    const auto names = family == Family::Qubit3
                           ? std::vector<ClassName>{ClassName::GHZ, ClassName::W, ClassName::B1, ClassName::B2,
                                                    ClassName::B3, ClassName::S}
                           : std::vector<ClassName>{ClassName::GEN322, ClassName::DEG322, ClassName::GHZ,
                                                    ClassName::W, ClassName::B1, ClassName::B2, ClassName::B3,
                                                    ClassName::S};
    for (ClassName name : names) {
      const ClassLabel label = make_label(family, name);
      out.push_back({to_string(family) + " " + label.name_string(), representative(label), family, name,
                     label.local_ranks});
    }
  }
  const Format q4{2, 2, 2, 2};
  out.push_back({"qubit4 GHZ", kets<Exact>(q4, {"0000", "1111"}), Family::Qubit4, ClassName::DEGENERATE4, {2, 2, 2, 2}});
  out.push_back({"qubit4 W", kets<Exact>(q4, {"0001", "0010", "0100", "1000"}), Family::Qubit4,
                 ClassName::DEGENERATE4, {2, 2, 2, 2}});
  out.push_back({"qubit4 generic family (2,1,1,1)", build_generic4<Exact>(2, 1, 1, 1), Family::Qubit4,
                 ClassName::GENERIC4, {2, 2, 2, 2}});
  return out;
}

}  // namespace onion
