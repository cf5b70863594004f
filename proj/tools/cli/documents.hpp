#pragma once

#include <optional>
#include <variant>

#include "json.hpp"
#include "onion/onion.hpp"

namespace onion::cli {

using json = nlohmann::ordered_json;

enum class Mode { Exact, Float };

Mode parse_mode(const std::string& text);
std::string to_string(Mode mode);

using AnyTensor = std::variant<ExactTensor, FloatTensor>;

/// Reads a state document. Amplitudes are [re, im] pairs of either numbers
/// (float) or "p/q" strings (exact); a document mixing the two is rejected.
/// `forced` converts the parsed state into the requested field.
AnyTensor parse_state(const json& doc, std::optional<Mode> forced);

using AnyEnsemble = std::variant<Ensemble<Exact>, Ensemble<Float>>;

/// {"members": [{"weight": w, "state": <state document>}, ...]}. Exact
/// ensembles take "p/q" weights; float ensembles take numbers.
AnyEnsemble parse_ensemble(const json& doc, std::optional<Mode> forced, Tolerance tol);

/// Real values serialize as a bare "p/q" string (exact) or number (float);
/// values with an imaginary part as a [re, im] pair.
json scalar_json(const Exact& v);
json scalar_json(const Float& v);
json scalar_json(const QuadraticExtension& v);

json state_json(const ExactTensor& t);
json state_json(const FloatTensor& t);

template <Field S>
json matrix_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json label_json(const ClassLabel& label);

/// Parties as 1-based blocks, e.g. [[1],[2,3]].
json partition_json(const Partition& p);

}  // namespace onion::cli
