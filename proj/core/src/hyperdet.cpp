#include "onion/hyperdet.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace onion {

double concurrence(const FloatTensor& t) { return 2.0 * std::abs(det2(t)); }

double tangle3(const FloatTensor& t) { return 4.0 * std::abs(det3_explicit(t)); }

mpq_class concurrence_squared(const ExactTensor& t) { return 4 * det2(t).norm(); }

mpq_class tangle3_squared(const ExactTensor& t) { return 16 * det3_explicit(t).norm(); }

bool hyperdet_defined(const Format& format) {
  std::vector<int> k;
  for (int d : format) k.push_back(d - 1);
  std::sort(k.begin(), k.end(), std::greater<>());
  if (k.empty()) return false;
  const int rest = std::accumulate(k.begin() + 1, k.end(), 0);
  return k.front() <= rest;
}

std::optional<int> hyperdet_degree(const Format& format) {
  if (format.size() == 2 && format[0] == format[1]) return format[0];
  if (format == Format{2, 2, 2}) return 4;
  if (format == Format{3, 2, 2}) return 6;
  if (format == Format{2, 2, 2, 2}) return 24;
  return std::nullopt;
}

}  // namespace onion
