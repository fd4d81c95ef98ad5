#pragma once

#include <string>
#include <vector>

#include "reescalc/rees.hpp"
#include "unit/support.hpp"

namespace reescalc::testing {

/// Embedding from matrix rows written as strings.
inline ModuleEmbedding rows(const Ring& a, const std::vector<std::vector<std::string>>& text) {
  std::vector<std::vector<Polynomial>> r;
  for (const auto& row : text) {
    std::vector<Polynomial> out;
    for (const auto& s : row) out.push_back(P(s, a));
    r.push_back(std::move(out));
  }
  return ModuleEmbedding::from_rows(a, r);
}

inline ModuleEmbedding ideal_sum(const Ring& a, const std::vector<std::vector<std::string>>& ideals) {
  std::vector<PolyVector> cols;
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (const auto& g : ideals[i]) {
      PolyVector v(ideals.size(), Polynomial(a));
      v[i] = P(g, a);
      cols.push_back(std::move(v));
    }
  return ModuleEmbedding(a, ideals.size(), std::move(cols));
}

inline const std::vector<std::string> kEqual{"X^4", "X^3*Y^2", "X*Y^6", "Y^8"};
inline const std::vector<std::string> kEqualBar{"X^4", "X^3*Y^2", "X^2*Y^4", "X*Y^6", "Y^8"};
inline const std::vector<std::string> kFirst{"X^6", "X^5*Y^2", "X^4*Y^3", "X^3*Y^4", "X*Y^7", "Y^8"};
inline const std::vector<std::string> kSecond{"X^5", "X^4*Y^2", "X^3*Y^3", "X*Y^6", "Y^7"};

inline ModuleEmbedding equal_sum(const Ring& a) { return ideal_sum(a, {kEqual, kEqual}); }
inline ModuleEmbedding distinct_sum(const Ring& a) { return ideal_sum(a, {kFirst, kSecond}); }
inline ModuleEmbedding seven_gen(const Ring& a) {
  return rows(a, {{"X^3", "X^2*Y^2", "X*Y^3", "Y^5", "0", "0", "0"},
                  {"0", "0", "X^3", "0", "X^2*Y^2", "X*Y^4", "Y^5"}});
}
inline ModuleEmbedding parameter_module(const Ring& a) { return rows(a, {{"X", "Y", "0"}, {"0", "X", "Y"}}); }

}  // namespace reescalc::testing
