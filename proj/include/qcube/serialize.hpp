#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcube/commutant.hpp"
#include "qcube/qpoly.hpp"
#include "qcube/signed_sets.hpp"
#include "qcube/spectral.hpp"
#include "qcube/treecount.hpp"

namespace qcube {

using json = nlohmann::json;

/// {"valuation": int, "coeffs": [decimal strings]} — strings because
/// coefficients routinely exceed the 64-bit range.
inline json to_json(const QPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
  return json{{"valuation", p.valuation()}, {"coeffs", coeffs}};
}

inline json to_json(const FactoredExpr& e) {
  json factors = json::array();
  for (const auto& f : e.factors)
    factors.push_back(json{{"base", to_json(f.base)}, {"exponent", to_json(f.exponent)}});
  return json{{"n", e.n}, {"leading", to_json(e.leading)}, {"factors", factors}};
}

inline json to_json(const SignedSet& s, int n) {
  json plain = json::array(), barred = json::array();
  for (int i = 1; i <= n; ++i) {
    if (s.plain & (1u << (i - 1))) plain.push_back(i);
    if (s.barred & (1u << (i - 1))) barred.push_back(i);
  }
  return json{{"plain", plain}, {"barred", barred}};
}

inline json signed_sets_json(int n) {
  json out = json::array();
  for (const auto& s : *signed_sets(n)) out.push_back(to_json(s, n));
  return out;
}

inline json to_json(const ScanEntry& e) {
  json blocks = json::array();
  for (const auto& b : e.blocks)
    blocks.push_back(json{{"k", b.k}, {"eigenvalues", b.eigenvalues}});
  return json{{"n", e.n},
              {"q", e.q},
              {"blocks", blocks},
              {"min_cross_block_gap", e.min_cross_block_gap},
              {"distinct_count", e.distinct_count},
              {"conjectured_count", e.conjectured_count}};
}

inline json to_json(const BlockDiagonal& bd) {
  json blocks = json::array();
  for (int k = 0; k < static_cast<int>(bd.blocks.size()); ++k) {
    const auto& m = bd.blocks[static_cast<size_t>(k)];
    json entries = json::array();
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
    blocks.push_back(json{{"k", k},
                          {"size", static_cast<int>(m.rows())},
                          {"entries", entries}});
  }
  return json{{"n", bd.n}, {"blocks", blocks}};
}

}  // namespace qcube
