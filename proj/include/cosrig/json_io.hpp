#pragma once

#include <json.hpp>

#include "cosrig/cyclic_sup.hpp"
#include "cosrig/interval.hpp"
#include "cosrig/k_constant.hpp"
#include "cosrig/real_sup.hpp"
#include "cosrig/spectral.hpp"

namespace cosrig {

using nlohmann::json;

inline json to_json(const CertScalar& c) {
  json j;
  j["lo"] = c.interval().lo.str();
  j["hi"] = c.interval().hi.str();
  if (c.closed_form().present())
    j["closed_form"] = c.closed_form().token();
  else
    j["closed_form"] = nullptr;
  return j;
}

/// Re-parses the {lo, hi} decimal strings into an enclosure at the given
/// precision, rounding outward so the result still contains the value.
inline CertScalar cert_from_json(const json& j, Prec prec = kDefaultPrec) {
  Interval iv(prec);
  mpfr_set_str(iv.lo.raw(), j.at("lo").get<std::string>().c_str(), 10, MPFR_RNDD);
  mpfr_set_str(iv.hi.raw(), j.at("hi").get<std::string>().c_str(), 10, MPFR_RNDU);
  return CertScalar(std::move(iv));
}

inline json to_json(const CyclicSupResult& r) {
  json j;
  j["value"] = to_json(r.value);
  j["closed_form"] = r.value.closed_form().present() ? json(r.value.closed_form().token())
                                                     : json(nullptr);
  j["witness_n"] = r.witness_n;
  j["period"] = r.period;
  return j;
}

inline json to_json(const AngleSet& s) {
  json members = json::array();
  for (const auto& a : s.members) members.push_back(a.str());
  json j;
  j["threshold"] = s.threshold.str();
  j["base"] = s.base.str();
  j["members"] = members;
  j["certified"] = s.certified;
  return j;
}

inline json to_json(const KValue& k) {
  json j = to_json(k.value);
  j["max_irrational"] = k.max_irrational;
  return j;
}

inline json to_json(const OmegaResult& o) {
  json j;
  j["threshold"] = o.m.str();
  j["cutoff_order"] = o.cutoff_order;
  j["order_classes"] = o.order_classes;
  json members = json::array();
  for (const auto& [a, k] : o.members) {
    json m;
    m["angle"] = a.str();
    m["k"] = to_json(k);
    members.push_back(std::move(m));
  }
  j["members"] = std::move(members);
  json disc = json::array();
  for (const auto& d : o.discrepancies) {
    json e;
    e["listed"] = d.listed;
    e["canonical"] = d.canonical.str();
    e["kind"] = d.kind;
    e["brute_k"] = d.brute_k;
    e["brute_confirms"] = d.brute_confirms;
    disc.push_back(std::move(e));
  }
  j["discrepancies"] = std::move(disc);
  return j;
}

inline json to_json(const TaylorRow& r) {
  json j;
  j["s"] = r.s;
  j["p"] = r.p;
  j["q"] = r.q;
  j["theta"] = to_json(r.theta);
  j["delta"] = r.delta;
  j["l"] = r.ell.interval().lo.str();
  j["u"] = r.threshold_u;
  j["reference_u"] = r.reference_u;
  return j;
}

inline json to_json(const RealSupResult& r) {
  json j;
  j["value"] = to_json(r.value);
  j["closed_form"] = r.value.closed_form().present() ? json(r.value.closed_form().token())
                                                     : json(nullptr);
  j["witness_x"] = r.witness_x;
  return j;
}

inline json to_json(const TripleSupReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["u"] = row.u;
    e["expected"] = row.expect_above_three_halves ? ">three-halves" : row.expected.token();
    e["value"] = to_json(row.value);
    e["pass"] = row.pass;
    rows.push_back(std::move(e));
  }
  json j;
  j["rows"] = std::move(rows);
  j["all_pass"] = r.all_pass;
  return j;
}

inline json to_json(const MatrixSupResult& r) {
  json j;
  j["value"] = r.value;
  j["witness_n"] = r.witness_n;
  j["period"] = r.period;
  return j;
}

inline json to_json(const HarnessReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["name"] = row.name;
    e["pass"] = row.pass;
    e["sup"] = row.sup;
    e["k"] = row.k;
    e["dalembert_ok"] = row.dalembert_ok;
    if (!row.detail.empty()) e["detail"] = row.detail;
    rows.push_back(std::move(e));
  }
  json j;
  j["rows"] = std::move(rows);
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  return j;
}

}  // namespace cosrig
