#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings of sequences, operators, loops, classes and cocycles.
 *
 *   seq      {"left":[..],"core":[..],"core_offset":k,"right":[..]}
 *   op       {"band":L,"diagonals":{"d":seq,...}}   complex entries: x or [re,im]
 *   loop     {"shift":s,"exponents":seq,"phase":[re,im]}
 *   cocycle  {"base":"circle|sphere|torus","transitions":[...]}
 *   rational "p/q" (or "p")
 *
 * Malformed input raises Error(InvalidInput).
 */

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hbe/bandop.hpp"
#include "hbe/bundle.hpp"
#include "hbe/coinv.hpp"
#include "hbe/loop.hpp"
#include "hbe/rational.hpp"

namespace hbe::json_io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, "malformed JSON: " + what);
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars

inline json encode(const Rational& q) { return to_string(q); }

inline Rational decode_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) detail::bad("rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

inline json encode(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

inline Complex decode_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  detail::bad("complex entry must be a number or [re, im]");
}

// ---------------------------------------------------------------------------
// Sequences

inline json encode(const IntSeq& a) {
  return {{"left", a.left()}, {"core", a.core()}, {"core_offset", a.core_offset()},
          {"right", a.right()}};
}

inline json encode(const CSeq& a) {
  auto list = [](const std::vector<Complex>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(encode(z));
    return out;
  };
  return {{"left", list(a.left())}, {"core", list(a.core())}, {"core_offset", a.core_offset()},
          {"right", list(a.right())}};
}

template <class T, class F>
EPSeq<T> decode_seq(const json& j, F entry) {
  auto list = [&](const char* key, bool optional) {
    std::vector<T> out;
    if (optional && !j.contains(key)) return out;
    const json& arr = detail::field(j, key);
    if (!arr.is_array()) detail::bad(std::string("\"") + key + "\" must be an array");
    for (const auto& e : arr) out.push_back(entry(e));
    return out;
  };
  const Index offset = j.contains("core_offset") ? detail::as_int(j["core_offset"], "core_offset") : 0;
  try {
    return EPSeq<T>(list("left", false), list("core", true), offset, list("right", false));
  } catch (const Error& e) {
    detail::bad(e.what());
  }
}

inline IntSeq decode_int_seq(const json& j) {
  return decode_seq<std::int64_t>(j, [](const json& e) { return detail::as_int(e, "entry"); });
}

inline CSeq decode_complex_seq(const json& j) {
  return decode_seq<Complex>(j, [](const json& e) { return decode_complex(e); });
}

// ---------------------------------------------------------------------------
// Operators and loops

inline json encode(const EPBandOp& op) {
  json diags = json::object();
  for (const auto& [d, seq] : op.diagonals()) diags[std::to_string(d)] = encode(seq);
  return {{"band", op.band()}, {"diagonals", diags}};
}

inline EPBandOp decode_op(const json& j) {
  const Index band = detail::as_int(detail::field(j, "band"), "band");
  const json& diags = detail::field(j, "diagonals");
  if (!diags.is_object()) detail::bad("\"diagonals\" must be an object");
  std::map<Index, CSeq> out;
  for (const auto& [key, value] : diags.items()) {
    Index d = 0;
    try {
      std::size_t used = 0;
      d = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      detail::bad("diagonal key \"" + key + "\" is not an integer");
    }
    out.emplace(d, decode_complex_seq(value));
  }
  try {
    return EPBandOp(band, std::move(out));
  } catch (const Error& e) {
    detail::bad(e.what());
  }
}

inline json encode(const MonomialLoop& loop) {
  return {{"shift", loop.shift_power},
          {"exponents", encode(loop.exponents)},
          {"phase", json::array({loop.phase.real(), loop.phase.imag()})}};
}

inline MonomialLoop decode_loop(const json& j) {
  MonomialLoop loop;
  if (j.contains("shift")) loop.shift_power = detail::as_int(j["shift"], "shift");
  loop.exponents = decode_int_seq(detail::field(j, "exponents"));
  if (j.contains("phase")) loop.phase = decode_complex(j["phase"]);
  if (!on_unit_circle(loop.phase, 1e-12)) detail::bad("loop phase must be unimodular");
  return loop;
}

// ---------------------------------------------------------------------------
// Classes

inline json encode(const CoinvClass& c) {
  return {{"mu_minus", encode(c.mu_minus)}, {"mu_plus", encode(c.mu_plus)}};
}

inline CoinvClass decode_class(const json& j) {
  return {decode_rational(detail::field(j, "mu_minus")), decode_rational(detail::field(j, "mu_plus"))};
}

inline json encode(const Functional& f) {
  return {{"c_minus", encode(f.c_minus)}, {"c_plus", encode(f.c_plus)}};
}

// ---------------------------------------------------------------------------
// Cocycles

inline json encode(const EndCocycle& c) {
  json transitions = json::array();
  switch (c.base()) {
    case BaseComplex::CircleTwoArc:
      transitions.push_back(encode(c.circle_transitions().on_a));
      transitions.push_back(encode(c.circle_transitions().on_b));
      break;
    case BaseComplex::SphereTwoDisc:
      transitions.push_back(encode(c.equator()));
      break;
    case BaseComplex::TorusFourPatch:
      for (const auto& p : std::get<TorusTransitions>(c.data()))
        transitions.push_back({{"windings", p.windings}});
      break;
  }
  return {{"base", to_string(c.base())}, {"transitions", transitions}};
}

inline EndCocycle decode_cocycle(const json& j) {
  const json& base = detail::field(j, "base");
  const json& tr = detail::field(j, "transitions");
  if (!base.is_string() || !tr.is_array()) detail::bad("cocycle needs a base name and a list");
  const auto name = base.get<std::string>();
  if (name == "circle") {
    if (tr.size() != 2) detail::bad("circle cocycle needs two transitions");
    return EndCocycle::circle(decode_op(tr[0]), decode_op(tr[1]));
  }
  if (name == "sphere") {
    if (tr.size() != 1) detail::bad("sphere cocycle needs one equator loop");
    return EndCocycle::sphere(decode_loop(tr[0]));
  }
  if (name == "torus") {
    if (tr.size() != 4) detail::bad("torus cocycle needs four transitions");
    TorusTransitions patches;
    for (std::size_t k = 0; k < 4; ++k) {
      const json& w = detail::field(tr[k], "windings");
      if (!w.is_array() || w.size() != 2) detail::bad("windings must be a pair");
      patches[k].windings = {static_cast<int>(detail::as_int(w[0], "winding")),
                             static_cast<int>(detail::as_int(w[1], "winding"))};
    }
    return EndCocycle::torus(patches);
  }
  detail::bad("unknown base \"" + name + "\"");
}

}  // namespace hbe::json_io
