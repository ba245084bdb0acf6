#pragma once

// JSON and CSV forms of every artifact. Rationals are written as
// ["num", "den"] pairs of decimal strings so that no precision is lost;
// readers also accept integers and "p/q" strings.

#include "continua/cantor.hpp"
#include "continua/quasi_attractor.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace continua::io {

// Keys keep insertion order, so dumps are stable and readable.
using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-space indented dump with a trailing newline; stable key order.
std::string dump(const json& j);
// Parses text, wrapping syntax errors in ParseError.
json parse_json(const std::string& text);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Interval& i);
json to_json(const OrientedInterval& w);
OrientedInterval oriented_from_json(const json& j);

json to_json(const PLHomeo& f);
PLHomeo plhomeo_from_json(const json& j);

json to_json(const TernaryIndex& idx);
TernaryIndex ternary_from_json(const json& j);

json to_json(const PWitness& w);
json to_json(const ConjugacyReport& r);
json to_json(const ShadowingSet& s);

json to_json(const YPoint& p);
YPoint ypoint_from_json(const json& j);
json to_json(const YModel& m);
YModel ymodel_from_json(const json& j);
json to_json(const YHomeo& g);
YHomeo yhomeo_from_json(const json& j);

json to_json(const Neighborhood& v);
json to_json(const QuasiAttractorCertificate& c);
json to_json(const GlobalShadowing& s);

// "index,x" rows with x as "num/den".
std::string to_csv(const IntervalOrbit& orbit);
IntervalOrbit interval_orbit_from_csv(const std::string& text);
// "index,arc,t" rows.
std::string to_csv(const YOrbit& orbit);
YOrbit y_orbit_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace continua::io
