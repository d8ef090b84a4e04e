#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fracperc/lattice.hpp"
#include "fracperc/line_ifs.hpp"
#include "fracperc/phase.hpp"
#include "fracperc/pressure.hpp"
#include "fracperc/simulator.hpp"
#include "fracperc/slice.hpp"
#include "fracperc/type_system.hpp"

namespace fracperc {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double, as used in every float field.
std::string format_double(double x);

Json to_json(const LineIFS& ifs);
Json to_json(const LatticeIFS& lattice);
Json to_json(const TypeSystem& ts);
Json to_json(const SpectralEnclosure& e);
Json to_json(const PhaseReport& report);
Json to_json(const PressureEstimate& p);
Json to_json(const LyapunovEstimate& l);
Json to_json(const ZeroMeasureEstimate& z);
Json to_json(const VerificationReport& r);
Json to_json(const InterfaceResult& r);

/// Parses {"kind":"line","L":..,"translations":[[t, n], ...]}. Translations are
/// normalized, so non-normal input is accepted and the applied rescale recorded.
LineIFS line_ifs_from_json(const Json& j);
/// Parses {"kind":"lattice","d":..,"L":..,"cells":[[...], ...]}.
LatticeIFS lattice_ifs_from_json(const Json& j);

using IfsDocument = std::variant<LineIFS, LatticeIFS>;
/// Dispatches on "kind". Throws InputError on any schema violation.
IfsDocument ifs_from_json(const Json& j);
IfsDocument ifs_from_text(const std::string& text);

/// name,theorem,value_exact,value_float,side,witness
std::string thresholds_csv(const PhaseReport& report);
/// t,n,value,method,std_error
std::string pressure_csv(const std::vector<PressureEstimate>& rows);
/// replica,retained_count,proj_measure,longest_run,extinct_level
std::string replicas_csv(const std::vector<ReplicaStats>& rows);

}  // namespace fracperc
