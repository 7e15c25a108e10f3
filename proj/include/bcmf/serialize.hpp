#pragma once

// CSV and JSON emission. CSV uses a header row, LF line endings and %.17g reals;
// JSON uses insertion-ordered objects so output is byte-stable.

#include <string>

#include <json.hpp>

#include "bcmf/expansions.hpp"
#include "bcmf/measure.hpp"
#include "bcmf/spectrum.hpp"
#include "bcmf/words.hpp"

namespace bcmf {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values print as nan, inf, -inf.
std::string format_real(double v);

Json to_json(const Enclosure& e);
Json to_json(const EPSequence& seq);
Json to_json(const Rational& r);
Json to_json(const CurveMeta& meta);
/// {"meta": …, "points": [{"q","alpha","f"}…]}; NaN q becomes null.
Json to_json(const SpectrumCurve& curve);

/// Header `q,alpha,f`.
std::string to_csv(const SpectrumCurve& curve);
/// Header `j,center,lo,hi`.
std::string to_csv(const MeshProfile& profile);

/// Compact dump followed by a single LF.
std::string dump(const Json& doc);

/// Writes `text` to `path`, throwing bcmf::Error with the path on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace bcmf
