#pragma once

// Text formats: field files, level-4 and level-2 point files, curve files.
// Blank lines and `#` comments are ignored everywhere.

#include <filesystem>
#include <string>
#include <string_view>

#include "rmtheta/field.hpp"
#include "rmtheta/pipeline.hpp"
#include "rmtheta/theta_point.hpp"

namespace rmtheta {

/// Throws Io.
std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view text);

/// `prime <p>` and an optional `ext <name> <c0> ... <cn>`.
Field parse_field(std::string_view text, bool check_irreducible = false);
std::string format_field(const Field &f);

/// Lines `a <i> <j> <element>`: the ten reduced indexes, or all sixteen.
ThetaPoint4 parse_point4(std::string_view text, const Field &f);
/// The ten reduced coordinates.
std::string format_point4(const ThetaPoint4 &p);

/// Lines `b <i> <j> <element>` with i, j in {0, 1}.
ThetaPoint2 parse_point2(std::string_view text, const Field &f);
std::string format_point2(const ThetaPoint2 &b);

/// `rosenhain <l1> <l2> <l3>` or `branch <e1> ... <e6>`.
RosenhainCurve parse_curve(std::string_view text, const Field &f);
std::string format_curve(const RosenhainCurve &c);

} // namespace rmtheta
