#pragma once

#include <iosfwd>
#include <string>

#include "twoml/field.hpp"

namespace twoml {

/// Text coefficient format, version 1:
///
///   # format_version=1
///   # x0=<x0>
///   # j_max=<j_max>
///   # curve=<descriptor>
///   # scheme=<tag>
///   j k sign log2mag
///
/// Magnitudes carry 17 significant digits so a parse/serialize cycle is bit-identical.
void write_field(std::ostream& out, const CoefficientField& field);
std::string serialize_field(const CoefficientField& field);

/// BadFormat on malformed input, naming the line.
CoefficientField parse_field(std::istream& in);
CoefficientField parse_field(const std::string& text);

/// Io when the file cannot be opened or written.
CoefficientField read_field_file(const std::string& path);
void write_field_file(const std::string& path, const CoefficientField& field);

}  // namespace twoml
