/// @file thermo_parser.hpp
/// @brief Parsers for thermodynamic data files: fixed-column CHEMKIN THERMO
///        sections and a simple key-value format for fictitious species.

#pragma once

#include "thermo.hpp"

#include <map>
#include <string>

namespace dgmc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedRecord : ParseError {
  using ParseError::ParseError;
};
struct BadNumber : ParseError {
  using ParseError::ParseError;
};
struct DuplicateSpecies : ParseError {
  using ParseError::ParseError;
};
struct SpeciesNotFound : ParseError {
  using ParseError::ParseError;
};

struct ThermoDatabase {
  std::vector<SpeciesThermo> species;
  double t_low_default = 300.0;
  double t_mid_default = 1000.0;
  double t_high_default = 5000.0;

  const SpeciesThermo& lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
};

/// Parses a THERMO-section text: a header line with the default temperature
/// triplet followed by 4-line records (name, composition, and ranges on the
/// line marked "1"; 14 coefficients in fixed 15-character fields on lines
/// 2-4). Molar masses come from the elemental composition via a built-in
/// atomic-mass table unless overridden.
ThermoDatabase parse_chemkin_thermo(const std::string& text,
                                    const std::map<std::string, double>& molar_mass_override = {});

/// Parses the auxiliary key-value format:
///   species NAME
///   W <kg/mol>
///   T_range <low> <high>
///   cp_over_R <constant molar cp / R0>        (single degenerate interval)
/// Blank lines and '#' comments are ignored; 'species' starts a new record.
ThermoDatabase parse_simple_thermo(const std::string& text);

/// Dispatches on content: a THERMO header selects the CHEMKIN parser,
/// anything else the key-value parser.
ThermoDatabase parse_thermo_text(const std::string& text,
                                 const std::map<std::string, double>& molar_mass_override = {});

/// Reads and parses a thermo file from disk.
ThermoDatabase load_thermo_file(const std::string& path,
                                const std::map<std::string, double>& molar_mass_override = {});

/// Writes a database back out in CHEMKIN fixed-column form (two-interval
/// entries) so that parse(serialize(parse(text))) is stable.
std::string serialize_chemkin_thermo(const ThermoDatabase& db);

/// Standard atomic mass (kg/mol) for an element symbol; throws ParseError for
/// unknown symbols.
double atomic_mass(const std::string& element);

} // namespace dgmc
