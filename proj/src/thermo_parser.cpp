#include "thermo_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dgmc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

double parse_double_field(std::string_view field, const std::string& context) {
  const std::string t = trim(field);
  if (t.empty()) throw BadNumber("empty numeric field in " + context);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw BadNumber("unparseable field '" + t + "' in " + context);
  }
  if (pos != t.size()) throw BadNumber("trailing garbage in field '" + t + "' in " + context);
  return v;
}

std::string_view safe_sub(std::string_view s, std::size_t pos, std::size_t len) {
  if (pos >= s.size()) return {};
  return s.substr(pos, std::min(len, s.size() - pos));
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

// Elemental composition fields on line 1, columns 25-44: four (symbol, count)
// pairs of 2+3 characters.
double molar_mass_from_composition(std::string_view line, const std::string& species) {
  double mass = 0.0;
  bool any = false;
  for (int f = 0; f < 4; ++f) {
    const std::size_t pos = 24 + 5 * f;
    const std::string sym = trim(safe_sub(line, pos, 2));
    const std::string cnt = trim(safe_sub(line, pos + 2, 3));
    if (sym.empty() || sym == "0") continue;
    if (cnt.empty()) continue;
    double n = 0.0;
    try {
      n = std::stod(cnt);
    } catch (const std::exception&) {
      throw BadNumber("bad element count '" + cnt + "' for species " + species);
    }
    if (n == 0.0) continue;
    mass += atomic_mass(upper(sym)) * n;
    any = true;
  }
  if (!any || mass <= 0.0) {
    throw MalformedRecord("species " + species +
                          ": no elemental composition and no molar-mass override");
  }
  return mass;
}

void validate_species(const SpeciesThermo& s) {
  if (s.molar_mass <= 0.0) throw MalformedRecord("species " + s.name + ": nonpositive molar mass");
  if (s.intervals.empty()) throw MalformedRecord("species " + s.name + ": no intervals");
  for (std::size_t k = 0; k < s.intervals.size(); ++k) {
    const ThermoInterval& iv = s.intervals[k];
    if (!(iv.t_low < iv.t_high)) {
      throw MalformedRecord("species " + s.name + ": empty temperature interval");
    }
    if (k > 0 && s.intervals[k - 1].t_high != iv.t_low) {
      throw MalformedRecord("species " + s.name + ": intervals not contiguous");
    }
  }
}

} // namespace

const SpeciesThermo& ThermoDatabase::lookup(std::string_view name) const {
  const std::string key = trim(name);
  for (const SpeciesThermo& s : species) {
    if (s.name == key) return s;
  }
  std::string names;
  for (const SpeciesThermo& s : species) {
    if (!names.empty()) names += ", ";
    names += s.name;
  }
  throw SpeciesNotFound("species '" + key + "' not found; available: [" + names + "]");
}

bool ThermoDatabase::contains(std::string_view name) const {
  const std::string key = trim(name);
  for (const SpeciesThermo& s : species) {
    if (s.name == key) return true;
  }
  return false;
}

ThermoDatabase parse_chemkin_thermo(const std::string& text,
                                    const std::map<std::string, double>& molar_mass_override) {
  ThermoDatabase db;
  const std::vector<std::string> lines = split_lines(text);
  std::size_t i = 0;

  // In-file molar-mass overrides: comment lines of the form "! W NAME value".
  std::map<std::string, double> overrides = molar_mass_override;
  for (const std::string& line : lines) {
    const std::string t = trim(line);
    if (t.size() < 4 || t[0] != '!') continue;
    std::istringstream iss(t.substr(1));
    std::string key, name;
    double w = 0.0;
    if (iss >> key >> name >> w && key == "W" && !overrides.count(name)) overrides[name] = w;
  }

  // Locate the THERMO header (optionally preceded by comments/blank lines).
  while (i < lines.size()) {
    const std::string t = upper(trim(lines[i]));
    if (t.rfind("THERMO", 0) == 0) break;
    if (!t.empty() && t[0] != '!') {
      throw MalformedRecord("expected THERMO header, got '" + trim(lines[i]) + "'");
    }
    ++i;
  }
  if (i == lines.size()) throw MalformedRecord("missing THERMO header");
  ++i;

  // Optional global temperature triplet.
  if (i < lines.size()) {
    std::istringstream iss(lines[i]);
    double lo, mid, hi;
    if (iss >> lo >> mid >> hi) {
      db.t_low_default = lo;
      db.t_mid_default = mid;
      db.t_high_default = hi;
      ++i;
    }
  }

  while (i < lines.size()) {
    const std::string head = trim(lines[i]);
    if (head.empty() || head[0] == '!') {
      ++i;
      continue;
    }
    if (upper(head).rfind("END", 0) == 0) break;

    const std::string& l1 = lines[i];
    const std::string name = trim(safe_sub(l1, 0, 18)).substr(0, 18);
    const std::string species_name = name.substr(0, name.find_first_of(" \t"));
    if (species_name.empty()) throw MalformedRecord("record with empty species name");
    if (trim(safe_sub(l1, 79, 1)) != "1") {
      throw MalformedRecord("species " + species_name + ": line 1 missing column-80 marker '1'");
    }
    if (i + 3 >= lines.size()) {
      throw MalformedRecord("species " + species_name + ": truncated record (needs 4 lines)");
    }
    for (int k = 2; k <= 4; ++k) {
      const std::string marker = trim(safe_sub(lines[i + k - 1], 79, 1));
      if (marker != std::to_string(k)) {
        throw MalformedRecord("species " + species_name + ": missing line '" + std::to_string(k) +
                              "' marker");
      }
    }

    SpeciesThermo s;
    s.name = species_name;

    double t_low = db.t_low_default, t_high = db.t_high_default, t_mid = db.t_mid_default;
    {
      const std::string f_lo = trim(safe_sub(l1, 45, 10));
      const std::string f_hi = trim(safe_sub(l1, 55, 10));
      const std::string f_mid = trim(safe_sub(l1, 65, 8));
      if (!f_lo.empty()) t_low = parse_double_field(f_lo, "T_low of " + species_name);
      if (!f_hi.empty()) t_high = parse_double_field(f_hi, "T_high of " + species_name);
      if (!f_mid.empty()) t_mid = parse_double_field(f_mid, "T_mid of " + species_name);
    }

    // 14 coefficients, 5+5+4 over lines 2-4: first 7 upper interval, last 7 lower.
    std::array<double, 14> c{};
    int idx = 0;
    for (int k = 1; k <= 3; ++k) {
      const std::string& line = lines[i + k];
      const int nfields = (k == 3) ? 4 : 5;
      for (int f = 0; f < nfields; ++f) {
        c[idx] = parse_double_field(safe_sub(line, 15 * f, 15),
                                    "coefficient " + std::to_string(idx + 1) + " of " + species_name);
        ++idx;
      }
    }

    ThermoInterval low;
    low.t_low = t_low;
    low.t_high = t_mid;
    for (int k = 0; k < 7; ++k) low.a[k] = c[7 + k];
    ThermoInterval high;
    high.t_low = t_mid;
    high.t_high = t_high;
    for (int k = 0; k < 7; ++k) high.a[k] = c[k];
    s.intervals = {low, high};

    if (auto it = overrides.find(species_name); it != overrides.end()) {
      s.molar_mass = it->second;
    } else {
      s.molar_mass = molar_mass_from_composition(l1, species_name);
    }

    validate_species(s);
    for (const SpeciesThermo& prev : db.species) {
      if (prev.name == s.name) throw DuplicateSpecies("duplicate species " + s.name);
    }
    db.species.push_back(std::move(s));
    i += 4;
  }
  return db;
}

ThermoDatabase parse_simple_thermo(const std::string& text) {
  ThermoDatabase db;
  SpeciesThermo cur;
  double t_low = 1.0, t_high = 1e6, cp_over_R = 0.0, h_offset_over_R = 0.0;
  bool open = false;

  auto flush = [&]() {
    if (!open) return;
    ThermoInterval iv;
    iv.t_low = t_low;
    iv.t_high = t_high;
    iv.a = {cp_over_R, 0.0, 0.0, 0.0, 0.0, h_offset_over_R, 0.0};
    cur.intervals = {iv};
    validate_species(cur);
    for (const SpeciesThermo& prev : db.species) {
      if (prev.name == cur.name) throw DuplicateSpecies("duplicate species " + cur.name);
    }
    db.species.push_back(cur);
    cur = {};
    t_low = 1.0;
    t_high = 1e6;
    cp_over_R = 0.0;
    h_offset_over_R = 0.0;
    open = false;
  };

  for (const std::string& raw : split_lines(text)) {
    std::string line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream iss(line);
    std::string key;
    if (!(iss >> key)) continue;
    if (key == "species") {
      flush();
      if (!(iss >> cur.name)) throw MalformedRecord("'species' line without a name");
      open = true;
    } else if (!open) {
      throw MalformedRecord("key '" + key + "' before any 'species' line");
    } else if (key == "W") {
      if (!(iss >> cur.molar_mass)) throw BadNumber("bad W for species " + cur.name);
    } else if (key == "T_range") {
      if (!(iss >> t_low >> t_high)) throw BadNumber("bad T_range for species " + cur.name);
    } else if (key == "cp_over_R") {
      if (!(iss >> cp_over_R)) throw BadNumber("bad cp_over_R for species " + cur.name);
    } else if (key == "h_offset_over_R") {
      if (!(iss >> h_offset_over_R)) throw BadNumber("bad h_offset_over_R for species " + cur.name);
    } else {
      throw MalformedRecord("unknown key '" + key + "' for species " + cur.name);
    }
  }
  flush();
  return db;
}

ThermoDatabase parse_thermo_text(const std::string& text,
                                 const std::map<std::string, double>& molar_mass_override) {
  for (const std::string& line : split_lines(text)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '!' || t[0] == '#') continue;
    if (upper(t).rfind("THERMO", 0) == 0) return parse_chemkin_thermo(text, molar_mass_override);
    break;
  }
  return parse_simple_thermo(text);
}

ThermoDatabase load_thermo_file(const std::string& path,
                                const std::map<std::string, double>& molar_mass_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open thermo file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_thermo_text(buf.str(), molar_mass_override);
}

std::string serialize_chemkin_thermo(const ThermoDatabase& db) {
  std::string out;
  char buf[160];
  // Element fields are not reconstructed; molar masses travel as in-file
  // overrides so the round trip is exact.
  for (const SpeciesThermo& s : db.species) {
    std::snprintf(buf, sizeof(buf), "! W %s %.17g\n", s.name.c_str(), s.molar_mass);
    out += buf;
  }
  out += "THERMO\n";
  std::snprintf(buf, sizeof(buf), "%10.3f%10.3f%10.3f\n", db.t_low_default, db.t_mid_default,
                db.t_high_default);
  out += buf;
  for (const SpeciesThermo& s : db.species) {
    if (s.intervals.size() != 2) {
      throw ParseError("serialize_chemkin_thermo: species " + s.name +
                       " does not have exactly two intervals");
    }
    const ThermoInterval& lo = s.intervals[0];
    const ThermoInterval& hi = s.intervals[1];
    std::string l1 = s.name;
    l1.resize(24, ' ');
    l1.resize(44, ' ');
    l1 += 'G';
    std::snprintf(buf, sizeof(buf), "%10.3f%10.3f%8.3f", lo.t_low, hi.t_high, lo.t_high);
    l1 += buf;
    l1.resize(79, ' ');
    l1 += '1';
    out += l1 + "\n";

    std::array<double, 14> c{};
    for (int k = 0; k < 7; ++k) c[k] = hi.a[k];
    for (int k = 0; k < 7; ++k) c[7 + k] = lo.a[k];
    int idx = 0;
    for (int line = 2; line <= 4; ++line) {
      std::string l;
      const int nfields = (line == 4) ? 4 : 5;
      for (int f = 0; f < nfields; ++f) {
        std::snprintf(buf, sizeof(buf), "% .8E", c[idx++]);
        l += buf;
      }
      l.resize(79, ' ');
      l += static_cast<char>('0' + line);
      out += l + "\n";
    }
  }
  out += "END\n";
  return out;
}

double atomic_mass(const std::string& element) {
  // kg/mol, CODATA-style standard atomic weights for common combustion elements.
  if (element == "H") return 1.008e-3;
  if (element == "HE") return 4.002602e-3;
  if (element == "C") return 12.011e-3;
  if (element == "N") return 14.007e-3;
  if (element == "O") return 15.999e-3;
  if (element == "F") return 18.998403e-3;
  if (element == "NE") return 20.1797e-3;
  if (element == "S") return 32.06e-3;
  if (element == "CL") return 35.45e-3;
  if (element == "AR") return 39.95e-3;
  throw ParseError("unknown element symbol '" + element + "'");
}

} // namespace dgmc
