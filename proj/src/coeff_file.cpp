#include "twoml/coeff_file.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "twoml/error.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw Error(Errc::BadFormat, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_field(std::ostream& out, const CoefficientField& field) {
  out << "# format_version=1\n";
  out << "# x0=" << format_double(field.x0(), 17) << "\n";
  out << "# j_max=" << field.j_max() << "\n";
  out << "# curve=" << field.curve_descriptor() << "\n";
  out << "# scheme=" << field.scheme_tag() << "\n";
  field.for_each([&](const Coefficient& c) {
    out << c.j << ' ' << c.k << ' ' << c.sign << ' ' << format_double(c.log2_magnitude, 17)
        << '\n';
  });
}

std::string serialize_field(const CoefficientField& field) {
  std::ostringstream out;
  write_field(out, field);
  return out.str();
}

CoefficientField parse_field(std::istream& in) {
  std::map<std::string, std::string> meta;
  struct Row {
    int j;
    std::int64_t k;
    int sign;
    double log2mag;
    std::size_t line_no;
  };
  std::vector<Row> rows;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    std::istringstream fields(t);
    std::string tj;
    std::string tk;
    std::string ts;
    std::string tv;
    std::string extra;
    if (!(fields >> tj >> tk >> ts >> tv) || (fields >> extra)) {
      bad_line(line_no, "expected 'j k sign log2mag'");
    }
    const auto j = parse_integer(tj);
    const auto k = parse_integer(tk);
    const auto s = parse_integer(ts);
    const auto v = parse_double(tv);
    if (!j || !k || !s || !v) bad_line(line_no, "unparsable number");
    rows.push_back({static_cast<int>(*j), *k, static_cast<int>(*s), *v, line_no});
  }

  if (meta["format_version"] != "1") {
    throw Error(Errc::BadFormat, "missing or unsupported format_version");
  }
  const auto x0 = parse_double(meta["x0"]);
  const auto j_max = parse_integer(meta["j_max"]);
  if (!x0 || !j_max) throw Error(Errc::BadFormat, "header needs x0 and j_max");

  CoefficientField field(*x0, static_cast<int>(*j_max));
  field.set_curve_descriptor(meta["curve"]);
  field.set_scheme_tag(meta["scheme"]);
  for (const Row& r : rows) {
    try {
      field.set(r.j, r.k, r.log2mag, r.sign);
    } catch (const Error& e) {
      bad_line(r.line_no, e.what());
    }
  }
  return field;
}

CoefficientField parse_field(const std::string& text) {
  std::istringstream in(text);
  return parse_field(in);
}

CoefficientField read_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  return parse_field(in);
}

void write_field_file(const std::string& path, const CoefficientField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  write_field(out, field);
  if (!out) throw Error(Errc::Io, "write to '" + path + "' failed");
}

}  // namespace twoml
