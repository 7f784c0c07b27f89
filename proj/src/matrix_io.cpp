#include "liebcheck/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace liebcheck {

using nlohmann::json;

json matrix_to_json(const HermitianMatrix& m) {
  const Index n = m.dim();
  json re = json::array();
  json im = json::array();
  bool real = true;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
      if (m(i, j).imag() != 0.0) real = false;
    }
  }
  json out = {{"dim", n}, {"re", std::move(re)}};
  if (!real) out["im"] = std::move(im);
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& context, const std::string& what) {
  throw ParseError(context + ": " + what);
}

std::vector<double> read_entries(const json& j, const char* field, std::size_t count,
                                 const std::string& context) {
  const json& arr = j.at(field);
  if (!arr.is_array()) parse_fail(context, std::string("field \"") + field + "\" must be an array");
  if (arr.size() != count) {
    std::ostringstream os;
    os << "field \"" << field << "\" has " << arr.size() << " entries, expected " << count;
    parse_fail(context, os.str());
  }
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!arr[k].is_number()) {
      std::ostringstream os;
      os << "field \"" << field << "\" entry " << k << " is not a number";
      parse_fail(context, os.str());
    }
    const double v = arr[k].get<double>();
    if (!std::isfinite(v)) parse_fail(context, std::string("non-finite entry in \"") + field + "\"");
    out.push_back(v);
  }
  return out;
}

}  // namespace

HermitianMatrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) parse_fail(context, "matrix must be a JSON object");
  if (!j.contains("dim")) parse_fail(context, "missing field \"dim\"");
  if (!j.contains("re")) parse_fail(context, "missing field \"re\"");
  const json& dim_field = j.at("dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    parse_fail(context, "field \"dim\" must be a positive integer");
  }
  const auto n = static_cast<Index>(dim_field.get<long long>());
  const auto count = static_cast<std::size_t>(n * n);

  const std::vector<double> re = read_entries(j, "re", count, context);
  std::vector<double> im(count, 0.0);
  if (j.contains("im")) im = read_entries(j, "im", count, context);

  ComplexMatrix m(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      const auto k = static_cast<std::size_t>(r * n + c);
      m(r, c) = Complex(re[k], im[k]);
    }
  try {
    return HermitianMatrix::symmetrize(m);
  } catch (const NotHermitian& e) {
    parse_fail(context, std::string("fields \"re\"/\"im\": ") + e.what());
  }
}

HermitianMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return matrix_from_json(j, path.string());
}

void write_matrix(const HermitianMatrix& m, const std::filesystem::path& path) {
  write_text_atomic(path, canonical_dump(matrix_to_json(m)));
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw IoError(tmp.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(path.string() + ": cannot move report into place");
  }
}

}  // namespace liebcheck
