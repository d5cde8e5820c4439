#include "tapersim/field_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tapersim/errors.hpp"

namespace tapersim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_field_csv(const ScalarField& field, std::ostream& os) {
  const Grid2D& g = field.grid();
  os << "x_um,y_um,re,im\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const complexd v = field.at(i, j);
      os << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
         << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

void write_intensity_csv(const IntensityProfile& profile, std::ostream& os) {
  const Grid2D& g = profile.grid();
  os << "x_um,y_um,intensity\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      os << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
         << format_double(profile.at(i, j)) << '\n';
}

namespace {

struct CsvRow {
  double x, y, v;
};

double parse_field(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || end == nullptr)
    throw config_error(std::string("malformed CSV ") + what + ": '" + s + "'");
  return v;
}

} // namespace

IntensityProfile read_intensity_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw config_error("intensity CSV: empty file");
  // header row is required
  if (line.find("intensity") == std::string::npos)
    throw config_error("intensity CSV: missing x_um,y_um,intensity header");

  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string sx, sy, sv;
    if (!std::getline(ls, sx, ',') || !std::getline(ls, sy, ',') ||
        !std::getline(ls, sv))
      throw config_error("intensity CSV: short row '" + line + "'");
    rows.push_back({parse_field(sx, "x"), parse_field(sy, "y"),
                    parse_field(sv, "intensity")});
  }
  if (rows.empty())
    throw config_error("intensity CSV: no data rows");

  // Row-major with x fastest: nx = index where x wraps around.
  std::size_t nx = rows.size();
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].x < rows[k - 1].x) {
      nx = k;
      break;
    }
  if (rows.size() % nx != 0)
    throw config_error("intensity CSV: ragged grid");
  const std::size_t ny = rows.size() / nx;
  if (nx < 8 || ny < 8)
    throw config_error("intensity CSV: grid smaller than 8x8");

  Grid2D g;
  g.nx = static_cast<int>(nx);
  g.ny = static_cast<int>(ny);
  g.x0 = rows[0].x;
  g.y0 = rows[0].y;
  g.dx = (rows[nx - 1].x - rows[0].x) / (nx - 1);
  g.dy = (rows[rows.size() - 1].y - rows[0].y) / (ny - 1);
  if (g.dx <= 0.0 || g.dy <= 0.0)
    throw config_error("intensity CSV: non-increasing coordinates");

  std::vector<double> values(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    values[k] = std::max(0.0, rows[k].v);
  return IntensityProfile(g, std::move(values));
}

IntensityProfile read_pgm(std::istream& is, double pixel_pitch_um) {
  if (pixel_pitch_um <= 0.0)
    throw config_error("read_pgm: pixel pitch must be positive");

  auto next_token = [&is]() -> std::string {
    std::string tok;
    while (true) {
      const int c = is.peek();
      if (c == EOF)
        throw config_error("read_pgm: truncated header");
      if (c == '#') { // comment to end of line
        std::string skip;
        std::getline(is, skip);
        continue;
      }
      if (std::isspace(c)) {
        is.get();
        continue;
      }
      break;
    }
    is >> tok;
    return tok;
  };

  if (next_token() != "P5")
    throw config_error("read_pgm: not a binary PGM (magic P5 expected)");
  const int width = std::atoi(next_token().c_str());
  const int height = std::atoi(next_token().c_str());
  const long maxval = std::atol(next_token().c_str());
  if (width < 8 || height < 8)
    throw config_error("read_pgm: image smaller than 8x8");
  if (maxval <= 0 || maxval > 65535)
    throw config_error("read_pgm: unsupported maxval");
  is.get(); // single whitespace after maxval

  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<double> values(n);
  if (maxval < 256) {
    std::vector<unsigned char> raw(n);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is.gcount()) != n)
      throw config_error("read_pgm: truncated pixel data");
    for (std::size_t k = 0; k < n; ++k)
      values[k] = raw[k];
  } else {
    // 16-bit samples are big-endian per the netpbm format.
    std::vector<unsigned char> raw(2 * n);
    is.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(2 * n));
    if (static_cast<std::size_t>(is.gcount()) != 2 * n)
      throw config_error("read_pgm: truncated pixel data");
    for (std::size_t k = 0; k < n; ++k)
      values[k] = raw[2 * k] * 256.0 + raw[2 * k + 1];
  }

  Grid2D g;
  g.nx = width;
  g.ny = height;
  g.dx = g.dy = pixel_pitch_um;
  g.x0 = -pixel_pitch_um * (width - 1) / 2.0;
  g.y0 = -pixel_pitch_um * (height - 1) / 2.0;
  return IntensityProfile(g, std::move(values));
}

} // namespace tapersim
