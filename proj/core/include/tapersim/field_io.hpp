#ifndef TAPERSIM_FIELD_IO_HPP
#define TAPERSIM_FIELD_IO_HPP

#include <iosfwd>
#include <string>

#include "tapersim/field.hpp"

namespace tapersim {

/// Formats a double with enough digits to round-trip, C locale, no
/// trailing noise. All CSV output goes through this so runs are
/// byte-reproducible.
std::string format_double(double v);

/// Complex field dump: header `x_um,y_um,re,im`, one row per sample,
/// row-major with x fastest.
void write_field_csv(const ScalarField& field, std::ostream& os);

/// Intensity dump: header `x_um,y_um,intensity`.
void write_intensity_csv(const IntensityProfile& profile, std::ostream& os);

/// Parses an `x_um,y_um,intensity` table written on a uniform row-major
/// grid back into an IntensityProfile.
IntensityProfile read_intensity_csv(std::istream& is);

/// Binary portable graymap (magic "P5", 8- or 16-bit samples). The
/// image carries no physical scale, so the pixel pitch comes from the
/// caller; the grid is centered on the image.
IntensityProfile read_pgm(std::istream& is, double pixel_pitch_um);

} // namespace tapersim

#endif
