// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

/// Line-oriented domain config:
///
///     # comment
///     shape box        (box | lshape | ball)
///     dims 33 33 33    (or a single value for a cube)
///     h 0.03125
///     radius 0.4       (ball only, optional)
DomainSpec parse_domain_config(std::istream& in);
DomainSpec parse_domain_config_text(const std::string& text);
std::string format_domain_config(const DomainSpec& spec);

/// Flat binary layout, host byte order:
///   int32 nx, ny, nz; float64 h; int32 shape_tag;
///   nx*ny*nz float64 values in row-major node order (k fastest), zero off the interior.
void write_field_binary(std::ostream& out, const ScalarField& u);
/// Reads one field record; the header must match `domain`.
ScalarField read_field_binary(std::istream& in, const DomainPtr& domain);

/// CSV with header `i,j,k,x,y,z,value`, one row per interior node.
void write_field_csv(std::ostream& out, const ScalarField& u);

/// Shortest decimal that round-trips a double.
std::string format_real(double value);

}  // namespace sharpbound
