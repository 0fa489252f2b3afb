// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/field_io.hpp"

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "sharpbound/error.hpp"

namespace sharpbound {

DomainSpec parse_domain_config(std::istream& in) {
  DomainSpec spec;
  bool have_shape = false, have_dims = false, have_h = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    const auto fail = [&](const std::string& why) {
      throw DomainError("domain config line " + std::to_string(line_no) + ": " + why);
    };
    if (key == "shape") {
      std::string name;
      if (!(words >> name)) fail("missing shape name");
      spec.shape = shape_from_string(name);
      have_shape = true;
    } else if (key == "dims") {
      std::vector<int> d;
      for (int v; words >> v;) d.push_back(v);
      if (d.size() == 1) d = {d[0], d[0], d[0]};
      if (d.size() != 3) fail("dims takes one or three integers");
      spec.dims = {d[0], d[1], d[2]};
      have_dims = true;
    } else if (key == "h") {
      if (!(words >> spec.h)) fail("h takes a real value");
      have_h = true;
    } else if (key == "radius") {
      double r = 0.0;
      if (!(words >> r)) fail("radius takes a real value");
      spec.radius = r;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_shape || !have_dims) throw DomainError("domain config needs 'shape' and 'dims'");
  // Unit-box default: nodes span [0, 1] along the first axis.
  if (!have_h) spec.h = 1.0 / (spec.dims[0] - 1);
  return spec;
}

DomainSpec parse_domain_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_domain_config(in);
}

std::string format_domain_config(const DomainSpec& spec) {
  std::ostringstream out;
  out << "shape " << to_string(spec.shape) << "\n"
      << "dims " << spec.dims[0] << " " << spec.dims[1] << " " << spec.dims[2] << "\n"
      << "h " << format_real(spec.h) << "\n";
  if (spec.radius) out << "radius " << format_real(*spec.radius) << "\n";
  return out.str();
}

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw DomainError("truncated field record");
  return value;
}

}  // namespace

void write_field_binary(std::ostream& out, const ScalarField& u) {
  const VoxelDomain& d = *u.domain();
  for (int n : d.dims()) put<std::int32_t>(out, n);
  put<double>(out, d.spacing());
  put<std::int32_t>(out, static_cast<std::int32_t>(d.shape()));
  std::vector<double> full(d.node_count(), 0.0);
  for (std::size_t a = 0; a < d.interior_count(); ++a)
    full[d.flat(d.node(static_cast<int>(a)))] = u[static_cast<int>(a)];
  out.write(reinterpret_cast<const char*>(full.data()),
            static_cast<std::streamsize>(full.size() * sizeof(double)));
}

ScalarField read_field_binary(std::istream& in, const DomainPtr& domain) {
  const VoxelDomain& d = *domain;
  for (int axis = 0; axis < 3; ++axis)
    if (get<std::int32_t>(in) != d.dims()[axis]) throw DomainError("field dims do not match domain");
  if (get<double>(in) != d.spacing()) throw DomainError("field spacing does not match domain");
  if (get<std::int32_t>(in) != static_cast<std::int32_t>(d.shape()))
    throw DomainError("field shape tag does not match domain");
  std::vector<double> full(d.node_count());
  if (!in.read(reinterpret_cast<char*>(full.data()),
               static_cast<std::streamsize>(full.size() * sizeof(double))))
    throw DomainError("truncated field payload");
  std::vector<double> values(d.interior_count());
  const auto mask = d.mask();
  for (std::size_t f = 0; f < full.size(); ++f)
    if (!mask[f] && full[f] != 0.0) throw DomainError("nonzero value on a boundary node");
  for (std::size_t a = 0; a < values.size(); ++a)
    values[a] = full[d.flat(d.node(static_cast<int>(a)))];
  return ScalarField(domain, std::move(values));
}

void write_field_csv(std::ostream& out, const ScalarField& u) {
  const VoxelDomain& d = *u.domain();
  out << "i,j,k,x,y,z,value\n";
  for (std::size_t a = 0; a < d.interior_count(); ++a) {
    const Index3 p = d.node(static_cast<int>(a));
    const auto x = d.position(p);
    out << p.i << ',' << p.j << ',' << p.k << ',' << format_real(x[0]) << ','
        << format_real(x[1]) << ',' << format_real(x[2]) << ','
        << format_real(u[static_cast<int>(a)]) << '\n';
  }
}

std::string format_real(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace sharpbound
