#include "magloc/magnetics.hpp"

#include <cmath>

namespace magloc {
namespace {

struct SourceGeometry {
  Vec3 n;     // unit vector from source to evaluation point
  double d;   // distance, meters
};

SourceGeometry source_geometry(const Epm& epm, const Vec3& p,
                               std::size_t index) {
  const Vec3 r = p - epm.position;
  const double d = r.norm();
  if (d < constants::kMinSourceDistance) {
    throw CoincidentSourceError(index, d);
  }
  return {r / d, d};
}

}  // namespace

Vec3 dipole_field(const Epm& epm, const Vec3& p) {
  const auto [n, d] = source_geometry(epm, p, 0);
  const double scale = constants::kMu0 / (4.0 * M_PI * d * d * d);
  return scale * (3.0 * n * n.dot(epm.moment) - epm.moment);
}

Mat3 dipole_field_gradient(const Epm& epm, const Vec3& p) {
  const auto [n, d] = source_geometry(epm, p, 0);
  const Vec3& m = epm.moment;
  const double scale =
      3.0 * constants::kMu0 / (4.0 * M_PI * d * d * d * d);
  return scale * (n * m.transpose() + m * n.transpose() +
                  n.dot(m) * (Mat3::Identity() - 5.0 * n * n.transpose()));
}

FieldSample total_field(const std::vector<Epm>& epms, const Vec3& p) {
  FieldSample sum;
  for (std::size_t i = 0; i < epms.size(); ++i) {
    const auto [n, d] = source_geometry(epms[i], p, i);
    const Vec3& m = epms[i].moment;
    const double scale = constants::kMu0 / (4.0 * M_PI * d * d * d);
    sum.field += scale * (3.0 * n * n.dot(m) - m);
    sum.gradient +=
        (3.0 * scale / d) *
        (n * m.transpose() + m * n.transpose() +
         n.dot(m) * (Mat3::Identity() - 5.0 * n * n.transpose()));
  }
  return sum;
}

}  // namespace magloc
