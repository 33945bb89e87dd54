#include "pappus/markedbox.hpp"

namespace pappus {

template std::vector<OrbitEntry<Rational>> orbit_enumerate(const MarkedBox<Rational>&, int, unsigned);
template std::vector<OrbitEntry<double>> orbit_enumerate(const MarkedBox<double>&, int, unsigned);
template Polarity<Rational> box_polarity(const MarkedBox<Rational>&);
template Polarity<double> box_polarity(const MarkedBox<double>&);
template ProjMap<Rational> order3_transform(const MarkedBox<Rational>&);
template ProjMap<double> order3_transform(const MarkedBox<double>&);

}  // namespace pappus
