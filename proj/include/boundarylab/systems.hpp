#pragma once

#include "boundarylab/covering.hpp"
#include "boundarylab/deck.hpp"

namespace bl {

// Finite-rank fixtures --------------------------------------------------

SchottkySystem trivial_system();

// Cyclic group generated by M_c(z) = (z + c)/(1 + c z): one hyperbolic
// generator with fixed points +/-1 and wide Ford arcs.
SchottkySystem cyclic_system(double c = 0.5);

// Deck group of the annulus covering {1/R < |z| < R}: the same group
// presented by the exp-strip deck generator (extreme translation length).
SchottkySystem annulus_deck_system(double R = 2.0);

// Deck group of the punctured-disk covering: one parabolic generator
// fixing -1.
SchottkySystem punctured_cyclic_system();

// Planar rank-2 pairing (three-holed sphere): two hyperbolic generators
// with adjacent, non-interleaved arc pairs.
SchottkySystem pants_system(double translation_length = 2.6);

// Lazily generated fixtures ---------------------------------------------

// Pants root with two hyperbolic cascades descending forever into two of
// its boundary classes; side gaps created along the way are terminal.
SchottkySystem cascade_system(double translation_length = 2.6);

// One new generator per level inside the largest current gap; every gap
// stays subdividable, so no true-crosscut certificate ever stabilizes.
SchottkySystem dense_system();

// Annulus deck group with a parabolic cascade accumulating on the outer
// boundary class only; the inner class keeps a terminal gap.
SchottkySystem fat_cantor_system(double R = 2.0);

// Reef-domain fixtures (plot geometry only) ------------------------------

struct ReefGeometry {
    std::string name;
    std::vector<std::vector<cplx>> polylines;
};

ReefGeometry reef_point_geometry(int n_max = 12);
ReefGeometry reef_interval_geometry(int n_max = 12);

// Lookup used by the CLI; returns nothing for unknown names.
std::optional<SchottkySystem> named_system(const std::string& name);

// Helper shared by fixtures: a generator spec with Ford arcs and branch
// metadata filled in.
GeneratorSpec make_generator(const DiskAutomorphism& m, int level, int parent_node = -1);

// Hyperbolic generator whose Ford arcs fit inside the given gap, with fixed
// points at the prescribed fractions of the gap. Translation length is
// doubled until the arcs fit with margin.
GeneratorSpec generator_in_gap(const Arc& gap, double frac_rep, double frac_att,
                               int level, double initial_length = 2.0);

// Parabolic generator fixed at `angle` whose Ford arcs fit inside the gap.
GeneratorSpec parabolic_in_gap(const Arc& gap, double angle, int level,
                               double initial_strength = 4.0);

}  // namespace bl
