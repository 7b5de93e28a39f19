#pragma once

// Cylinder traversal statistics.  The strip [0, n] x [1, m] with its two
// side columns folded becomes a discrete cylinder of circumference 2n;
// a diagonal connection with flux rho across the width turns the
// Pfaffian ratio into the generating function of the number of
// non-contractible loops of the doubled configuration.

#include <cstddef>
#include <vector>

#include "dimerarc/enumerate.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"

namespace dimerarc {

struct CylinderModel {
  int n = 0, m = 0;
  BipartiteGraph base;  // plain grid graph on [0, n] x [1, m]
  FoldedGraph fg;       // side columns folded, boundary arc over the top
  EdgePhases phases;    // horizontal 1, vertical i, alternation-gauged
};

CylinderModel build_cylinder_model(int n, int m);

// Connection with flux parameter a: horizontal transport diag(a, 1/a)
// toward growing x, pairing vectors (a^d, a^-d) on the column-to-bulk
// edges with d determined by the side and the color of the column end.
Connection cylinder_connection(const CylinderModel& cm, double a);

SkewMatrix cylinder_matrix(const CylinderModel& cm, double a);

// E[Y^N] with N the number of non-contractible loops: the Pfaffian ratio
// at a = rho^(1/n), rho = Y + sqrt(Y^2 - 1).
double cylinder_gf(const CylinderModel& cm, double big_y);

// Distribution of N/2 recovered from the generating function by
// interpolation in Y^2 (loops come in reflection pairs, so N is even).
std::vector<double> cylinder_distribution(const CylinderModel& cm);

// Brute force: enumerate matchings of the glued cylinder of width 2n,
// superpose each with its own reflection, and histogram the number of
// non-contractible loop pairs.
std::vector<double> glued_winding_histogram(int n, int m,
                                            std::size_t cap = 4000000);

// Scaling limit at modular parameter q = exp(-pi n / m): the generating
// function as an infinite product over odd j of
//   (1 + q^{2j} - 2 q^j + 4 Y^2 q^j) / (1 + q^{2j} + 2 q^j),
// and the corresponding distribution of N/2 from its expansion in Y^2.
double cylinder_limit_gf(double q, double big_y);
std::vector<double> cylinder_limit_distribution(double q);

}  // namespace dimerarc
