#pragma once

#include "qtl/coeff_grid.hpp"
#include "qtl/spectral.hpp"

namespace qtl {

// [A, B] = AB - BA over the index window.
CoeffGrid op_commutator(const CoeffGrid& a, const CoeffGrid& b);

// [f, g] = Q^-1 ( i [Qf, Qg] ) for real fields; the result is again real.
CoeffGrid field_commutator(const CoeffGrid& f, const CoeffGrid& g);

// Bilinear extension to u = f + ig, v = p + iq:
// [u, v] = [f,p] - [g,q] + i([f,q] + [g,p]).
ComplexField field_commutator(const ComplexField& u, const ComplexField& v);

}  // namespace qtl
