// Umbrella header for the hsd library: exact computations with iterative
// (Hasse-Schmidt) derivations on rational function fields F_p(s).
//
// The layers, bottom up:
//   fp.hpp          F_p arithmetic, primality, Lucas binomials
//   polynomial.hpp  dense polynomials over a coefficient field
//   rational.hpp    reduced fractions F_p(s), p-power roots
//   series.hpp      truncated power series: composition, reversion
//   biseries.hpp    total-degree-truncated bivariate series, U+T expansion
//   parser.hpp      the shared expression syntax
//   derivation.hpp  iterative derivations, iterativity checks, levels
//   equivalence.hpp substitutions lambda, recovery, normalization,
//                   Frobenius twists, compression
//   idmodule.hpp    ID-modules in matrix form and their transport
//   json_io.hpp     JSON envelopes for derivations, substitutions, modules

#ifndef HSD_HSD_HPP
#define HSD_HSD_HPP

#include "hsd/biseries.hpp"
#include "hsd/derivation.hpp"
#include "hsd/equivalence.hpp"
#include "hsd/errors.hpp"
#include "hsd/fp.hpp"
#include "hsd/idmodule.hpp"
#include "hsd/json_io.hpp"
#include "hsd/parser.hpp"
#include "hsd/polynomial.hpp"
#include "hsd/rational.hpp"
#include "hsd/series.hpp"

#endif
