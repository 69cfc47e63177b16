#ifndef QUADDEC_QUADDEC_HPP
#define QUADDEC_QUADDEC_HPP

// Umbrella header.

#include "quaddec/approx.hpp"
#include "quaddec/bivariate.hpp"
#include "quaddec/boundary_eq.hpp"
#include "quaddec/circle.hpp"
#include "quaddec/cli.hpp"
#include "quaddec/corpus.hpp"
#include "quaddec/decomp.hpp"
#include "quaddec/io.hpp"
#include "quaddec/jet.hpp"
#include "quaddec/kernels.hpp"
#include "quaddec/oracles.hpp"
#include "quaddec/poly.hpp"
#include "quaddec/qdomain.hpp"
#include "quaddec/rational.hpp"
#include "quaddec/types.hpp"

#endif
