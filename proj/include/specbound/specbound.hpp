#pragma once

#include "specbound/errors.hpp"
#include "specbound/numerics/finite_difference.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/numerics/tridiagonal.hpp"
#include "specbound/parametric.hpp"
#include "specbound/potentials/bound_state.hpp"
#include "specbound/potentials/catalog.hpp"
#include "specbound/potentials/families.hpp"
#include "specbound/special_functions.hpp"
#include "specbound/verification.hpp"
