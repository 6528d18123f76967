#ifndef CHARGE_LADDER_CHARGE_LADDER_HPP
#define CHARGE_LADDER_CHARGE_LADDER_HPP

#include "rational.hpp"
#include "poly.hpp"
#include "linalg.hpp"
#include "reduction.hpp"
#include "generators.hpp"
#include "spectral.hpp"
#include "numerics.hpp"
#include "dynamics.hpp"

#endif
