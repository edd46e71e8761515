#pragma once

#include "sphgeo/algebra/field.hpp"
#include "sphgeo/algebra/linear_solve.hpp"
#include "sphgeo/algebra/partial_fractions.hpp"
#include "sphgeo/algebra/poly.hpp"
#include "sphgeo/algebra/quad_ext.hpp"
#include "sphgeo/algebra/rational.hpp"
#include "sphgeo/algebra/ratfunc.hpp"
