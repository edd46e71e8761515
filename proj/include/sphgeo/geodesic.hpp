#pragma once

#include "sphgeo/geodesic/dopri5.hpp"
#include "sphgeo/geodesic/geodesic.hpp"
#include "sphgeo/geodesic/lemma1.hpp"
