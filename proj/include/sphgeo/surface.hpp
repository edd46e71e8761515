#pragma once

#include "sphgeo/surface/legendre.hpp"
#include "sphgeo/surface/spec_json.hpp"
#include "sphgeo/surface/surface.hpp"
