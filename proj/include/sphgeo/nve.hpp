#pragma once

#include "sphgeo/nve/json.hpp"
#include "sphgeo/nve/nve.hpp"
#include "sphgeo/nve/transport.hpp"
#include "sphgeo/nve/trig.hpp"
