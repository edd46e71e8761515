#pragma once

#include "sphgeo/kovacic/candidates.hpp"
#include "sphgeo/kovacic/fuchsian.hpp"
#include "sphgeo/kovacic/json.hpp"
#include "sphgeo/kovacic/run.hpp"
#include "sphgeo/kovacic/search.hpp"
