#pragma once

#include "sphgeo/poincare/closed.hpp"
#include "sphgeo/poincare/io.hpp"
#include "sphgeo/poincare/section.hpp"
