#pragma once

#include "hecke/numtheory.hpp"
#include "hecke/quadfield.hpp"
#include "hecke/characters.hpp"
#include "hecke/gauss_sums.hpp"
#include "hecke/bump.hpp"
#include "hecke/quadrature.hpp"
#include "hecke/bessel.hpp"
#include "hecke/oscillatory.hpp"
#include "hecke/voronoi.hpp"
#include "hecke/delta.hpp"
#include "hecke/lfunc.hpp"
#include "hecke/rng.hpp"
