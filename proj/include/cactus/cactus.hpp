#pragma once

#include "cactus/base.hpp"
#include "cactus/cells.hpp"
#include "cactus/curve.hpp"
#include "cactus/derive.hpp"
#include "cactus/enumerate.hpp"
#include "cactus/groups.hpp"
#include "cactus/permutahedron.hpp"
#include "cactus/todd_coxeter.hpp"
#include "cactus/tree.hpp"
