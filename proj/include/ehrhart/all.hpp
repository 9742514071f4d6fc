#pragma once

#include "ehrhart/collision_search.hpp"
#include "ehrhart/ehrhart.hpp"
#include "ehrhart/equidecomposition.hpp"
#include "ehrhart/equivalence.hpp"
#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/geometry.hpp"
#include "ehrhart/hull.hpp"
#include "ehrhart/io.hpp"
#include "ehrhart/polytope.hpp"
