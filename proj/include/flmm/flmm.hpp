#pragma once

// Umbrella header for the whole library.

#include "flmm/algebra.hpp"
#include "flmm/field.hpp"
#include "flmm/hitting_set.hpp"
#include "flmm/instance.hpp"
#include "flmm/io.hpp"
#include "flmm/lattice.hpp"
#include "flmm/matrix.hpp"
#include "flmm/oracle.hpp"
#include "flmm/quadpoly.hpp"
#include "flmm/rng.hpp"
#include "flmm/selfcheck.hpp"
#include "flmm/solver.hpp"
#include "flmm/weights.hpp"
