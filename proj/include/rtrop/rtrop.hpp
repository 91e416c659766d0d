#pragma once

#include "rtrop/error.hpp"
#include "rtrop/rational.hpp"
#include "rtrop/qmatrix.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/linalg.hpp"
#include "rtrop/feasibility.hpp"
#include "rtrop/sign_vector.hpp"
#include "rtrop/oriented_matroid.hpp"
#include "rtrop/bergman.hpp"
#include "rtrop/subdivision.hpp"
#include "rtrop/tropcurve.hpp"
#include "rtrop/singular.hpp"
