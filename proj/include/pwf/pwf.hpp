#pragma once

#include "pwf/builders.hpp"
#include "pwf/errors.hpp"
#include "pwf/field.hpp"
#include "pwf/fields.hpp"
#include "pwf/grid.hpp"
#include "pwf/normalization.hpp"
#include "pwf/propagator.hpp"
#include "pwf/units.hpp"
#include "pwf/wigner/lattice.hpp"
#include "pwf/wigner/sagnac.hpp"
#include "pwf/wigner/two_photon.hpp"
#include "pwf/wigner/wigner.hpp"
