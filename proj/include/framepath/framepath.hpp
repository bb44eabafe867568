#pragma once

// Umbrella header for the frame-process numerics library.

#include "framepath/area.hpp"
#include "framepath/constants.hpp"
#include "framepath/dyadic.hpp"
#include "framepath/errors.hpp"
#include "framepath/frame.hpp"
#include "framepath/kahan.hpp"
#include "framepath/parallel.hpp"
#include "framepath/pvar.hpp"
#include "framepath/rng.hpp"
#include "framepath/sampler.hpp"
#include "framepath/tail.hpp"
#include "framepath/variation.hpp"
