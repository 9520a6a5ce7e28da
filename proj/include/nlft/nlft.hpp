#pragma once

// Umbrella header: the discrete SU(1,1) nonlinear Fourier transform,
// r-variation of its partial-product and partial-sum curves, and the
// identity / inequality check battery.

#include "checks.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "rng.hpp"
#include "su11.hpp"
#include "variation.hpp"
