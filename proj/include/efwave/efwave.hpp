#pragma once

#include "efwave/analytic.hpp"
#include "efwave/compare.hpp"
#include "efwave/csvio.hpp"
#include "efwave/dispersion.hpp"
#include "efwave/errors.hpp"
#include "efwave/excitation.hpp"
#include "efwave/material.hpp"
#include "efwave/material_io.hpp"
#include "efwave/signal.hpp"
#include "efwave/specfun.hpp"
#include "efwave/spectral.hpp"
#include "efwave/tdfd.hpp"

#define EFWAVE_VERSION "0.1.0"
