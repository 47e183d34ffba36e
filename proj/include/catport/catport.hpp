#pragma once

// Umbrella header: the whole library.

#include "catport/commands.hpp"
#include "catport/csv.hpp"
#include "catport/errors.hpp"
#include "catport/feasibility.hpp"
#include "catport/jaynes_cummings.hpp"
#include "catport/manifest.hpp"
#include "catport/montecarlo.hpp"
#include "catport/optics.hpp"
#include "catport/optimize.hpp"
#include "catport/protocol.hpp"
#include "catport/rng.hpp"
#include "catport/states.hpp"
#include "catport/version.hpp"
