#pragma once

// Umbrella header: simulation, closed-form limits, verification and
// reporting for heat-bath cooling of a qubit register against a k-level
// reset system.

#include "hbac/asymptotics.hpp"
#include "hbac/backend.hpp"
#include "hbac/engine.hpp"
#include "hbac/io.hpp"
#include "hbac/reset.hpp"
#include "hbac/state.hpp"
#include "hbac/verification.hpp"
