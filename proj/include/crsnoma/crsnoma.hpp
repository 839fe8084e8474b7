// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#pragma once

#include "crsnoma/channels.hpp"
#include "crsnoma/closed_form.hpp"
#include "crsnoma/config.hpp"
#include "crsnoma/montecarlo.hpp"
#include "crsnoma/numeric.hpp"
#include "crsnoma/outage.hpp"
#include "crsnoma/quadrature.hpp"
#include "crsnoma/rng.hpp"
#include "crsnoma/sweep.hpp"
#include "crsnoma/validation.hpp"
