// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "hmc/common.hpp"
#include "hmc/rng.hpp"
#include "hmc/special.hpp"
#include "hmc/partitions.hpp"
#include "hmc/series.hpp"
#include "hmc/ewens.hpp"
#include "hmc/moments.hpp"
#include "hmc/parallel.hpp"
#include "hmc/cbe.hpp"
#include "hmc/gmc.hpp"
#include "hmc/stats.hpp"
#include "hmc/report.hpp"
