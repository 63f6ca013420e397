#pragma once

#include "uavplan/altitude.hpp"
#include "uavplan/calibration.hpp"
#include "uavplan/channel.hpp"
#include "uavplan/errors.hpp"
#include "uavplan/montecarlo.hpp"
#include "uavplan/placement.hpp"
#include "uavplan/power.hpp"
#include "uavplan/quadrature.hpp"
#include "uavplan/units.hpp"
