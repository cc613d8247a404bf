#pragma once

#include "floorforge/checkers.hpp"
#include "floorforge/dsl.hpp"
#include "floorforge/dsl_check.hpp"
#include "floorforge/errors.hpp"
#include "floorforge/monotone.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical.hpp"
#include "floorforge/radical_identities.hpp"
#include "floorforge/report.hpp"
#include "floorforge/runner.hpp"
#include "floorforge/sweep.hpp"
