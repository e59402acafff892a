#pragma once

#include "bounds.hpp"
#include "bvn.hpp"
#include "core.hpp"
#include "csv.hpp"
#include "decimal.hpp"
#include "experiments.hpp"
#include "grouping.hpp"
#include "instances.hpp"
#include "lp_relaxation.hpp"
#include "online.hpp"
#include "ordering.hpp"
#include "ordering_result.hpp"
#include "schedule.hpp"
#include "simplex.hpp"
