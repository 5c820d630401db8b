#pragma once

#include "ghd/correspondence.hpp"
#include "ghd/geodesic.hpp"
#include "ghd/hausdorff.hpp"
#include "ghd/metric_space.hpp"
#include "ghd/realization.hpp"
#include "ghd/solver.hpp"
