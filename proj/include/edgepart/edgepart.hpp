#pragma once

// Planning and estimation toolkit for distributed CNN inference at the edge:
// partitions a layer chain under the data, horizontal, sequential and
// vertical strategies and predicts per-device energy from calibrated
// per-layer profiles.

#include "edgepart/energy.hpp"
#include "edgepart/errors.hpp"
#include "edgepart/formats.hpp"
#include "edgepart/model.hpp"
#include "edgepart/oracle.hpp"
#include "edgepart/parallel.hpp"
#include "edgepart/partition.hpp"
#include "edgepart/planner.hpp"
#include "edgepart/profile.hpp"
#include "edgepart/report.hpp"
#include "edgepart/sweep.hpp"
