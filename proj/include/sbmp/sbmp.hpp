#pragma once

// Sampling-based motion planning framework: samplers and planners behind
// abstract interfaces, image-defined environments, deterministic benchmark
// harness with optional SVG rendering.

#include "sbmp/bench.hpp"
#include "sbmp/config.hpp"
#include "sbmp/cspace.hpp"
#include "sbmp/env.hpp"
#include "sbmp/error.hpp"
#include "sbmp/grid.hpp"
#include "sbmp/motion_tree.hpp"
#include "sbmp/nn.hpp"
#include "sbmp/planner.hpp"
#include "sbmp/planners/prm.hpp"
#include "sbmp/planners/rrt.hpp"
#include "sbmp/planners/rrt_connect.hpp"
#include "sbmp/planners/rrt_star.hpp"
#include "sbmp/raster.hpp"
#include "sbmp/registry.hpp"
#include "sbmp/rng.hpp"
#include "sbmp/sampler.hpp"
#include "sbmp/svg.hpp"
