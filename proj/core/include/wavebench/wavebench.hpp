#pragma once

#include "wavebench/comm.hpp"
#include "wavebench/complexity.hpp"
#include "wavebench/error.hpp"
#include "wavebench/front_end.hpp"
#include "wavebench/geometry.hpp"
#include "wavebench/linalg.hpp"
#include "wavebench/propagation.hpp"
#include "wavebench/sensing.hpp"
#include "wavebench/sim.hpp"
#include "wavebench/synthesis.hpp"
#include "wavebench/tree_network.hpp"
