#pragma once

#include "netrel/assessment.hpp"
#include "netrel/degree_models.hpp"
#include "netrel/edge_list.hpp"
#include "netrel/error.hpp"
#include "netrel/exact_reliability.hpp"
#include "netrel/graph.hpp"
#include "netrel/lifetime.hpp"
#include "netrel/percolation.hpp"
#include "netrel/simulation.hpp"
#include "netrel/special_functions.hpp"
