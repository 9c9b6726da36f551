// Umbrella header.
#pragma once

#include "edgelighter/brute_force.hpp"
#include "edgelighter/chain.hpp"
#include "edgelighter/config_file.hpp"
#include "edgelighter/cover.hpp"
#include "edgelighter/csv.hpp"
#include "edgelighter/edge_list.hpp"
#include "edgelighter/estimators.hpp"
#include "edgelighter/experiments.hpp"
#include "edgelighter/gmp.hpp"
#include "edgelighter/graph.hpp"
#include "edgelighter/lap.hpp"
#include "edgelighter/parallel.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/permutation.hpp"
#include "edgelighter/rng.hpp"
#include "edgelighter/sampling.hpp"
#include "edgelighter/seeds.hpp"
#include "edgelighter/sgm.hpp"
#include "edgelighter/stats.hpp"
#include "edgelighter/svg.hpp"
#include "edgelighter/trace.hpp"
#include "edgelighter/walk.hpp"
