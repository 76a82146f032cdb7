#pragma once

// Umbrella header.

#include "approx.hpp"
#include "automaton.hpp"
#include "cycle_rank.hpp"
#include "dfvs.hpp"
#include "digraph.hpp"
#include "elimination.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "mask_graph.hpp"
#include "path_decomposition.hpp"
#include "regex.hpp"
#include "vertex_set.hpp"
#include "widths.hpp"
