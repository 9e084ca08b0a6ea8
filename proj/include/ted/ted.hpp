#pragma once

// Umbrella header for the edge-diversified pattern mining library.

#include "ted/baselines.hpp"
#include "ted/cover.hpp"
#include "ted/dfs_code.hpp"
#include "ted/embedding.hpp"
#include "ted/enumerate.hpp"
#include "ted/errors.hpp"
#include "ted/graph.hpp"
#include "ted/graph_io.hpp"
#include "ted/labels.hpp"
#include "ted/mining.hpp"
#include "ted/pes_index.hpp"
#include "ted/report.hpp"
#include "ted/util.hpp"
