#pragma once

#include "tautrig/candidate_select.hpp"
#include "tautrig/cli.hpp"
#include "tautrig/cost_model.hpp"
#include "tautrig/event.hpp"
#include "tautrig/event_io.hpp"
#include "tautrig/generate.hpp"
#include "tautrig/grid.hpp"
#include "tautrig/instrument.hpp"
#include "tautrig/latency.hpp"
#include "tautrig/merge_tree.hpp"
#include "tautrig/oracle.hpp"
#include "tautrig/spatial_sorter.hpp"
