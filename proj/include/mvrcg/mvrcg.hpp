#pragma once

#include "mvrcg/chordal.hpp"
#include "mvrcg/ci_tests.hpp"
#include "mvrcg/dataset.hpp"
#include "mvrcg/errors.hpp"
#include "mvrcg/graph_core.hpp"
#include "mvrcg/graph_io.hpp"
#include "mvrcg/learn_decomp.hpp"
#include "mvrcg/learn_pc.hpp"
#include "mvrcg/metrics.hpp"
#include "mvrcg/mixed_graph.hpp"
#include "mvrcg/orientation.hpp"
#include "mvrcg/sepset.hpp"
#include "mvrcg/septree.hpp"
#include "mvrcg/simulate.hpp"
#include "mvrcg/undirected_graph.hpp"
#include "mvrcg/vertex_set.hpp"
