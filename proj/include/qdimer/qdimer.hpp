#pragma once

#include "builders.hpp"
#include "cluster.hpp"
#include "embedding.hpp"
#include "errors.hpp"
#include "graph_moves.hpp"
#include "hamiltonians.hpp"
#include "hard_particles.hpp"
#include "io.hpp"
#include "isomorphism.hpp"
#include "laurent.hpp"
#include "matchings.hpp"
#include "matrix.hpp"
#include "poisson.hpp"
#include "qsystem.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "report_json.hpp"
#include "torus_graph.hpp"
#include "values.hpp"
