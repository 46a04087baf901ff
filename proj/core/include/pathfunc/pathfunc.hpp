#pragma once

#include "pathfunc/barrier.hpp"
#include "pathfunc/consistency.hpp"
#include "pathfunc/counterexamples.hpp"
#include "pathfunc/error.hpp"
#include "pathfunc/estimator.hpp"
#include "pathfunc/functionals.hpp"
#include "pathfunc/models.hpp"
#include "pathfunc/oracles.hpp"
#include "pathfunc/path_ops.hpp"
#include "pathfunc/rng.hpp"
#include "pathfunc/schemes.hpp"
#include "pathfunc/skorohod.hpp"
#include "pathfunc/step_path.hpp"
