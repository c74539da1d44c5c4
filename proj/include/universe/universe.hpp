#pragma once

#include "error.hpp"
#include "type.hpp"
#include "enumerate.hpp"
#include "witness.hpp"
#include "value.hpp"
#include "primitive.hpp"
#include "graph.hpp"
#include "relational.hpp"
#include "transforms.hpp"
#include "evaluator.hpp"
#include "combinators.hpp"
#include "stdlib.hpp"
#include "continuum.hpp"
#include "io.hpp"
