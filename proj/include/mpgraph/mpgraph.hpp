#pragma once

#include "blockops.hpp"
#include "census.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "graphio.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "signability.hpp"
#include "spectral.hpp"
