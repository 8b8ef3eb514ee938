#pragma once

#include "corollaries.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "orientations.hpp"
#include "partitions.hpp"
#include "rng.hpp"
#include "spectra.hpp"
#include "switching.hpp"
#include "trails.hpp"
#include "version.hpp"
