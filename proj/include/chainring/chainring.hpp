// chainring.hpp — umbrella header for the whole library.

#pragma once

#include "capacity.hpp"
#include "channels.hpp"
#include "codecs.hpp"
#include "composite.hpp"
#include "counting.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "ring.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "shape.hpp"
#include "stats.hpp"
