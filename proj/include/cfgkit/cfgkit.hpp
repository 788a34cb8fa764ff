#pragma once

// Umbrella header for the whole library.

#include "cfgkit/analysis.hpp"
#include "cfgkit/derivation.hpp"
#include "cfgkit/equivalence.hpp"
#include "cfgkit/grammar.hpp"
#include "cfgkit/io.hpp"
#include "cfgkit/random.hpp"
#include "cfgkit/transform.hpp"
