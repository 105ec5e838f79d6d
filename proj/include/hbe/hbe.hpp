#pragma once

// Umbrella header.

#include "hbe/bandop.hpp"
#include "hbe/bundle.hpp"
#include "hbe/coinv.hpp"
#include "hbe/error.hpp"
#include "hbe/fourier.hpp"
#include "hbe/grid.hpp"
#include "hbe/json_io.hpp"
#include "hbe/loop.hpp"
#include "hbe/oscillator.hpp"
#include "hbe/rational.hpp"
#include "hbe/seq.hpp"
