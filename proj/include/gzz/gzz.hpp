#pragma once

// Umbrella header for the generalized zig-zag toolkit.

#include "gzz/algebra.hpp"
#include "gzz/bench.hpp"
#include "gzz/dense.hpp"
#include "gzz/dynamics.hpp"
#include "gzz/errors.hpp"
#include "gzz/generator.hpp"
#include "gzz/io.hpp"
#include "gzz/metric.hpp"
#include "gzz/model.hpp"
#include "gzz/oracle.hpp"
#include "gzz/spectral.hpp"
#include "gzz/verify.hpp"
