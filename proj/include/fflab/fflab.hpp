#pragma once

// Umbrella header for the finite-field restriction laboratory.

#include "rational.hpp"
#include "rng.hpp"
#include "field.hpp"
#include "cyclo.hpp"
#include "grid.hpp"
#include "varieties.hpp"
#include "transform.hpp"
#include "oracle.hpp"
#include "normlab.hpp"
#include "exponents.hpp"
#include "report.hpp"
#include "json_io.hpp"
#include "checks.hpp"
