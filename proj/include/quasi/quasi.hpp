#pragma once

// Umbrella header for the quasi-measure extension library.

#include "cover.hpp"
#include "extension.hpp"
#include "instance_io.hpp"
#include "interval.hpp"
#include "outer.hpp"
#include "quasi_measure.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "sets.hpp"
#include "testkit.hpp"
