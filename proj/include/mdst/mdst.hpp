#pragma once

#include "mdst/random.hpp"
#include "mdst/geometry.hpp"
#include "mdst/special.hpp"
#include "mdst/pointproc.hpp"
#include "mdst/forest.hpp"
#include "mdst/dlt.hpp"
#include "mdst/analytic.hpp"
#include "mdst/fixedpoint.hpp"
#include "mdst/stats.hpp"
#include "mdst/lab.hpp"
