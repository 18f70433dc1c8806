#pragma once

#include "liesoliton/catalog.hpp"
#include "liesoliton/flow.hpp"
#include "liesoliton/lie_algebra.hpp"
#include "liesoliton/linalg.hpp"
#include "liesoliton/metric_geometry.hpp"
#include "liesoliton/report.hpp"
#include "liesoliton/soliton.hpp"
#include "liesoliton/spec_file.hpp"
#include "liesoliton/theorems.hpp"
#include "liesoliton/two_step.hpp"
