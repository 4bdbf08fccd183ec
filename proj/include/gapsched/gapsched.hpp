#pragma once

#include "gapsched/core.hpp"
#include "gapsched/flow.hpp"
#include "gapsched/generate.hpp"
#include "gapsched/hitting.hpp"
#include "gapsched/maxgaps.hpp"
#include "gapsched/mingaps.hpp"
#include "gapsched/minmaxgap.hpp"
#include "gapsched/oracle.hpp"
#include "gapsched/rational.hpp"
#include "gapsched/throughput.hpp"
#include "gapsched/xy_select.hpp"
