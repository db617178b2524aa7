#pragma once

#include "hclp/bench.hpp"
#include "hclp/conflict_store.hpp"
#include "hclp/core.hpp"
#include "hclp/instance.hpp"
#include "hclp/lp_io.hpp"
#include "hclp/milp.hpp"
#include "hclp/oracle.hpp"
#include "hclp/report.hpp"
#include "hclp/solver.hpp"
