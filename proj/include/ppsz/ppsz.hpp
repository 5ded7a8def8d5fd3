#pragma once

#include "ppsz/analysis.hpp"
#include "ppsz/cnf.hpp"
#include "ppsz/dppsz.hpp"
#include "ppsz/frozen_tree.hpp"
#include "ppsz/general_solver.hpp"
#include "ppsz/implication.hpp"
#include "ppsz/modify.hpp"
#include "ppsz/oracle.hpp"
#include "ppsz/permutations.hpp"
