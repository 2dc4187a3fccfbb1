#pragma once

#include "config.hpp"
#include "elementary.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "fermat.hpp"
#include "fermat_reyes.hpp"
#include "gen_fun.hpp"
#include "gen_num.hpp"
#include "open_set.hpp"
#include "parse.hpp"
#include "quadrature.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "series.hpp"
#include "suites.hpp"
#include "topology.hpp"
