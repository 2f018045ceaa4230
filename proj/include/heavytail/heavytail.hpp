#ifndef HEAVYTAIL_HEAVYTAIL_HPP
#define HEAVYTAIL_HEAVYTAIL_HPP

#include "heavytail/catalog.hpp"
#include "heavytail/config.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/dominance.hpp"
#include "heavytail/empirical.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/majorization.hpp"
#include "heavytail/parallel.hpp"
#include "heavytail/portfolio.hpp"
#include "heavytail/random.hpp"
#include "heavytail/rational.hpp"
#include "heavytail/report.hpp"
#include "heavytail/scenario.hpp"
#include "heavytail/stpetersburg.hpp"
#include "heavytail/two_point.hpp"
#include "heavytail/two_term.hpp"

#endif
