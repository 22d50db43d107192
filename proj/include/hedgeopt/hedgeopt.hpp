#pragma once

#include "hedgeopt/config.hpp"
#include "hedgeopt/errors.hpp"
#include "hedgeopt/experiment.hpp"
#include "hedgeopt/gamma_equation.hpp"
#include "hedgeopt/market.hpp"
#include "hedgeopt/output.hpp"
#include "hedgeopt/path.hpp"
#include "hedgeopt/pricer.hpp"
#include "hedgeopt/rng.hpp"
#include "hedgeopt/simulator.hpp"
#include "hedgeopt/solve.hpp"
#include "hedgeopt/strategies.hpp"
#include "hedgeopt/svg.hpp"
#include "hedgeopt/symmat.hpp"
